"""Simulation of heralded photonic entanglement generation under realistic errors.

Gaussian-moment backend with loop-hafnian Fock extraction, photon
distinguishability models (random-source Schmidt mixtures and orthogonal
bad bits), heralded circuit library, postselected tomography, and
first-quantized symmetric/antisymmetric state reconstruction.
"""

from .errors import ConfigError, NumericalError, ResourceCapError
from .gaussian import GaussianState, vacuum, two_mode_squeeze, interfere, loss_channel
from .hafnian import loop_hafnian
from .fock import FockDensity, HafInputs, fock_element, herald

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "NumericalError",
    "ResourceCapError",
    "GaussianState",
    "vacuum",
    "two_mode_squeeze",
    "interfere",
    "loss_channel",
    "loop_hafnian",
    "FockDensity",
    "HafInputs",
    "fock_element",
    "herald",
    "__version__",
]
