"""Multimode Gaussian states in the complex (a, a-dagger) convention.

A state over l modes is held as its first moment beta (length 2l, ordered as
the annihilation block followed by the creation block) and second moment
sigma, the 2l x 2l complex covariance

    sigma[j, k] = <{zeta_j, zeta_k^dag}>/2 - beta[j] conj(beta[k]),

with zeta = (a_1 .. a_l, a_1^dag .. a_l^dag).  Valid states satisfy
sigma = X conj(sigma) X for the block swap X and have positive definite
sigma + I/2.  All operations return new states; arrays are frozen.

Set ``VALIDATE_TRANSFORMS = True`` (test builds) to re-check every invariant
after each transform.
"""

from dataclasses import dataclass

import numpy as np

VALIDATE_TRANSFORMS = False

HERMITICITY_TOL = 1e-12
CONJUGATION_TOL = 1e-12
UNITARITY_TOL = 1e-10


def block_swap(num_modes):
    """The 2l x 2l block swap X = [[0, I], [I, 0]]."""
    x = np.zeros((2 * num_modes, 2 * num_modes))
    x[:num_modes, num_modes:] = np.eye(num_modes)
    x[num_modes:, :num_modes] = np.eye(num_modes)
    return x


def symplectic_form(num_modes):
    """Symplectic form in the (a, a-dagger) ordering: [[0, I], [-I, 0]]."""
    w = np.zeros((2 * num_modes, 2 * num_modes))
    w[:num_modes, num_modes:] = np.eye(num_modes)
    w[num_modes:, :num_modes] = -np.eye(num_modes)
    return w


@dataclass(frozen=True)
class GaussianState:
    num_modes: int
    displacement: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        beta = np.asarray(self.displacement, dtype=complex)
        sigma = np.asarray(self.covariance, dtype=complex)
        beta.setflags(write=False)
        sigma.setflags(write=False)
        object.__setattr__(self, "displacement", beta)
        object.__setattr__(self, "covariance", sigma)
        l = self.num_modes
        if l < 1:
            raise ValueError("mode count must be at least 1")
        if beta.shape != (2 * l,) or sigma.shape != (2 * l, 2 * l):
            raise ValueError("moment shapes inconsistent with mode count")

    def validate(self, hermiticity_tol=HERMITICITY_TOL, conjugation_tol=CONJUGATION_TOL):
        """Check all state invariants, raising ValueError on failure."""
        l = self.num_modes
        sigma = self.covariance
        dev = np.max(np.abs(sigma - sigma.conj().T))
        if dev > hermiticity_tol:
            raise ValueError(f"covariance not Hermitian: deviation {dev:.3e}")
        x = block_swap(l)
        dev = np.max(np.abs(sigma - x @ sigma.conj() @ x))
        if dev > conjugation_tol:
            raise ValueError(f"conjugation symmetry violated: deviation {dev:.3e}")
        sigma_q = sigma + 0.5 * np.eye(2 * l)
        evals = np.linalg.eigvalsh(0.5 * (sigma_q + sigma_q.conj().T))
        if evals.min() <= 0:
            raise ValueError(f"sigma + I/2 not positive definite: min eig {evals.min():.3e}")
        dev = np.max(np.abs(self.displacement[l:] - self.displacement[:l].conj()))
        if dev > conjugation_tol:
            raise ValueError(f"displacement blocks not conjugate: deviation {dev:.3e}")
        return self

    def mean_photons(self):
        """Per-mode mean photon numbers <a^dag a>."""
        l = self.num_modes
        diag = np.diag(self.covariance)[:l].real
        return diag - 0.5 + np.abs(self.displacement[:l]) ** 2

    def is_pure(self, tol=1e-9):
        """Purity test via det(2 sigma) = 1 (complex convention)."""
        sign, logdet = np.linalg.slogdet(2.0 * self.covariance)
        return abs(logdet) < tol


def _finalize(state):
    if VALIDATE_TRANSFORMS:
        state.validate()
    return state


def vacuum(num_modes):
    """Vacuum state: beta = 0, sigma = I/2."""
    if num_modes < 1:
        raise ValueError("mode count must be at least 1")
    return GaussianState(
        num_modes,
        np.zeros(2 * num_modes, dtype=complex),
        0.5 * np.eye(2 * num_modes, dtype=complex),
    )


def two_mode_squeeze(state, signal, idler, kappa):
    """Apply a two-mode squeezer with kappa = tanh(r) between two modes.

    kappa must lie in [0, 1); the symplectic map is
    a_s -> cosh(r) a_s + sinh(r) a_i^dag and likewise with s and i swapped.
    """
    l = state.num_modes
    if signal == idler:
        raise ValueError("signal and idler modes must differ")
    for m in (signal, idler):
        if not 0 <= m < l:
            raise ValueError(f"mode index {m} out of range")
    if not 0.0 <= kappa < 1.0:
        raise ValueError("squeezing parameter must lie in [0, 1)")
    if kappa == 0.0:
        return state
    r = np.arctanh(kappa)
    ch, sh = np.cosh(r), np.sinh(r)
    s = np.eye(2 * l, dtype=complex)
    for a, b in ((signal, idler), (idler, signal)):
        s[a, a] = ch
        s[a, l + b] = sh
        s[l + a, l + a] = ch
        s[l + a, b] = sh
    beta = s @ state.displacement
    sigma = s @ state.covariance @ s.conj().T
    return _finalize(GaussianState(l, beta, sigma))


def interfere(state, unitary, modes):
    """Evolve through a linear interferometer acting on the listed modes.

    The map conjugates the moments by U (+) conj(U) embedded on the selected
    modes.  U must be unitary to within 1e-10.
    """
    l = state.num_modes
    u = np.asarray(unitary, dtype=complex)
    modes = list(modes)
    if u.shape != (len(modes), len(modes)):
        raise ValueError("unitary dimension must match the number of modes")
    if len(set(modes)) != len(modes):
        raise ValueError("modes must be distinct")
    for m in modes:
        if not 0 <= m < l:
            raise ValueError(f"mode index {m} out of range")
    dev = np.max(np.abs(u @ u.conj().T - np.eye(len(modes))))
    if dev > UNITARITY_TOL:
        raise ValueError(f"matrix is not unitary: deviation {dev:.3e}")
    w = np.eye(l, dtype=complex)
    ix = np.ix_(modes, modes)
    w[ix] = u
    big = np.zeros((2 * l, 2 * l), dtype=complex)
    big[:l, :l] = w
    big[l:, l:] = w.conj()
    beta = big @ state.displacement
    sigma = big @ state.covariance @ big.conj().T
    return _finalize(GaussianState(l, beta, sigma))


def loss_channel(state, mode, eta):
    """Pure-loss channel a -> sqrt(eta) a + sqrt(1-eta) b on one mode.

    The ancilla b starts in vacuum and is traced out immediately, so the
    moments transform in place: rows and columns of the mode scale by
    sqrt(eta) and the lost weight is replaced by vacuum noise (1-eta)/2 on
    the diagonal.
    """
    l = state.num_modes
    if not 0 <= mode < l:
        raise ValueError(f"mode index {mode} out of range")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("transmission must lie in [0, 1]")
    if eta == 1.0:
        return state
    scale = np.ones(2 * l)
    scale[mode] = scale[l + mode] = np.sqrt(eta)
    sigma = state.covariance * np.outer(scale, scale)
    sigma = sigma.copy()
    sigma[mode, mode] += (1.0 - eta) / 2.0
    sigma[l + mode, l + mode] += (1.0 - eta) / 2.0
    beta = state.displacement * scale
    return _finalize(GaussianState(l, beta, sigma))
