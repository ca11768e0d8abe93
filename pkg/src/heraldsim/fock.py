"""Fock-basis matrix elements of Gaussian states and heralded projections.

Matrix elements are evaluated as <m|rho|n> = T x lhaf(A~), where A~ is built
from A = X (I - sigma_Q^{-1}) by repeating creation-block indices per the bra
pattern m and annihilation-block indices per the ket pattern n, the diagonal
is replaced by the correspondingly repeated gamma (zero here, since every
circuit starts from undisplaced squeezed vacuum), and T collects the
determinant and factorial prefactors.

For pure states A is block diagonal, so every element factorizes into two
half-size hafnians; ``herald`` exploits this by caching one hafnian per
pattern, which turns an N x N element grid into N hafnian evaluations.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .gaussian import GaussianState, block_swap
from .hafnian import loop_hafnian

COND_LIMIT = 1e12
MAX_HAFNIAN_SIZE = 28  # bra plus ket photons entering a single lhaf call
EMPTY_PROBABILITY = 1e-15


def validate_pattern(pattern, num_modes):
    occ = tuple(int(k) for k in pattern)
    if len(occ) != num_modes:
        raise ValueError(f"pattern length {len(occ)} != mode count {num_modes}")
    if any(k < 0 for k in occ):
        raise ValueError("occupations must be non-negative")
    return occ


@dataclass(frozen=True)
class HafInputs:
    """Quantities entering the Fock-element formula for one Gaussian state."""

    num_modes: int
    sigma_q: np.ndarray
    a_mat: np.ndarray
    gamma: np.ndarray
    t_vacuum: complex  # exp(-beta^dag sigma_Q^-1 beta / 2) / sqrt(det sigma_Q)
    x: np.ndarray

    @classmethod
    def from_state(cls, state: GaussianState):
        l = state.num_modes
        sigma_q = state.covariance + 0.5 * np.eye(2 * l)
        cond = np.linalg.cond(sigma_q)
        if not np.isfinite(cond) or cond > COND_LIMIT:
            raise NumericalError(f"sigma_Q condition number {cond:.3e} exceeds {COND_LIMIT:.0e}")
        inv = np.linalg.inv(sigma_q)
        x = block_swap(l)
        a = x @ (np.eye(2 * l) - inv)
        a = 0.5 * (a + a.T)  # symmetric up to rounding for valid states
        beta = state.displacement
        gamma = inv.T @ beta.conj()
        det = np.linalg.det(sigma_q)
        t_vac = np.exp(-0.5 * (beta.conj() @ inv @ beta)) / np.sqrt(det)
        return cls(l, sigma_q, a, gamma, complex(t_vac), x)

    def is_pure(self, tol=1e-10):
        """Pure zero-displacement states have block-diagonal A and gamma = 0."""
        l = self.num_modes
        off = max(np.max(np.abs(self.a_mat[:l, l:])), np.max(np.abs(self.a_mat[l:, :l])))
        return off < tol and np.max(np.abs(self.gamma)) < tol


def _repeat_indices(pattern, offset):
    idx = []
    for mode, count in enumerate(pattern):
        idx.extend([offset + mode] * count)
    return idx


def fock_element(state, m, n, max_size=MAX_HAFNIAN_SIZE):
    """Fock matrix element <m|rho|n> of a Gaussian state.

    ``state`` may be a GaussianState or a precomputed HafInputs.
    """
    hi = state if isinstance(state, HafInputs) else HafInputs.from_state(state)
    l = hi.num_modes
    m = validate_pattern(m, l)
    n = validate_pattern(n, l)
    total = sum(m) + sum(n)
    if total > max_size:
        raise ValueError(f"bra+ket photon number {total} exceeds limit {max_size}")
    idx = _repeat_indices(n, 0) + _repeat_indices(m, l)
    if not idx:
        return complex(hi.t_vacuum)
    at = hi.a_mat[np.ix_(idx, idx)].copy()
    np.fill_diagonal(at, hi.gamma[idx])
    fac = 1.0
    for k in itertools.chain(m, n):
        fac *= math.factorial(k)
    return complex(hi.t_vacuum * loop_hafnian(at) / np.sqrt(fac))


class FockDensity:
    """Density operator over a truncated multimode Fock basis.

    Holds an ordered pattern basis, the (dense) coefficient matrix, and the
    herald probability of the projection that produced it.
    """

    def __init__(self, mode_labels, cutoff, patterns, matrix, probability, normalized=True):
        self.mode_labels = tuple(mode_labels)
        self.cutoff = cutoff
        self.patterns = tuple(tuple(p) for p in patterns)
        self.matrix = np.asarray(matrix, dtype=complex)
        self.probability = float(probability)
        self.normalized = normalized
        self._index = {p: i for i, p in enumerate(self.patterns)}

    @property
    def empty(self):
        return len(self.patterns) == 0 or self.probability <= EMPTY_PROBABILITY

    def entry(self, ket, bra):
        i = self._index.get(tuple(ket))
        j = self._index.get(tuple(bra))
        if i is None or j is None:
            return 0.0 + 0.0j
        return complex(self.matrix[i, j])

    def items(self):
        for i, p in enumerate(self.patterns):
            for j, q in enumerate(self.patterns):
                yield (p, q), complex(self.matrix[i, j])

    def trace(self):
        return float(np.trace(self.matrix).real)

    def normalize(self):
        tr = np.trace(self.matrix).real
        if tr <= EMPTY_PROBABILITY:
            return FockDensity(self.mode_labels, self.cutoff, self.patterns,
                               np.zeros_like(self.matrix), 0.0, normalized=False)
        return FockDensity(self.mode_labels, self.cutoff, self.patterns,
                           self.matrix / tr, self.probability, normalized=True)

    def validate(self, trace_tol=1e-10, psd_tol=1e-9):
        dev = np.max(np.abs(self.matrix - self.matrix.conj().T)) if len(self.patterns) else 0.0
        if dev > 1e-10:
            raise ValueError(f"density not Hermitian: deviation {dev:.3e}")
        if self.normalized and len(self.patterns):
            if abs(np.trace(self.matrix).real - 1.0) > trace_tol:
                raise ValueError("normalized density trace differs from 1")
            evals = np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))
            if evals.min() < -psd_tol:
                raise ValueError(f"density has eigenvalue {evals.min():.3e} below -{psd_tol}")
        return self


def _enumerate_patterns(n_modes, cutoff, totals=None):
    pats = []
    for p in itertools.product(range(cutoff + 1), repeat=n_modes):
        if totals is None or sum(p) in totals:
            pats.append(p)
    pats.sort()
    return pats


def herald(state, herald_modes, pattern, out_modes, cutoff, totals=None, normalize=True):
    """Project herald modes onto a Fock pattern and return the reduced state.

    Parameters
    ----------
    state : GaussianState or HafInputs
    herald_modes, out_modes : disjoint index sequences
    pattern : occupations on the herald modes
    cutoff : max photons retained per output mode
    totals : optional set of admissible total photon numbers on the output
        modes (prunes the pattern grid; exact when the state conserves
        photon number)
    normalize : return the normalized density (probability kept separately)

    Returns
    -------
    FockDensity
        Normalized heralded density with ``probability`` — the trace of the
        unnormalized projection over the retained pattern space.
    """
    hi = state if isinstance(state, HafInputs) else HafInputs.from_state(state)
    l = hi.num_modes
    herald_modes = list(herald_modes)
    out_modes = list(out_modes)
    if set(herald_modes) & set(out_modes):
        raise ValueError("herald and output modes must be disjoint")
    for mode in herald_modes + out_modes:
        if not 0 <= mode < l:
            raise ValueError(f"mode index {mode} out of range")
    pattern = validate_pattern(pattern, len(herald_modes))
    out_pats = _enumerate_patterns(len(out_modes), cutoff, totals)

    def full(p):
        f = [0] * l
        for mode, k in zip(herald_modes, pattern):
            f[mode] = k
        for mode, k in zip(out_modes, p):
            f[mode] = k
        return tuple(f)

    size = len(out_pats)
    mat = np.zeros((size, size), dtype=complex)
    if hi.is_pure():
        # <m|rho|n> = T haf(C rep m) conj(haf(C rep n)) with C the creation block
        c_block = hi.a_mat[l:, l:]
        amps = np.empty(size, dtype=complex)
        norms = np.empty(size)
        for i, p in enumerate(out_pats):
            fp = full(p)
            idx = _repeat_indices(fp, 0)
            sub = c_block[np.ix_(idx, idx)].copy()
            np.fill_diagonal(sub, 0.0)
            amps[i] = loop_hafnian(sub)
            fac = 1.0
            for k in fp:
                fac *= math.factorial(k)
            norms[i] = np.sqrt(fac)
        t0 = hi.t_vacuum.real
        scaled = amps / norms
        mat = t0 * np.outer(scaled, scaled.conj())
    else:
        for i, p in enumerate(out_pats):
            for j, q in enumerate(out_pats):
                if j < i:
                    mat[i, j] = np.conj(mat[j, i])
                    continue
                mat[i, j] = fock_element(hi, full(p), full(q))
    prob = float(np.trace(mat).real)
    if prob <= EMPTY_PROBABILITY:
        return FockDensity(out_modes, cutoff, out_pats, np.zeros_like(mat), 0.0, normalized=False)
    if normalize:
        return FockDensity(out_modes, cutoff, out_pats, mat / prob, prob, normalized=True)
    return FockDensity(out_modes, cutoff, out_pats, mat, prob, normalized=False)
