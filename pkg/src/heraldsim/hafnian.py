"""Loop hafnian of complex symmetric matrices.

The loop hafnian sums, over all perfect matchings of the complete graph on
n vertices where vertices may also be matched to themselves, the product of
edge weights M[i, j] and loop weights M[i, i].  It reduces to the plain
hafnian when the diagonal vanishes.

The production evaluator uses the power-trace subset expansion over vertex
pairs, O(n^3 2^(n/2)), which handles loops through an extra diagonal term in
the generating polynomial.  A direct matching enumeration lives in
``enumerate_loop_hafnian`` and doubles as the test oracle for small n.
"""

import numpy as np
from numba import njit

_SYM_TOL = 1e-10


def enumerate_loop_hafnian(mat):
    """Sum over all matchings-with-loops by direct recursion.

    Exponential-factorial cost; intended for n <= 10 cross-checks.
    """
    m = np.asarray(mat, dtype=complex)
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j

    def rec(idx):
        if not idx:
            return 1.0 + 0.0j
        i = idx[0]
        rest = idx[1:]
        total = m[i, i] * rec(rest)
        for pos, j in enumerate(rest):
            total += m[i, j] * rec(rest[:pos] + rest[pos + 1 :])
        return total

    return rec(tuple(range(n)))


@njit(cache=True)
def _lhaf_even(a, v):  # pragma: no cover - exercised through loop_hafnian
    n = a.shape[0]
    m = n // 2
    total = 0.0 + 0.0j
    for mask in range(1 << m):
        npairs = 0
        for i in range(m):
            if mask & (1 << i):
                npairs += 1
        if npairs == 0:
            # empty submatrix contributes [x^m] exp(0) = 0 for m >= 1
            continue
        ns = 2 * npairs
        idx = np.empty(ns, dtype=np.int64)
        k = 0
        for i in range(m):
            if mask & (1 << i):
                idx[k] = 2 * i
                idx[k + 1] = 2 * i + 1
                k += 2
        # B = X_S A_S with X_S swapping the two rows of every pair
        b = np.empty((ns, ns), dtype=np.complex128)
        u = np.empty(ns, dtype=np.complex128)
        xu = np.empty(ns, dtype=np.complex128)
        for r in range(0, ns, 2):
            for c in range(ns):
                b[r, c] = a[idx[r + 1], idx[c]]
                b[r + 1, c] = a[idx[r], idx[c]]
        for r in range(0, ns, 2):
            u[r] = v[idx[r]]
            u[r + 1] = v[idx[r + 1]]
            xu[r] = u[r + 1]
            xu[r + 1] = u[r]
        # series coefficients c_k = tr(B^k)/(2k) + u^T B^(k-1) X_S u / 2
        coeff = np.zeros(m + 1, dtype=np.complex128)
        bp = np.eye(ns, dtype=np.complex128)
        for k in range(1, m + 1):
            w = bp @ xu  # B^(k-1) X u
            lt = 0.0 + 0.0j
            for r in range(ns):
                lt += u[r] * w[r]
            bp = bp @ b
            tr = 0.0 + 0.0j
            for r in range(ns):
                tr += bp[r, r]
            coeff[k] = tr / (2.0 * k) + 0.5 * lt
        # E = exp(sum_k coeff_k x^k); extract the x^m coefficient
        e = np.zeros(m + 1, dtype=np.complex128)
        e[0] = 1.0
        for j in range(1, m + 1):
            s = 0.0 + 0.0j
            for k in range(1, j + 1):
                s += k * coeff[k] * e[j - k]
            e[j] = s / j
        sign = 1.0 if (m - npairs) % 2 == 0 else -1.0
        total += sign * e[m]
    return total


def loop_hafnian(mat):
    """Loop hafnian of a complex symmetric matrix.

    Parameters
    ----------
    mat : array_like
        Square matrix; must be symmetric to within 1e-10 (relative to its
        largest entry).  It is symmetrized before evaluation.

    Returns
    -------
    complex
    """
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("loop_hafnian expects a square matrix")
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    scale = np.max(np.abs(m))
    if scale > 0:
        dev = np.max(np.abs(m - m.T))
        if dev > _SYM_TOL * max(1.0, scale):
            raise ValueError(f"matrix asymmetry {dev:.3e} exceeds tolerance")
    m = 0.5 * (m + m.T)
    if n == 1:
        return complex(m[0, 0])
    if n % 2 == 1:
        # pad with an isolated vertex carrying loop weight 1: every matching
        # must loop it, leaving the value unchanged.
        p = np.zeros((n + 1, n + 1), dtype=complex)
        p[:n, :n] = m
        p[n, n] = 1.0
        m = p
        n += 1
    return complex(_lhaf_even(np.ascontiguousarray(m), np.ascontiguousarray(np.diag(m).copy())))
