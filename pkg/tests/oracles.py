"""Brute-force reference implementations used only by the test suite.

All oracles here are deliberately independent of the production code paths:
the permanent-based simulator expands truncated squeezed inputs explicitly
and evolves them with matrix permanents, so it shares no machinery with the
Gaussian/hafnian backend it checks.
"""

import itertools
import math

import numpy as np


def ryser_permanent(mat):
    """Permanent via Ryser's inclusion-exclusion, O(n 2^n)."""
    m = np.asarray(mat, dtype=complex)
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for subset in range(1, 1 << n):
        parity = 1 - 2 * (bin(subset).count("1") & 1)
        prod = 1.0 + 0.0j
        for row in m:
            acc = 0.0 + 0.0j
            for c in range(n):
                if subset >> c & 1:
                    acc += row[c]
            prod *= acc
        total += parity * prod
    return total * (1 - 2 * (n & 1))


def transition_amplitude(unitary, out_pattern, in_pattern):
    """<out| phi(U) |in> for photon patterns, via the permanent."""
    if sum(out_pattern) != sum(in_pattern):
        return 0.0 + 0.0j
    rows = [i for i, k in enumerate(out_pattern) for _ in range(k)]
    cols = [j for j, k in enumerate(in_pattern) for _ in range(k)]
    sub = np.asarray(unitary, dtype=complex)[np.ix_(rows, cols)]
    norm = 1.0
    for k in itertools.chain(out_pattern, in_pattern):
        norm *= math.factorial(k)
    return ryser_permanent(sub) / np.sqrt(norm)


def patterns_up_to(n_modes, max_total):
    """All occupation patterns with total photon number <= max_total."""
    pats = []
    for total in range(max_total + 1):
        for cuts in itertools.combinations(range(total + n_modes - 1), n_modes - 1):
            pat = []
            prev = -1
            for c in cuts:
                pat.append(c - prev - 1)
                prev = c
            pat.append(total + n_modes - 2 - prev)
            pats.append(tuple(pat))
    return sorted(pats)


class TruncatedFockSimulator:
    """Second-quantized simulator on a photon-number-truncated basis.

    Squeezed inputs are expanded as sum_k kappa^k sqrt(1-kappa^2) |k, k> up
    to ``pair_cutoff`` pairs per squeezer; interferometers act through
    permanents.  Amplitudes of patterns whose total photon number is at most
    2 * pair_cutoff (per contributing squeezer set) are exact.
    """

    def __init__(self, n_modes, max_total):
        self.n_modes = n_modes
        self.max_total = max_total
        self.basis = patterns_up_to(n_modes, max_total)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.amps = np.zeros(len(self.basis), dtype=complex)
        self.amps[self.index[(0,) * n_modes]] = 1.0

    def squeeze(self, signal, idler, kappa, pair_cutoff=4):
        new = np.zeros_like(self.amps)
        norm = np.sqrt(1.0 - kappa**2)
        for i, pat in enumerate(self.basis):
            if self.amps[i] == 0:
                continue
            for k in range(pair_cutoff + 1):
                q = list(pat)
                q[signal] += k
                q[idler] += k
                if sum(q) > self.max_total:
                    break
                new[self.index[tuple(q)]] += norm * kappa**k * self.amps[i]
        self.amps = new
        return self

    def interfere(self, unitary, modes=None):
        u = np.asarray(unitary, dtype=complex)
        if modes is not None:
            full = np.eye(self.n_modes, dtype=complex)
            full[np.ix_(list(modes), list(modes))] = u
            u = full
        new = np.zeros_like(self.amps)
        by_total = {}
        for i, pat in enumerate(self.basis):
            by_total.setdefault(sum(pat), []).append(i)
        for total, idxs in by_total.items():
            for j in idxs:
                if self.amps[j] == 0:
                    continue
                for i in idxs:
                    amp = transition_amplitude(u, self.basis[i], self.basis[j])
                    if amp != 0:
                        new[i] += amp * self.amps[j]
        self.amps = new
        return self

    def density_element(self, m, n):
        """<m|rho|n> for the pure simulated state."""
        return self.amps[self.index[tuple(m)]] * np.conj(self.amps[self.index[tuple(n)]])

    def lossy_density_element(self, m, n, loss_pairs):
        """Element after tracing ancilla modes listed in loss_pairs.

        ``loss_pairs`` maps each lossy system mode to its ancilla mode; the
        caller must already have routed loss there with a beamsplitter.
        """
        anc = sorted(loss_pairs.values())
        sys_modes = [k for k in range(self.n_modes) if k not in anc]
        total = 0.0 + 0.0j
        for i, pat in enumerate(self.basis):
            if self.amps[i] == 0:
                continue
            if tuple(pat[k] for k in sys_modes) != tuple(m):
                continue
            target = list(pat)
            for k, mk in zip(sys_modes, n):
                target[k] = mk
            j = self.index.get(tuple(target))
            if j is not None:
                total += self.amps[i] * np.conj(self.amps[j])
        return total


def loss_beamsplitter(eta):
    """Beamsplitter routing sqrt(1-eta) of the amplitude to an ancilla."""
    t, r = np.sqrt(eta), np.sqrt(1.0 - eta)
    return np.array([[t, -r], [r, t]])
