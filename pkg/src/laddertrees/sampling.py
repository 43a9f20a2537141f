"""Exact samplers for the rung process and full trees.

Four routes: the gap construction of the ladder tree (geometric gaps plus
one uniformly placed missing rail per gap), Bernoulli thinning, sequential
exact sampling of any finite-window determinantal kernel, and the
interlaced pair of independent renewal copies that serves as the standard
counterexample process of order 2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import LADDER
from .kernel import KernelSpec, kernel_matrix
from .transfer import _width2_alpha

__all__ = [
    "SamplePath",
    "ladder_renewal_sample",
    "thin",
    "dpp_window_sample",
    "interlaced_reference",
    "renewal_gaps",
]


@dataclass(frozen=True)
class SamplePath:
    """One sampled binary path on a window of consecutive indices.

    x[k] is the indicator at index lo + k.  tree_edges, when present,
    lists the window-internal edge labels of the sampled tree; it is a
    forest on the window (a restriction of the infinite tree), and None
    for paths that are not tree restrictions (thinned, interlaced).
    """

    family: str
    lo: int
    hi: int
    x: np.ndarray
    tree_edges: tuple
    provenance: dict

    @property
    def indices(self):
        return range(self.lo, self.hi + 1)

    def at(self, m):
        return int(self.x[m - self.lo])

    def to_json_dict(self):
        return {
            "family": self.family,
            "window": [self.lo, self.hi],
            "x": self.x.tolist(),
            "tree_edges": list(self.tree_edges) if self.tree_edges is not None else None,
            "provenance": self.provenance,
        }


def _normalize_window(window):
    if isinstance(window, int):
        if window < 1:
            raise ValueError("window size must be positive")
        return 0, window - 1
    lo, hi = window
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    return int(lo), int(hi)


def _size_biased_gap(alpha, rng):
    """Length of the gap straddling a fixed site, P[m] ~ m^2 a^(m-1)."""
    norm = (1.0 - alpha) ** 3 / (1.0 + alpha)  # 1 / sum m^2 a^(m-1)
    u = rng.random()
    m, acc = 1, 0.0
    while True:
        acc += norm * m * m * alpha ** (m - 1)
        if u <= acc or m > 100000:
            return m
        m += 1


def ladder_renewal_sample(c, window, seed=None, conditioned=False, rng=None):
    """Ladder tree on a window via the renewal-gap construction.

    Consecutive rungs of the tree are separated by gaps of law
    1 + Y + Y', with Y, Y' geometric; inside each gap exactly one rail
    segment is missing, on a fair-coin side and at a uniform position.
    conditioned=True pins a rung at the left window edge; otherwise the
    first gap straddling the window edge is drawn size-biased with a
    uniform phase, which makes the sample stationary.

    c = math.inf is the all-rungs degenerate tree: every gap has length
    one and the coin only picks which rail segment drops per column.
    """
    lo, hi = _normalize_window(window)
    if rng is None:
        rng = np.random.default_rng(seed)
    n = hi - lo + 1

    if c == math.inf:
        x = np.ones(n, dtype=np.int8)
        edges = [f"z{m}" for m in range(lo, hi + 1)]
        for m in range(lo + 1, hi + 1):
            keep = int(rng.integers(2))
            edges.append(f"h{keep}_{m}")
        return SamplePath(LADDER, lo, hi, x, tuple(sorted(edges)),
                          {"sampler": "ladder-renewal", "seed": seed,
                           "c": "inf", "conditioned": bool(conditioned)})

    c = float(c)
    if not c > 0:
        raise ValueError(f"rung weight must be positive, got {c}")
    alpha = _width2_alpha(LADDER, c)

    def gap():
        y = int(rng.geometric(1.0 - alpha)) - 1
        y2 = int(rng.geometric(1.0 - alpha)) - 1
        return 1 + y + y2

    # renewal sites and, per gap (s, s+g], the missing rail (side, column)
    renewals = []
    missing = []
    if conditioned:
        s = lo
    else:
        g0 = _size_biased_gap(alpha, rng)
        s = lo - int(rng.integers(g0))  # uniform phase
        renewals.append(s)
        missing.append((int(rng.integers(2)), s + 1 + int(rng.integers(g0))))
        s += g0
    renewals.append(s)
    while s <= hi:
        g = gap()
        missing.append((int(rng.integers(2)), s + 1 + int(rng.integers(g))))
        s += g
        renewals.append(s)

    x = np.zeros(n, dtype=np.int8)
    for m in renewals:
        if lo <= m <= hi:
            x[m - lo] = 1

    gone = {(w, k) for w, k in missing}
    edges = [f"z{m}" for m in renewals if lo <= m <= hi]
    for m in range(lo + 1, hi + 1):
        for i in (0, 1):
            if (i, m) not in gone:
                edges.append(f"h{i}_{m}")
    return SamplePath(LADDER, lo, hi, x, tuple(sorted(edges)),
                      {"sampler": "ladder-renewal", "seed": seed, "c": c,
                       "conditioned": bool(conditioned)})


def thin(path, p, seed=None, rng=None):
    """Keep each 1 of the path independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"thinning probability must be in [0,1], got {p}")
    if rng is None:
        rng = np.random.default_rng(seed)
    x = path.x.copy()
    ones = np.nonzero(x)[0]
    x[ones] = (rng.random(len(ones)) < p).astype(np.int8)
    prov = dict(path.provenance)
    prov["thinned"] = p
    return SamplePath(path.family, path.lo, path.hi, x, None, prov)


def _conditional_kernel(k, outcomes):
    """Kernel on the remaining sites given outcomes on the first ones."""
    j = len(outcomes)
    if j == 0:
        return k.copy()
    seen = np.arange(j)
    rest = np.arange(j, k.shape[0])
    m = k[np.ix_(seen, seen)] - np.diag(1.0 - np.asarray(outcomes, dtype=float))
    try:
        corr = k[np.ix_(rest, seen)] @ np.linalg.solve(m, k[np.ix_(seen, rest)])
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"conditioning matrix singular at step {j}") from exc
    out = np.zeros_like(k)
    out[np.ix_(rest, rest)] = k[np.ix_(rest, rest)] - corr
    return out


def dpp_window_sample(spec, n, seed=None, rng=None):
    """Exact sample of the first n sites of a determinantal kernel.

    Sequential conditionals: the inclusion probability of each site is the
    current conditional kernel's diagonal entry, updated by a rank-one
    Schur correction per outcome and refactorized from scratch every 32
    steps to stop numerical drift.
    """
    if not isinstance(spec, KernelSpec):
        raise TypeError("spec must be a KernelSpec")
    if not 1 <= n <= 200:
        raise ValueError(f"window size must be in [1, 200], got {n}")
    if rng is None:
        rng = np.random.default_rng(seed)

    k = kernel_matrix(spec, range(n))
    w = k.astype(complex).copy() if np.iscomplexobj(k) else k.astype(float).copy()
    x = np.empty(n, dtype=np.int8)
    us = rng.random(n)
    for j in range(n):
        if j and j % 32 == 0:
            w = _conditional_kernel(k, x[:j])
        pj = float(w[j, j].real)
        if np.iscomplexobj(w) and abs(w[j, j].imag) > 1e-9:
            raise ArithmeticError(f"conditional probability not real at site {j}")
        if not -1e-9 <= pj <= 1.0 + 1e-9:
            raise ArithmeticError(
                f"conditional probability {pj} outside [0,1] at site {j}")
        pj = min(max(pj, 0.0), 1.0)
        x[j] = 1 if us[j] < pj else 0
        denom = w[j, j] - (0.0 if x[j] else 1.0)
        if j < n - 1:
            if abs(denom) < 1e-13:
                w = _conditional_kernel(k, x[:j + 1])
            else:
                w = w - np.outer(w[:, j], w[j, :]) / denom
    return SamplePath(spec.kind, 0, n - 1, x, None,
                      {"sampler": "dpp-window", "seed": seed, "p": spec.p,
                       "phase": spec.phase})


def interlaced_reference(alpha, p, n, seed=None):
    """Two independent thinned renewal copies on even and odd sites.

    The result is a regenerative process of order 2 that is determinantal
    but realized by no chord-weight kernel: consecutive sites are exactly
    independent, which no such kernel achieves.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("need 0 < alpha < 1; alpha = 0 is the Bernoulli case, "
                         "which is excluded as trivial")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"thinning probability must be in (0,1], got {p}")
    rng = np.random.default_rng(seed)
    c = (1.0 - alpha) ** 2 / (2.0 * alpha)
    half = (n + 1) // 2
    parts = []
    for _ in range(2):
        part = ladder_renewal_sample(c, half, rng=rng)
        if p < 1.0:
            part = thin(part, p, rng=rng)
        parts.append(part.x)
    x = np.empty(n, dtype=np.int8)
    x[0::2] = parts[0][: len(x[0::2])]
    x[1::2] = parts[1][: len(x[1::2])]
    return SamplePath("interlaced", 0, n - 1, x, None,
                      {"sampler": "interlaced", "seed": seed,
                       "alpha": alpha, "p": p})


def renewal_gaps(x):
    """Distances between consecutive 1s of a binary path."""
    ones = np.nonzero(np.asarray(x))[0]
    return np.diff(ones)
