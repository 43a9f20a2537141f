"""Maximal-entropy Markov chain encoding of the uniform helix-3 tree.

A spanning tree of the weight-1 helix-3 line is coded symbol by symbol:
at each site the symbol records whether the long chord and the rung at
that site are present, together with the boundary class of the one-sided
restriction up to the site.  Eleven symbols occur; the allowed two-symbol
words form a subshift on which the uniform tree pushes forward to the
unique maximal-entropy Markov chain.  The transition matrix comes in
closed form from the transfer eigendata, so the chain doubles as a fast
exact sampler and a calculator for rung-pattern probabilities.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import GraphFamily, HELIX3, build_segment
from .transfer import TransferSystem, boundary_class

__all__ = [
    "SYMBOLS",
    "GROUPS",
    "SUCCESSOR_SYMBOLS",
    "ChainSpec",
    "build_chain",
    "chain_entropy",
    "sample_path",
    "decode_path",
    "decoded_edges",
    "successor_class",
    "query_probability",
    "verify_successor_table",
]

GOLDEN = (math.sqrt(5.0) + 1.0) / 2.0

# symbol id (1-based) -> (chord bit, rung bit, boundary class)
SYMBOLS = (
    (0, 1, 1),
    (1, 0, 1),
    (1, 1, 1),
    (0, 0, 2),
    (1, 0, 2),
    (0, 1, 3),
    (1, 0, 3),
    (1, 1, 3),
    (1, 0, 4),
    (0, 0, 5),
    (1, 0, 5),
)

# boundary class -> symbol ids in that class
GROUPS = {
    1: (1, 2, 3),
    2: (4, 5),
    3: (6, 7, 8),
    4: (9,),
    5: (10, 11),
}

# boundary class of the current symbol -> allowed successor symbol ids
SUCCESSOR_SYMBOLS = {
    1: (1, 2, 4),
    2: (3, 6, 9, 10),
    3: (3, 5),
    4: (6, 7, 10),
    5: (8, 11),
}


def symbol_class(k):
    """Boundary class of symbol id k."""
    return SYMBOLS[k - 1][2]


def successor_class(cls, h_bit, z_bit):
    """Class after extending a class-cls boundary by the given edge bits.

    Returns None when no allowed successor symbol carries these bits,
    i.e. the extension creates a cycle or strands a component.
    """
    for k in SUCCESSOR_SYMBOLS[cls]:
        hb, zb, nxt = SYMBOLS[k - 1]
        if (hb, zb) == (h_bit, z_bit):
            return nxt
    return None


@dataclass(frozen=True)
class ChainSpec:
    """The 11-symbol chain: transition matrices, stationary laws, entropy.

    Rbar is the 5x5 class-projected matrix, R its lift to symbols; both
    are row-stochastic.  pi_R and pi_Rbar are the stationary rows, and
    entropy is the Shannon rate, which equals the log of the transfer
    growth rate.
    """

    Rbar: np.ndarray
    R: np.ndarray
    pi_Rbar: np.ndarray
    pi_R: np.ndarray
    entropy: float

    def to_json_dict(self):
        return {
            "symbols": [list(s) for s in SYMBOLS],
            "Rbar": self.Rbar.tolist(),
            "R": self.R.tolist(),
            "pi_Rbar": self.pi_Rbar.tolist(),
            "pi_R": self.pi_R.tolist(),
            "entropy": self.entropy,
        }


def _closed_form_rbar():
    """The twelve nonzero class-transition entries in golden-ratio form."""
    g = GOLDEN
    sg = math.sqrt(g)
    out = np.zeros((5, 5))
    out[0, 0] = 2.0 * (g - sg)
    out[0, 1] = 1.0 - 2.0 * (g - sg)
    out[1, 0] = sg / (2.0 + sg)
    out[1, 2] = (g - 1.0 / sg) / (2.0 + sg)
    out[1, 3] = (2.0 - sg) / (2.0 + sg)
    out[1, 4] = (sg + 1.0 / sg - g) / (2.0 + sg)
    out[2, 0] = (g * sg - 1.0) / 2.0
    out[2, 1] = (3.0 - g * sg) / 2.0
    out[3, 2] = (2.0 * math.sqrt(5.0) * g - 2.0 * g ** 2 * sg) / (2.0 - sg)
    out[3, 4] = 1.0 - out[3, 2]
    out[4, 2] = 1.0 - 1.0 / (g + sg)
    out[4, 4] = 1.0 / (g + sg)
    return out


def _closed_form_pi_r():
    """Stationary symbol weights in golden-ratio form (sum to 1)."""
    g = GOLDEN
    sg = math.sqrt(g)
    s5 = math.sqrt(5.0)
    vec = np.array([
        g,
        g,
        g * sg - 1.0 / g,
        g * sg - 1.0 / g,
        3.0 / g - sg,
        2.0 * g - 2.0 * sg,
        s5 - g * sg,
        s5 * g * sg - g ** 3,
        2.0 / g - 1.0 / sg,
        s5 * g * sg - g ** 3,
        g ** 4 - 2.0 * g ** 2 * sg,
    ])
    return vec / (4.0 * s5)


def build_chain():
    """Assemble the chain from the weight-1 helix-3 transfer eigendata.

    The class-level matrix is the Doob-style transform of the growth
    matrix by its Perron data; the symbol-level lift splits a class
    transition equally over the allowed successor symbols of the target
    class.  Every entry is cross-checked against its golden-ratio closed
    form before the spec is returned.
    """
    ts = TransferSystem(GraphFamily(HELIX3, 1))
    rbar = ts.class_transition()
    if np.max(np.abs(rbar - _closed_form_rbar())) > 1e-10:
        raise ArithmeticError("class transition matrix drifted from its closed form")

    r = np.zeros((11, 11))
    for i in range(1, 12):
        cls = symbol_class(i)
        targets = SUCCESSOR_SYMBOLS[cls]
        for j_cls in range(1, 6):
            share = [k for k in targets if symbol_class(k) == j_cls]
            for k in share:
                r[i - 1, k - 1] = rbar[cls - 1, j_cls - 1] / len(share)

    pi_bar = ts.class_stationary()

    # stationary symbol law = incoming flow, using that rows of R agree
    # within a class
    pi = np.zeros(11)
    for j in range(1, 12):
        pi[j - 1] = sum(pi_bar[cls - 1] * r[GROUPS[cls][0] - 1, j - 1]
                        for cls in range(1, 6))

    if np.max(np.abs(pi - _closed_form_pi_r())) > 1e-12:
        raise ArithmeticError("stationary symbol law drifted from its closed form")
    if np.max(np.abs(pi @ r - pi)) > 1e-12:
        raise ArithmeticError("symbol law is not stationary")
    if np.max(np.abs(r.sum(axis=1) - 1.0)) > 1e-12:
        raise ArithmeticError("lifted matrix is not row-stochastic")

    entropy = float(math.log(ts.perron))
    for a in (rbar, r, pi_bar, pi):
        a.flags.writeable = False
    return ChainSpec(rbar, r, pi_bar, pi, entropy)


def chain_entropy(spec):
    """Shannon entropy rate -sum pi_i R_ij log R_ij of the symbol chain."""
    r = spec.R
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(r > 0, r * np.log(r), 0.0)
    return float(-(spec.pi_R @ terms.sum(axis=1)))


def sample_path(spec, n, seed=None, start=None, rng=None):
    """Stationary sample of n symbols (1-based ids).

    start fixes the first symbol instead of drawing it from the
    stationary law.  Pass an np.random.Generator as rng to chain calls
    onto shared randomness; otherwise seed creates a fresh generator.
    """
    if n < 1:
        raise ValueError("need at least one step")
    if rng is None:
        rng = np.random.default_rng(seed)
    cum = np.cumsum(spec.R, axis=1)
    out = np.empty(n, dtype=np.int64)
    if start is None:
        state = int(np.searchsorted(np.cumsum(spec.pi_R), rng.random())) + 1
    else:
        if not 1 <= start <= 11:
            raise ValueError(f"symbol ids run from 1 to 11, got {start}")
        state = int(start)
    out[0] = state
    u = rng.random(n - 1)
    for t in range(1, n):
        state = int(np.searchsorted(cum[state - 1], u[t - 1])) + 1
        out[t] = state
    return out


def decode_path(path):
    """Edge bits and class sequence of a symbol path.

    Returns (chord bits, rung bits, classes) as arrays.  Rejects the
    first position whose transition is not in the successor table or
    whose class is inconsistent with the edge bits.
    """
    path = np.asarray(path, dtype=np.int64)
    if path.ndim != 1 or len(path) == 0:
        raise ValueError("path must be a nonempty symbol sequence")
    if path.min() < 1 or path.max() > 11:
        raise ValueError("symbol ids run from 1 to 11")
    h = np.empty(len(path), dtype=np.int8)
    z = np.empty(len(path), dtype=np.int8)
    cls = np.empty(len(path), dtype=np.int8)
    for t, k in enumerate(path):
        h[t], z[t], cls[t] = SYMBOLS[k - 1]
        if t > 0:
            if k not in SUCCESSOR_SYMBOLS[cls[t - 1]]:
                raise ValueError(
                    f"invalid transition at position {t}: "
                    f"symbol {path[t - 1]} cannot be followed by {k}")
            if successor_class(cls[t - 1], int(h[t]), int(z[t])) != cls[t]:
                raise ValueError(f"class inconsistent with edge bits at position {t}")
    return h, z, cls


def decoded_edges(path, start):
    """Edge labels of a decoded path, with position t mapped to site start+t.

    The labels match build_segment's naming, so the decoded set can be
    dropped onto a finite window for structural checks.  A decoded window
    is a forest (a piece of the infinite tree), not a spanning tree of
    the window.
    """
    h, z, _ = decode_path(path)
    labels = []
    for t in range(len(path)):
        site = start + t
        if h[t]:
            labels.append(f"h{site}")
        if z[t]:
            labels.append(f"z{site}")
    return labels


def query_probability(spec, pattern):
    """Probability of a consecutive rung pattern under the infinite tree.

    pattern is a sequence over {1, 0, None}: 1 = rung present, 0 = rung
    absent, None = unconstrained.  Chord constraints are not supported
    here; estimate those by sampling.
    """
    pattern = list(pattern)
    if not pattern:
        raise ValueError("empty pattern")
    z_bits = np.array([s[1] for s in SYMBOLS])

    def mask(bit):
        if bit is None:
            return np.ones(11)
        if bit not in (0, 1):
            raise ValueError(f"pattern entries must be 0, 1 or None, got {bit!r}")
        return np.where(z_bits == bit, 1.0, 0.0)

    v = spec.pi_R * mask(pattern[0])
    for bit in pattern[1:]:
        v = (v @ spec.R) * mask(bit)
    return float(v.sum())


def verify_successor_table(window=6, report=False):
    """Regenerate the successor table by brute force and compare.

    Every edge subset of a one-sided window is classified by its boundary
    behaviour; each realized class is extended by all four chord/rung
    combinations at the next site and reclassified.  The resulting symbol
    sets must agree across representatives of a class and reproduce the
    hard-coded table exactly.
    """
    if window < 5:
        raise ValueError("window too short to realize all five classes")
    fam = GraphFamily(HELIX3, 1)
    seg = build_segment(fam, 0, window)
    ext = build_segment(fam, 0, window + 1)
    new_h, new_z = f"h{window + 1}", f"z{window + 1}"

    reps = {}
    labels = [e.label for e in seg.edges]
    for bits in range(1 << len(labels)):
        subset = [labels[i] for i in range(len(labels)) if bits >> i & 1]
        cls = boundary_class(seg, subset, side="hi")
        if cls is not None:
            reps.setdefault(cls, []).append(subset)

    if sorted(reps) != [1, 2, 3, 4, 5]:
        raise AssertionError(f"window realizes classes {sorted(reps)}, expected 1..5")

    table = {}
    counts = {}
    for cls, subsets in sorted(reps.items()):
        per_rep = []
        for subset in subsets:
            found = set()
            for h_bit in (0, 1):
                for z_bit in (0, 1):
                    extended = list(subset)
                    if h_bit:
                        extended.append(new_h)
                    if z_bit:
                        extended.append(new_z)
                    nxt = boundary_class(ext, extended, side="hi")
                    if nxt is not None:
                        found.add((h_bit, z_bit, nxt))
            per_rep.append(found)
        if any(s != per_rep[0] for s in per_rep[1:]):
            raise AssertionError(f"successors of class {cls} depend on the representative")
        symbols = tuple(sorted(SYMBOLS.index(t) + 1 for t in per_rep[0]))
        table[cls] = symbols
        counts[cls] = len(subsets)
        if symbols != SUCCESSOR_SYMBOLS[cls]:
            raise AssertionError(
                f"class {cls}: regenerated successors {symbols} "
                f"!= table {SUCCESSOR_SYMBOLS[cls]}")
    if report:
        return {"window": window, "representatives": counts, "successors": table,
                "matches_table": True}
    return True
