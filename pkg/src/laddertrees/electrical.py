"""Effective resistances and unit-current rung profiles (width-2 families).

Cutting the infinite ladder or zigzag line at a rung leaves a translated
copy of the one-sided network, so the front resistance solves a quadratic
fixed point and the two-sided resistance follows from a parallel
combination.  The voltage across rung m then decays geometrically in |m|,
which gives the current through every rung in closed form.

Helix-type families are out of scope here: their current signs rotate in
the complex plane instead of following a fixed pattern, and are recovered
spectrally in the kernel module.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import GraphFamily, LADDER, ZIGZAG, build_segment, normalize_kind
from .transfer import _width2_alpha

__all__ = [
    "ResistanceProfile",
    "effective_resistance",
    "transfer_current",
    "kirchhoff_marginal",
    "segment_resistance",
    "finite_window_resistance",
    "finite_window_current",
]

# Unit resistance picked up in series per step of the front reduction:
# two rails for the ladder, one chord for the zigzag.
_SERIES = {LADDER: 2.0, ZIGZAG: 1.0}


@dataclass(frozen=True)
class ResistanceProfile:
    """Resistances of one infinite family plus its unit-current profile.

    r_plus is the resistance between the two front sites of the one-sided
    network, r0 the same with the front rung removed, and r the two-sided
    resistance across a rung.  decay is the per-step factor of the rung
    voltage sequence: alpha for the ladder, -alpha for the zigzag.
    """

    kind: str
    c: float
    alpha: float
    r_plus: float
    r0: float
    r: float
    decay: float

    def u(self, m):
        """Voltage across rung m when unit current is driven through rung 0.

        Rung 0 carries the battery; its terminals sit at potentials 0 and r,
        so u(0) = r and each step outward multiplies by the decay factor.
        """
        return self.r * self.decay ** abs(int(m))

    def current(self, m):
        """Current through rung m under the same unit-current battery.

        Rungs are oriented the same way as the battery rung (upper-to-lower
        rail for the ladder, left site to right site for the zigzag), so
        current(0) > 0 and the zigzag currents alternate in sign.
        """
        return self.c * self.u(m)

    def node_voltage(self, site):
        """Potential of a single vertex under the unit-current battery.

        Ladder sites are (rail, column) pairs with the battery across
        column 0, grounded at (0, 0).  Zigzag sites are integers with the
        battery across the rung {-1, 0}, grounded at 0.
        """
        if self.kind == LADDER:
            i, m = site
            if i not in (0, 1):
                raise ValueError(f"ladder rail must be 0 or 1, got {i}")
            # swapping the rails negates the battery, so the two potentials
            # in a column are symmetric about r/2
            return (self.r + (2 * i - 1) * self.u(m)) / 2.0
        k = int(site)
        if k >= 0:
            return self.r * self.alpha * (1.0 - (-self.alpha) ** k) / (1.0 + self.alpha)
        # reflection through the battery rung maps site k to -1-k and
        # swaps the two battery terminals
        return self.r - self.node_voltage(-1 - k)

    def to_json_dict(self):
        return {
            "family": self.kind,
            "c": self.c,
            "alpha": self.alpha,
            "r_plus": self.r_plus,
            "r0": self.r0,
            "r": self.r,
            "decay": self.decay,
        }


def effective_resistance(family, c=None):
    """Resistance profile of the infinite ladder or zigzag line.

    Accepts a GraphFamily or a kind name plus the rung weight c.  The
    front resistance is the positive root of  c*x^2 + c*s*x - s = 0  where
    s is the series constant of the family, equivalent to the fixed point
    x = 1/(c + 1/(x + s)).
    """
    if isinstance(family, GraphFamily):
        kind, c = family.kind, family.c
    else:
        kind = normalize_kind(family)
        if c is None:
            c = 1
    if kind not in _SERIES:
        raise ValueError(f"no resistance profile for the {kind} family; "
                         "only the two width-2 families reduce this way")
    c = float(c)
    if not (c > 0) or math.isinf(c):
        raise ValueError(f"rung weight must be a finite positive number, got {c}")

    s = _SERIES[kind]
    # positive root of c x^2 + c s x - s = 0
    r_plus = (-c * s + math.sqrt(c * c * s * s + 4.0 * s * c)) / (2.0 * c)
    r0 = r_plus + s
    residual = r_plus - 1.0 / (c + 1.0 / r0)
    if abs(residual) > 1e-12:
        raise ArithmeticError(f"front fixed point not solved: residual {residual}")

    # the rung sees two one-sided branches of resistance r0 in parallel
    # with itself
    r = 1.0 / (c + 2.0 / r0)

    alpha = _width2_alpha(kind, c)
    scale = max(1.0, 1.0 / c)
    if abs(r_plus - (1.0 - alpha) / c) > 1e-10 * scale:
        raise ArithmeticError("front resistance disagrees with (1 - alpha)/c")
    if abs(r - (1.0 - alpha) / (1.0 + alpha) / c) > 1e-10 * scale:
        raise ArithmeticError("two-sided resistance disagrees with its closed form")

    decay = alpha if kind == LADDER else -alpha
    return ResistanceProfile(kind, c, alpha, r_plus, r0, r, decay)


def transfer_current(profile, m):
    """Current through rung m induced by unit current through rung 0."""
    return profile.current(m)


def kirchhoff_marginal(profile):
    """Probability that a fixed rung belongs to the random spanning tree.

    Resistance form of the rung marginal: two-sided resistance times the
    rung weight.
    """
    return profile.r * profile.c


# ---------------------------------------------------------------------------
# finite-window validation oracles
# ---------------------------------------------------------------------------

def _segment_laplacian(segment):
    fam = segment.family
    weight = {"c": float(fam.c), "h": 1.0, "d": float(fam.d)}
    n = segment.n_vertices
    lap = np.zeros((n, n))
    for e in segment.edges:
        w = weight[e.wkind]
        lap[e.u, e.u] += w
        lap[e.v, e.v] += w
        lap[e.u, e.v] -= w
        lap[e.v, e.u] -= w
    return lap


def _solve_potentials(segment, source, sink):
    """Node potentials for unit current in at source, out at sink.

    source/sink are vertex labels.  The sink is grounded.
    """
    idx = {label: i for i, label in enumerate(segment.vertex_labels)}
    a, b = idx[source], idx[sink]
    lap = _segment_laplacian(segment)
    rhs = np.zeros(segment.n_vertices)
    rhs[a] = 1.0
    rhs[b] = -1.0
    keep = [i for i in range(segment.n_vertices) if i != b]
    x = np.zeros(segment.n_vertices)
    x[keep] = np.linalg.solve(lap[np.ix_(keep, keep)], rhs[keep])
    return x, idx


def segment_resistance(segment, v, w):
    """Effective resistance between two vertex labels of a finite segment."""
    x, idx = _solve_potentials(segment, v, w)
    return float(x[idx[v]] - x[idx[w]])


def finite_window_resistance(family, c=None, n=10):
    """Battery-rung resistance on the window [-n, n]; converges to r.

    Truncation only removes parallel paths, so the finite value decreases
    to the infinite-network resistance geometrically in n.
    """
    if isinstance(family, GraphFamily):
        fam = family
    else:
        fam = GraphFamily(normalize_kind(family), c if c is not None else 1)
    if fam.kind not in _SERIES:
        raise ValueError(f"no resistance profile for the {fam.kind} family")
    seg = build_segment(fam, -n, n)
    if fam.kind == LADDER:
        return segment_resistance(seg, (1, 0), (0, 0))
    return segment_resistance(seg, -1, 0)


def finite_window_current(family, c=None, n=10, rungs=None):
    """Rung currents on the window [-n, n] under the unit battery at rung 0.

    Returns {m: current} for the requested rung indices (default: all rungs
    in the window), with the same orientation as ResistanceProfile.current.
    """
    if isinstance(family, GraphFamily):
        fam = family
    else:
        fam = GraphFamily(normalize_kind(family), c if c is not None else 1)
    if fam.kind not in _SERIES:
        raise ValueError(f"no resistance profile for the {fam.kind} family")
    cw = float(fam.c)
    seg = build_segment(fam, -n, n)
    if fam.kind == LADDER:
        x, idx = _solve_potentials(seg, (1, 0), (0, 0))
        span = range(-n, n + 1)
        out = {m: cw * (x[idx[(1, m)]] - x[idx[(0, m)]]) for m in span}
    else:
        x, idx = _solve_potentials(seg, -1, 0)
        span = range(-n + 1, n + 1)
        out = {m: cw * (x[idx[m - 1]] - x[idx[m]]) for m in span}
    if rungs is not None:
        out = {m: out[m] for m in rungs}
    return out
