"""Determinantal kernels of the rung occupation process.

For each family the indicator process of rungs along the line is
determinantal: P[all sites in S occupied] = det(A restricted to S).  The
kernel is translation invariant, A_{k,l} = hatf(|k-l|) up to an optional
phase twist, with hatf a finite sum of geometric terms eta * x^|m| whose
ratios are the roots of the characteristic quartic inside the unit disk
(a single root for the width-2 families).  The reciprocal of the spectral
density f is a trigonometric polynomial of order 1 (ladder, zigzag) or 2
(helix-type), which is what the regenerative-order detector reads off.

Bernoulli thinning with retention p scales the kernel to p*A.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .graphs import ENHANCED, HELIX3, LADDER, ZIGZAG, GraphFamily, normalize_kind
from .transfer import _inner_roots, _width2_alpha

_MAX_WINDOW = 200


@dataclass(frozen=True)
class KernelSpec:
    """Immutable kernel data: geometric terms, density coefficients, thinning.

    hatf(m) = sum eta_k x_k^|m| (real, before thinning); the density is
    f(x) = p * c_num / (q0 + q1 cos(2 pi x) + q2 cos(4 pi x)), shifted by
    the phase for twisted kernels.  Entries carry the factor p and the
    phase twist exp(2 pi i phase (l - k)).
    """

    kind: str
    c: float
    d: float
    p: float
    phase: float
    terms: tuple          # of (eta, ratio) complex pairs
    q: tuple              # (q0, q1, q2)
    c_num: float

    def hatf(self, m):
        """Unthinned, unphased kernel coefficient at separation m (real)."""
        m = abs(int(m))
        val = sum(eta * ratio ** m for eta, ratio in self.terms)
        if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
            raise ArithmeticError(f"kernel coefficient not real at m={m}: {val}")
        return val.real


def build_kernel(family, c=None, d=None, p=1.0, phase=0.0):
    """KernelSpec for a family; accepts a GraphFamily or a kind name.

    c = math.inf is allowed for the ladder and gives the Bernoulli(p)
    process (kernel p*I).  Thinning keeps each point independently with
    probability p.
    """
    if isinstance(family, GraphFamily):
        kind, c, d = family.kind, family.c, family.d
    else:
        kind = normalize_kind(family)
        if c is None:
            c = 1
        if d is None or kind != ENHANCED:
            d = 0
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"thinning probability must be in [0,1], got {p}")

    if c == math.inf:
        if kind != LADDER:
            raise ValueError("c = inf is only defined for the ladder")
        spec = KernelSpec(kind, math.inf, 0.0, p, float(phase),
                          ((complex(1.0), complex(0.0)),), (1.0, 0.0, 0.0), 1.0)
        return spec

    cf, df = float(c), float(d)
    if cf <= 0:
        raise ValueError(f"rung weight must be positive, got {c}")
    if df < 0:
        raise ValueError(f"chord weight must be nonnegative, got {d}")

    if kind == LADDER:
        a = _width2_alpha(LADDER, cf)
        amp = (1.0 - a) / (1.0 + a)
        terms = ((complex(amp), complex(a)),)
        q = (cf + 1.0, -1.0, 0.0)
    elif kind == ZIGZAG:
        a = _width2_alpha(ZIGZAG, cf)
        amp = (1.0 - a) / (1.0 + a)
        terms = ((complex(amp), complex(-a)),)     # signed kernel as printed
        q = (cf + 2.0, 2.0, 0.0)
    else:
        x1, x2 = _inner_roots(cf, df)
        if abs(x1 - x2) < 1e-7 * max(1.0, abs(x1)):
            raise ArithmeticError(
                f"double kernel root at (c, d) = ({cf}, {df}) "
                "(the line c = d^2/4 - d): the residue form degenerates")
        terms = tuple((_quartic_residue(x, cf, df), x) for x in (x1, x2))
        q = (cf + 2.0 * df + 3.0, 2.0 * (df + 2.0), 2.0)

    for _, ratio in terms:
        if abs(abs(ratio) - 1.0) < 1e-12:
            raise ArithmeticError(f"kernel ratio on the unit circle: {ratio}")
        if abs(ratio) >= 1.0:
            raise ArithmeticError(f"kernel ratio outside the unit disk: {ratio}")

    spec = KernelSpec(kind, cf, df, p, float(phase), terms, q, cf)
    h0 = spec.hatf(0)
    if not 0.0 < h0 <= 1.0 + 1e-12:
        raise ArithmeticError(f"hatf(0) = {h0} outside (0, 1]")
    xs = np.linspace(0.0, 1.0, 513)
    fx = spectral_density(spec, xs)
    if fx.min() < -1e-9 or fx.max() > 1.0 + 1e-9:
        raise ArithmeticError(
            f"spectral density leaves [0,1]: range [{fx.min()}, {fx.max()}]")
    return spec


def _quartic_residue(x, c, d):
    """eta = x / g'(x) for the normalized quartic g = (x^4+...)/c."""
    dq = 4.0 * x ** 3 + 3.0 * (d + 2.0) * x ** 2 + 2.0 * (c + 2.0 * d + 3.0) * x \
        + (d + 2.0)
    return x * c / dq


def kernel_entry(spec, m):
    """Kernel entry A_{0,m} including thinning and phase.

    Real for the default phase 0; complex with |entry| = |p*hatf(m)| for a
    twisted kernel.
    """
    val = spec.p * spec.hatf(m)
    if spec.phase:
        return val * cmath.exp(2j * math.pi * spec.phase * m)
    return val


def kernel_matrix(spec, sites):
    """Kernel minor over the given distinct integer sites."""
    sites = [int(s) for s in sites]
    if len(set(sites)) != len(sites):
        raise ValueError("sites must be distinct")
    if len(sites) > _MAX_WINDOW:
        raise ValueError(f"window larger than {_MAX_WINDOW} sites is out of scope")
    n = len(sites)
    if spec.phase:
        out = np.empty((n, n), dtype=complex)
        for i, si in enumerate(sites):
            for j, sj in enumerate(sites):
                out[i, j] = spec.p * spec.hatf(sj - si) \
                    * cmath.exp(2j * math.pi * spec.phase * (sj - si))
        return out
    out = np.empty((n, n), dtype=float)
    for i, si in enumerate(sites):
        for j, sj in enumerate(sites):
            out[i, j] = spec.p * spec.hatf(sj - si)
    return out


def window_probability(spec, sites):
    """P[every listed site is occupied] = determinant of the kernel minor."""
    sites = list(sites)
    if not sites:
        return 1.0
    det = np.linalg.det(kernel_matrix(spec, sites))
    if spec.phase:
        if abs(det.imag) > 1e-10 * max(1.0, abs(det.real)):
            raise ArithmeticError(f"minor determinant not real: {det}")
        det = det.real
    det = float(det)
    if det < -1e-10 or det > 1.0 + 1e-10:
        raise ArithmeticError(f"minor determinant {det} outside [0,1]")
    return min(max(det, 0.0), 1.0)


def spectral_density(spec, x):
    """Density f(x) on [0,1), thinning included; accepts arrays."""
    x = np.asarray(x, dtype=float) + spec.phase
    q0, q1, q2 = spec.q
    den = q0 + q1 * np.cos(2.0 * math.pi * x) + q2 * np.cos(4.0 * math.pi * x)
    return spec.p * spec.c_num / den


def fourier_invert(spec, m, nodes=4096):
    """hatf via quadrature of the density: independent of the residue form.

    Trapezoid on the periodic smooth integrand converges spectrally, so
    2^12 nodes already gives ~1e-14; matches kernel_entry to 1e-9 by
    contract.
    """
    if nodes < 4096:
        raise ValueError("need at least 2^12 quadrature nodes")
    m = int(m)
    xs = np.arange(nodes) / nodes
    fx = spectral_density(spec, xs)
    val = complex(np.sum(fx * np.exp(-2j * math.pi * m * xs)) / nodes)
    if not spec.phase:
        if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
            raise ArithmeticError(f"quadrature left an imaginary part: {val}")
        return val.real
    return val * cmath.exp(2j * math.pi * spec.phase * m)


def regenerative_order(spec, nodes=4096, rel_tol=1e-9):
    """Order of the trigonometric polynomial 1/f.

    The conditioned rung process regenerates after gaps larger than this
    order; 1 means renewal.  The Bernoulli case comes out as 0.
    """
    if spec.p == 0.0:
        raise ValueError("empty process (p = 0) has no regenerative order")
    xs = np.arange(nodes) / nodes
    recip = 1.0 / spectral_density(spec, xs)
    coeffs = np.fft.rfft(recip) / nodes
    mags = np.abs(coeffs)
    keep = np.nonzero(mags > rel_tol * mags[0])[0]
    return int(keep.max()) if keep.size else 0


def renewal_distribution(spec, m):
    """Gap law r_m of the conditioned rung process (width-2, unthinned).

    r_m = (1-a)^2 m a^(m-1) with a the kernel ratio magnitude: the
    convolution of a deterministic step with two geometric laws.
    """
    if spec.kind not in (LADDER, ZIGZAG):
        raise ValueError("renewal gap law holds for the width-2 families only")
    if spec.p != 1.0:
        raise ValueError("thinned waiting law differs; need p = 1")
    m = int(m)
    if m < 1:
        raise ValueError("gaps are at least 1")
    a = abs(spec.terms[0][1])
    return (1.0 - a) ** 2 * m * a ** (m - 1)


@dataclass(frozen=True)
class RenewalClass:
    """Outcome of classify_renewal_dpp."""
    accepted: bool
    alpha: float = None
    p: float = None
    c: float = None
    phase: float = 0.0
    reason: str = ""


def classify_renewal_dpp(q0, q1, phase=0.0):
    """Invert an order-1 reciprocal density to thinned-ladder parameters.

    Input is 1/f = q0 + q1 cos(2 pi (x + phase)).  The sign of q1 is
    normalized to <= 0 by a half-period phase shift (edge reorientation);
    then p = 1/(q0+q1) and c = -1/(q1 p), and alpha follows from c.
    Rejects anything that is not a determinantal density.
    """
    q0, q1 = float(q0), float(q1)
    if q1 > 0:
        q1 = -q1
        phase = phase + 0.5
    if q0 + q1 <= 0:
        return RenewalClass(False, phase=phase,
                            reason="reciprocal density not positive")
    p = 1.0 / (q0 + q1)
    if p > 1.0 + 1e-12:
        return RenewalClass(False, phase=phase,
                            reason=f"f(0) = {p} exceeds 1: not a contraction")
    p = min(p, 1.0)
    if q1 == 0.0:
        return RenewalClass(True, alpha=0.0, p=p, c=math.inf, phase=phase)
    c = -1.0 / (q1 * p)
    if c <= 0:
        return RenewalClass(False, phase=phase,
                            reason=f"implied rung weight {c} not positive")
    alpha = _width2_alpha(LADDER, c)
    return RenewalClass(True, alpha=alpha, p=p, c=c, phase=phase)


def order2_nonrealizability_scan(c_values, d_values):
    """Check |hatf(1)| > 0 across a helix-type parameter grid.

    Interlacing two independent copies of the rung process would need
    adjacent sites to be independent (hatf(1) = 0); this never happens,
    so the interlaced order-2 process is not any (c, d, p) rung process.
    """
    worst = None
    points = 0
    for c in c_values:
        for d in d_values:
            spec = build_kernel(ENHANCED, c=c, d=d)
            h1 = abs(spec.hatf(1))
            points += 1
            if worst is None or h1 < worst[0]:
                worst = (h1, float(c), float(d))
    return {
        "points": points,
        "min_abs_hatf1": worst[0],
        "argmin": {"c": worst[1], "d": worst[2]},
        "all_nonzero": worst[0] > 1e-12,
    }
