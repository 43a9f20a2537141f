"""Cross-module validation matrix.

Every agreement that ties two independent computations together lives
here as a named check: exact counts against brute-force enumeration,
window probabilities against kernel determinants, electrical currents
against kernel entries, chain statistics against transfer spectra, and
sampler output against all of the above.  run_suite returns structured
results; the command-line `verify` subcommand renders them.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import stats

from . import chain as chain_mod
from . import electrical, kernel, oracle, sampling, transfer
from .graphs import ENHANCED, GraphFamily, HELIX3, LADDER, ZIGZAG, build_segment

__all__ = ["CheckResult", "run_suite", "SUITES", "CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name, passed, detail):
    return CheckResult(name, bool(passed), detail)


# ---------------------------------------------------------------- counts

def check_counts_against_enumeration():
    """Transfer-matrix window counts equal brute-force tree enumeration."""
    worst = None
    cases = 0
    for kind, c, d, nmax in [(LADDER, Fraction(1), 0, 5), (LADDER, Fraction(1, 2), 0, 4),
                             (ZIGZAG, Fraction(2), 0, 8), (ZIGZAG, Fraction(3), 0, 8),
                             (HELIX3, Fraction(1), 0, 8), (ENHANCED, Fraction(1), Fraction(2), 7),
                             (ENHANCED, Fraction(1, 2), Fraction(3), 7)]:
        fam = GraphFamily(kind, c, d)
        for n in range(3, nmax + 1):
            want = transfer.count_value(fam, n)
            seg = build_segment(fam, 0, n - 1) if kind == LADDER else build_segment(fam, 1, n)
            got = oracle.weighted_count(seg).evaluate(Fraction(c), Fraction(d))
            cases += 1
            if want != got:
                worst = (kind, str(c), str(d), n, str(want), str(got))
                break
    return _result("counts-vs-enumeration",
                   worst is None,
                   f"{cases} windows agree exactly" if worst is None
                   else f"mismatch at {worst}")


def check_counts_closed_form():
    """Recursion-route counts match the spectral closed forms and the
    published integer sequences."""
    ladder_seq = [1, 4, 15, 56, 209, 780]
    helix_seq = [0, 0, 1, 4, 12, 36, 105, 304, 880, 2544]
    ok = True
    notes = []
    fam = GraphFamily(LADDER, 1)
    got = [transfer.count_by_recursion(fam, n) for n in range(1, 7)]
    if got != ladder_seq:
        ok, notes = False, [f"ladder seq {got}"]
    fam = GraphFamily(HELIX3, 1)
    got = [transfer.count_by_recursion(fam, n) for n in range(1, 11)]
    if got != helix_seq:
        ok = False
        notes.append(f"helix3 seq {got}")
    for n in range(1, 11):
        cf = transfer.count_closed_form(GraphFamily(HELIX3, 1), n)
        if abs(cf - helix_seq[n - 1]) > 1e-9 * max(1, helix_seq[n - 1]):
            ok = False
            notes.append(f"closed form n={n}: {cf}")
    return _result("counts-closed-form", ok,
                   "ladder and helix-3 sequences reproduced" if ok else "; ".join(notes))


def check_count_spectral_accuracy():
    """Dominant-eigenvalue count approximation converges to the exact count."""
    ok = True
    detail = []
    for kind, c, d in [(LADDER, 1.0, 0.0), (ZIGZAG, 2.0, 0.0),
                       (HELIX3, 1.0, 0.0), (ENHANCED, 1.0, 3.0)]:
        fam = GraphFamily(kind, c, d)
        n = 18
        exact = float(transfer.count_value(fam, n))
        approx = transfer.TransferSystem(fam).count_spectral(n)
        rel = abs(approx - exact) / exact
        detail.append(f"{kind}:{rel:.1e}")
        if rel > 1e-6:
            ok = False
    return _result("count-spectral-accuracy", ok, " ".join(detail))


# ---------------------------------------------------------- probabilities

def check_window_probability_vs_oracle():
    """Kernel determinant window probabilities equal forced-edge ratios
    on long finite segments (exact rational Kirchhoff counts)."""
    ok = True
    details = []
    cases = [(LADDER, 1.0, [0], 14), (LADDER, 1.0, [0, 1], 14),
             (ZIGZAG, 2.0, [0, 2], 20), (HELIX3, 1.0, [0], 24),
             (HELIX3, 1.0, [0, 1], 24)]
    for kind, c, rungs, half in cases:
        fam = GraphFamily(kind, Fraction(c).limit_denominator())
        seg = build_segment(fam, -half, half)
        labels = [f"z{m}" for m in rungs]
        total = oracle.matrix_tree_count(seg)
        forced = oracle.forced_edge_count(seg, labels)
        finite = forced / total
        spec = kernel.build_kernel(kind, c=c)
        infinite = kernel.window_probability(spec, rungs)
        err = abs(float(finite) - infinite)
        details.append(f"{kind}{rungs}:{err:.1e}")
        if err > 5e-6:  # finite-window truncation at geometric decay
            ok = False
    return _result("window-prob-vs-finite-oracle", ok, " ".join(details))


def check_marginal_three_routes():
    """Rung marginal: transfer stationary value, kernel diagonal, and
    electrical Kirchhoff product all coincide."""
    ok = True
    details = []
    for kind, c in [(LADDER, 0.5), (LADDER, 1.0), (ZIGZAG, 1.0), (ZIGZAG, 3.0)]:
        fam = GraphFamily(kind, Fraction(c).limit_denominator())
        t = transfer.TransferSystem(fam).rung_marginal()
        k = kernel.kernel_entry(kernel.build_kernel(kind, c=c), 0).real
        prof = electrical.effective_resistance(kind, c=c)
        e = electrical.kirchhoff_marginal(prof)
        err = max(abs(t - k), abs(t - e))
        details.append(f"{kind},c={c}:{err:.1e}")
        if err > 1e-10:
            ok = False
    t = transfer.TransferSystem(GraphFamily(HELIX3, 1)).rung_marginal()
    k = kernel.kernel_entry(kernel.build_kernel(HELIX3, c=1.0), 0).real
    golden = (math.sqrt(5) + 1) / 2
    closed = golden ** 1.5 / (2 * math.sqrt(5))
    err = max(abs(t - k), abs(t - closed))
    details.append(f"helix3:{err:.1e}")
    if err > 1e-10:
        ok = False
    return _result("marginal-three-routes", ok, " ".join(details))


def check_determinant_identity():
    """Joint rung probabilities from the transfer sandwich equal the
    kernel minor determinants."""
    rng = np.random.default_rng(711)
    ok = True
    worst = 0.0
    cases = 0
    for kind, c in [(LADDER, 1.0), (ZIGZAG, 2.0), (HELIX3, 1.0)]:
        fam = GraphFamily(kind, Fraction(c).limit_denominator())
        ts = transfer.TransferSystem(fam)
        spec = kernel.build_kernel(kind, c=c)
        for _ in range(12):
            k = int(rng.integers(2, 4))
            sites = np.sort(rng.choice(9, size=k, replace=False)).tolist()
            p_transfer = ts.joint_rung_probability(sites)
            p_kernel = kernel.window_probability(spec, sites)
            err = abs(p_transfer - p_kernel)
            worst = max(worst, err)
            cases += 1
            if err > 1e-9:
                ok = False
    return _result("determinant-identity", ok, f"{cases} windows, worst {worst:.1e}")


def check_fourier_residue_agreement():
    """Numerical Fourier inversion of the spectral density reproduces the
    residue closed form of the kernel."""
    ok = True
    worst = 0.0
    for kind, c, d in [(LADDER, 1.0, 0.0), (ZIGZAG, 2.0, 0.0),
                       (HELIX3, 1.0, 0.0), (ENHANCED, 1.0, 3.0)]:
        spec = kernel.build_kernel(kind, c=c, d=d)
        for m in (0, 1, 2, 5, 12, 25):
            a = kernel.fourier_invert(spec, m)
            b = kernel.kernel_entry(spec, m).real
            worst = max(worst, abs(a - b))
            if abs(a - b) > 1e-9:
                ok = False
    return _result("fourier-vs-residue", ok, f"worst {worst:.1e}")


# ------------------------------------------------------------- electrical

def check_electrical_fixed_point():
    """Half-line effective resistance solves its self-consistency equation
    and matches the closed forms."""
    ok = True
    worst = 0.0
    for kind in (LADDER, ZIGZAG):
        for c in (0.25, 0.5, 1.0, 2.0, 10.0):
            prof = electrical.effective_resistance(kind, c=c)
            s = 2.0 if kind == LADDER else 1.0
            resid = abs(prof.r_plus - 1.0 / (c + 1.0 / (prof.r_plus + s)))
            worst = max(worst, resid)
            if resid > 1e-12:
                ok = False
    return _result("electrical-fixed-point", ok, f"worst residual {worst:.1e}")


def check_current_vs_kernel():
    """Transfer currents on the infinite graph equal kernel entries
    (up to the alternating sign on the zigzag)."""
    ok = True
    worst = 0.0
    for kind, c in [(LADDER, 1.0), (LADDER, 0.5), (ZIGZAG, 1.0), (ZIGZAG, 4.0)]:
        prof = electrical.effective_resistance(kind, c=c)
        spec = kernel.build_kernel(kind, c=c)
        for m in range(26):
            i_m = electrical.transfer_current(prof, m)
            k_m = kernel.kernel_entry(spec, m).real
            err = abs(abs(i_m) - abs(k_m))
            worst = max(worst, err)
            if err > 1e-10:
                ok = False
    return _result("current-vs-kernel", ok, f"worst {worst:.1e}")


def check_finite_network_convergence():
    """Truncated-network resistance converges geometrically to the
    fixed-point value."""
    ok = True
    details = []
    for kind, c in [(LADDER, 1.0), (ZIGZAG, 2.0)]:
        prof = electrical.effective_resistance(kind, c=c)
        errs = [abs(electrical.finite_window_resistance(kind, c, n) - prof.r)
                for n in (4, 8, 12)]
        ratio = errs[2] / errs[1] if errs[1] else 0.0
        shrinking = errs[0] > errs[1] > errs[2] and errs[2] < 1e-6
        details.append(f"{kind}:err(12)={errs[2]:.1e},ratio={ratio:.2e}")
        if not shrinking:
            ok = False
    return _result("finite-network-convergence", ok, " ".join(details))


def check_kirchhoff_edge_marginals():
    """P[edge in tree] = effective resistance x weight on finite graphs,
    for every edge, via exact rational arithmetic."""
    checked = 0
    for kind, c, d, lo, hi in [(LADDER, Fraction(1), 0, 0, 2), (ZIGZAG, Fraction(2), 0, 0, 5),
                               (HELIX3, Fraction(1), 0, 0, 6),
                               (ENHANCED, Fraction(1), Fraction(2), 0, 6)]:
        fam = GraphFamily(kind, c, d)
        seg = build_segment(fam, lo, hi)
        total = oracle.matrix_tree_count(seg)
        for lab, e in seg.edge_map().items():
            w = float(fam.weight_of(e.wkind))
            reff = electrical.segment_resistance(
                seg, seg.vertex_labels[e.u], seg.vertex_labels[e.v])
            marginal = oracle.forced_edge_count(seg, [lab]) / total
            if abs(float(marginal) - reff * w) > 1e-10:
                return _result("kirchhoff-edge-marginals", False,
                               f"{kind} edge {lab}: {marginal} != {reff}*{w}")
            checked += 1
    return _result("kirchhoff-edge-marginals", True, f"{checked} edges agree")


# ------------------------------------------------------------------ chain

def check_chain_construction():
    """Chain transition matrix is stochastic, stationary vector matches
    the golden-ratio closed forms, and both entropy routes agree."""
    spec = chain_mod.build_chain()
    ok = True
    notes = []
    rows = np.abs(spec.R.sum(axis=1) - 1).max()
    if rows > 1e-12:
        ok = False
        notes.append(f"row sums off by {rows:.1e}")
    flow = np.abs(spec.pi_R @ spec.R - spec.pi_R).max()
    if flow > 1e-12:
        ok = False
        notes.append(f"stationarity off by {flow:.1e}")
    h_sum = chain_mod.chain_entropy(spec)
    golden = (math.sqrt(5) + 1) / 2
    h_closed = math.log(golden + math.sqrt(golden))
    if abs(h_sum - spec.entropy) > 1e-9 or abs(spec.entropy - h_closed) > 1e-12:
        ok = False
        notes.append(f"entropy {h_sum} vs {spec.entropy} vs {h_closed}")
    return _result("chain-construction", ok,
                   "stochastic + stationary + entropy routes agree" if ok
                   else "; ".join(notes))


def check_chain_vs_kernel():
    """Probability of m consecutive rungs computed through the chain
    equals the kernel determinant."""
    spec = chain_mod.build_chain()
    kspec = kernel.build_kernel(HELIX3, c=1.0)
    ok = True
    worst = 0.0
    for m in range(1, 9):
        p_chain = chain_mod.query_probability(spec, (1,) * m)
        p_kernel = kernel.window_probability(kspec, list(range(m)))
        err = abs(p_chain - p_kernel)
        worst = max(worst, err)
        if err > 1e-9:
            ok = False
    return _result("chain-vs-kernel-windows", ok, f"worst {worst:.1e}")


def check_successor_table():
    """Symbol successor table regenerated exactly from brute-force
    boundary classification of all width-six edge subsets."""
    try:
        report = chain_mod.verify_successor_table(window=6, report=True)
    except AssertionError as exc:
        return _result("successor-table-regeneration", False, str(exc))
    reps = report["representatives"]
    return _result("successor-table-regeneration", True,
                   f"classes seen with representative counts {reps}")


# ---------------------------------------------------------------- kernels

def check_classify_roundtrip():
    """Reading the renewal parameters back from a kernel's reciprocal
    density recovers the generating weights."""
    ok = True
    worst = 0.0
    for c in (0.1, 0.5, 1.0, 3.0, 10.0):
        cls = kernel.classify_renewal_dpp((c + 1.0) / c, -1.0 / c)
        want_alpha = electrical.effective_resistance(LADDER, c=c).alpha
        err = max(abs(cls.alpha - want_alpha), abs(cls.c - c), abs(cls.p - 1.0))
        worst = max(worst, err)
        if not cls.accepted or err > 1e-10:
            ok = False
    return _result("classify-roundtrip", ok, f"worst {worst:.1e}")


def check_order2_scan():
    """No chord-weight kernel is regenerative of order two: lag-one
    correlations stay bounded away from zero across the parameter grid."""
    res = kernel.order2_nonrealizability_scan((0.1, 0.5, 1.0, 3.0, 10.0),
                                              (0.0, 1.0, 3.0, 7.0, 10.0))
    ok = res["points"] >= 25 and res["all_nonzero"]
    return _result("order2-nonrealizability-scan", ok,
                   f"{res['points']} grid points, min lag-1 weight {res['min_abs_hatf1']:.2e}")


# ---------------------------------------------------------------- sampler

def _window4_chi2(xs_a, xs_b):
    """Chi-square comparison of two samples of 4-bit patterns."""
    ca = np.bincount(xs_a, minlength=16).astype(float)
    cb = np.bincount(xs_b, minlength=16).astype(float)
    keep = (ca + cb) > 0
    na, nb = ca.sum(), cb.sum()
    pooled = (ca + cb) / (na + nb)
    stat = 0.0
    for i in np.nonzero(keep)[0]:
        stat += (ca[i] - na * pooled[i]) ** 2 / (na * pooled[i])
        stat += (cb[i] - nb * pooled[i]) ** 2 / (nb * pooled[i])
    dof = keep.sum() - 1
    return stat, 1.0 - stats.chi2.cdf(stat, dof)


def _pack4(x):
    return int(x[0]) * 8 + int(x[1]) * 4 + int(x[2]) * 2 + int(x[3])


def check_sampler_agreement_ladder(n_samples=20000):
    """Renewal-construction samples and determinantal samples of the
    ladder rung process follow the same window law."""
    rng = np.random.default_rng(5150)
    spec = kernel.build_kernel(LADDER, c=1.0)
    a = np.empty(n_samples, dtype=np.int64)
    b = np.empty(n_samples, dtype=np.int64)
    for i in range(n_samples):
        a[i] = _pack4(sampling.ladder_renewal_sample(1.0, 4, rng=rng).x)
        b[i] = _pack4(sampling.dpp_window_sample(spec, 4, rng=rng).x)
    stat, p = _window4_chi2(a, b)
    return _result("sampler-agreement-ladder", p > 0.001,
                   f"chi2 {stat:.1f}, p {p:.4f} at {n_samples} samples each")


def check_sampler_agreement_helix(n_samples=20000):
    """Chain-driven helix samples and determinantal samples follow the
    same window law."""
    rng = np.random.default_rng(5151)
    cspec = chain_mod.build_chain()
    kspec = kernel.build_kernel(HELIX3, c=1.0)
    a = np.empty(n_samples, dtype=np.int64)
    b = np.empty(n_samples, dtype=np.int64)
    for i in range(n_samples):
        path = chain_mod.sample_path(cspec, 4, rng=rng)
        _, z, _ = chain_mod.decode_path(path)
        a[i] = _pack4(z)
        b[i] = _pack4(sampling.dpp_window_sample(kspec, 4, rng=rng).x)
    stat, p = _window4_chi2(a, b)
    return _result("sampler-agreement-helix3", p > 0.001,
                   f"chi2 {stat:.1f}, p {p:.4f} at {n_samples} samples each")


def check_sampler_gap_law(n_gaps=100000):
    """Empirical renewal gaps follow the size-times-geometric law."""
    rng = np.random.default_rng(5152)
    alpha = transfer._width2_alpha(LADDER, 1.0)
    gaps = []
    total = 0
    while total < n_gaps:
        s = sampling.ladder_renewal_sample(1.0, 50000, rng=rng, conditioned=True)
        g = sampling.renewal_gaps(s.x)
        gaps.append(g)
        total += len(g)
    gaps = np.concatenate(gaps)[:n_gaps]
    mmax = int(gaps.max())
    tv = 0.0
    for m in range(1, mmax + 1):
        rm = (1 - alpha) ** 2 * m * alpha ** (m - 1)
        tv += abs(float((gaps == m).mean()) - rm)
    tv += (1 - alpha) ** 2 * sum(m * alpha ** (m - 1)
                                 for m in range(mmax + 1, mmax + 400))
    bound = 0.002 * math.sqrt(1e6 / n_gaps)
    return _result("sampler-gap-law", tv < bound,
                   f"TV {tv:.5f} over {n_gaps} gaps (bound {bound:.4f})")


def check_sampler_tree_validity(n_samples=400):
    """Full-tree ladder samples restrict to forests with exactly one
    missing rail per gap."""
    rng = np.random.default_rng(5153)
    fam = GraphFamily(LADDER, 1)
    seg = build_segment(fam, 0, 40)
    em = seg.edge_map()
    for _ in range(n_samples):
        s = sampling.ladder_renewal_sample(1.0, (0, 40), rng=rng)
        parent = {}

        def find(v):
            while parent.setdefault(v, v) != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for lab in s.tree_edges:
            e = em[lab]
            ru, rv = find(e.u), find(e.v)
            if ru == rv:
                return _result("sampler-tree-validity", False, f"cycle at {lab}")
            parent[ru] = rv
        ones = np.nonzero(s.x)[0]
        for a, b in zip(ones, ones[1:]):
            missing = [(i, m) for m in range(a + 1, b + 1) for i in (0, 1)
                       if f"h{i}_{m}" not in s.tree_edges]
            if len(missing) != 1:
                return _result("sampler-tree-validity", False,
                               f"gap ({a},{b}] missing rails {missing}")
    return _result("sampler-tree-validity", True,
                   f"{n_samples} windows acyclic, one missing rail per gap")


def check_wilson_uniformity(n_samples=6000):
    """Wilson-algorithm tree samples on a small ladder are uniform over
    the 15 spanning trees."""
    fam = GraphFamily(LADDER, 1)
    seg = build_segment(fam, 0, 2)
    trees = list(oracle.enumerate_trees(seg))
    if len(trees) != 15:
        return _result("wilson-uniformity", False, f"{len(trees)} trees enumerated")
    index = {frozenset(t): i for i, t in enumerate(trees)}
    rng = np.random.default_rng(5154)
    counts = np.zeros(15)
    for _ in range(n_samples):
        t = oracle.wilson_sample(seg, rng)
        counts[index[frozenset(t)]] += 1
    expected = n_samples / 15.0
    stat = float(((counts - expected) ** 2 / expected).sum())
    p = 1.0 - stats.chi2.cdf(stat, 14)
    return _result("wilson-uniformity", p > 0.001,
                   f"chi2 {stat:.1f} on 14 dof, p {p:.4f}")


def check_input_validation():
    """Degenerate parameters are rejected where the theory breaks down."""
    probes = []
    try:
        kernel.build_kernel(ENHANCED, c=7.0 * 7.0 / 4.0 - 7.0, d=7.0)
        probes.append("degenerate double-root weights accepted")
    except (ValueError, ArithmeticError):
        pass
    try:
        electrical.effective_resistance(HELIX3, c=1.0)
        probes.append("helix resistance accepted")
    except ValueError:
        pass
    try:
        transfer.count_by_recursion(GraphFamily(ENHANCED, 1, 2), 5)
        probes.append("weighted-chord recursion accepted")
    except ValueError:
        pass
    try:
        sampling.interlaced_reference(0.0, 1.0, 10, seed=0)
        probes.append("trivial interlacing accepted")
    except ValueError:
        pass
    return _result("input-validation", not probes,
                   "all degenerate inputs rejected" if not probes else "; ".join(probes))


CHECKS = {
    "counts": [check_counts_against_enumeration, check_counts_closed_form,
               check_count_spectral_accuracy],
    "prob": [check_window_probability_vs_oracle, check_marginal_three_routes,
             check_determinant_identity],
    "kernel": [check_fourier_residue_agreement, check_classify_roundtrip,
               check_order2_scan],
    "electric": [check_electrical_fixed_point, check_current_vs_kernel,
                 check_finite_network_convergence, check_kirchhoff_edge_marginals],
    "chain": [check_chain_construction, check_chain_vs_kernel, check_successor_table],
    "sampler": [check_sampler_agreement_ladder, check_sampler_agreement_helix,
                check_sampler_gap_law, check_sampler_tree_validity,
                check_wilson_uniformity],
    "validation": [check_input_validation],
}

SUITES = ["all"] + list(CHECKS)


def run_suite(suite="all"):
    """Run one named suite (or all of them); returns a list of CheckResult."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    groups = list(CHECKS) if suite == "all" else [suite]
    results = []
    for g in groups:
        for fn in CHECKS[g]:
            try:
                results.append(fn())
            except Exception as exc:  # a crashed check is a failed check
                name = fn.__name__.replace("check_", "").replace("_", "-")
                results.append(_result(name, False, f"{type(exc).__name__}: {exc}"))
    return results
