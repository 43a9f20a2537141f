"""Samplers: renewal ladder, kernel-minor window sampler, interlaced reference.

Stochastic assertions run on fixed seeds with tolerances a few sigma past
the binomial noise floor, so they are deterministic in CI.
"""

import math

import numpy as np
import pytest
from scipy.stats import chi2 as chi2_dist

from laddertrees.graphs import (
    HELIX3,
    LADDER,
    ZIGZAG,
    GraphFamily,
    build_segment,
    is_spanning_tree,
)
from laddertrees.kernel import (
    build_kernel,
    kernel_entry,
    renewal_distribution,
    window_probability,
)
from laddertrees.sampling import (
    SamplePath,
    dpp_window_sample,
    interlaced_reference,
    ladder_renewal_sample,
    renewal_gaps,
    thin,
)
from laddertrees.transfer import _width2_alpha


def test_sample_paths_are_seed_deterministic():
    a = ladder_renewal_sample(1, 64, seed=9)
    b = ladder_renewal_sample(1, 64, seed=9)
    assert np.array_equal(a.x, b.x)
    assert a.tree_edges == b.tree_edges
    c = ladder_renewal_sample(1, 64, seed=10)
    assert not np.array_equal(a.x, c.x)


def test_window_conventions():
    p = ladder_renewal_sample(2, (5, 12), seed=0)
    assert (p.lo, p.hi) == (5, 12)
    assert list(p.indices) == list(range(5, 13))
    assert p.at(7) in (0, 1)
    q = ladder_renewal_sample(2, 8, seed=0)
    assert (q.lo, q.hi) == (0, 7)
    with pytest.raises(ValueError):
        ladder_renewal_sample(1, 0)
    with pytest.raises(ValueError):
        ladder_renewal_sample(1, (4, 2))
    with pytest.raises(ValueError):
        ladder_renewal_sample(-1, 8)


def test_conditioned_mode_pins_a_renewal_at_the_left_edge():
    for seed in range(30):
        p = ladder_renewal_sample(1, (3, 40), seed=seed, conditioned=True)
        assert p.at(3) == 1


def test_stationary_marginal():
    c = 1.0
    a = _width2_alpha(LADDER, c)
    marg = (1 - a) / (1 + a)
    n, reps = 80, 400
    hits = 0
    rng = np.random.default_rng(123)
    for _ in range(reps):
        p = ladder_renewal_sample(c, n, rng=rng)
        hits += int(p.x.sum())
    total = n * reps
    sd = math.sqrt(marg * (1 - marg) / total)
    # samples within a path are correlated; 8 sigma of the iid floor is safe
    assert abs(hits / total - marg) < 8 * sd


def test_gap_law_total_variation():
    spec = build_kernel(LADDER, c=1)
    p = ladder_renewal_sample(1, 500_000, seed=77, conditioned=True)
    gaps = renewal_gaps(p.x)
    assert len(gaps) > 100_000
    top = int(gaps.max())
    emp = np.bincount(gaps, minlength=top + 1)[1:] / len(gaps)
    law = np.array([renewal_distribution(spec, m) for m in range(1, top + 1)])
    tv = 0.5 * np.abs(emp - law).sum() + 0.5 * (1.0 - law.sum())
    assert tv < 0.01


def test_gap_mean_matches_the_closed_form():
    c = 0.5
    a = _width2_alpha(LADDER, c)
    p = ladder_renewal_sample(c, 300_000, seed=5, conditioned=True)
    gaps = renewal_gaps(p.x)
    want = (1 + a) / (1 - a)
    assert abs(gaps.mean() - want) < 0.02


def test_tree_edges_form_spanning_trees_of_closed_windows():
    # restrict to windows whose ends are renewals: the recorded edges are
    # then a spanning tree of the ladder segment between them
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 25:
        p = ladder_renewal_sample(1, 40, rng=rng, conditioned=True)
        ones = np.flatnonzero(p.x)
        if len(ones) < 2:
            continue
        lo, hi = int(ones[0]), int(ones[-1])
        seg = build_segment(GraphFamily(LADDER, 1), lo, hi)
        em = seg.edge_map()
        kept = tuple(l for l in p.tree_edges if l in em)
        assert is_spanning_tree(seg, kept)
        checked += 1


def test_rung_indicators_match_the_edge_list():
    p = ladder_renewal_sample(2, 200, seed=8)
    rungs = {int(l[1:]) for l in p.tree_edges if l.startswith("z")}
    assert rungs == set(np.flatnonzero(p.x) + p.lo)
    # one rail per inter-renewal gap is missing; the two gaps straddling
    # the window edges may hide their missing rail outside the window
    rails = sum(1 for l in p.tree_edges if l.startswith("h"))
    dropped = 2 * (p.hi - p.lo) - rails
    ones = int(p.x.sum())
    assert ones - 1 <= dropped <= ones + 1


def test_all_rungs_limit_keeps_one_rail_per_column():
    p = ladder_renewal_sample(math.inf, 30, seed=3)
    assert p.x.all()
    rails = [l for l in p.tree_edges if l.startswith("h")]
    assert len(rails) == 29
    seg = build_segment(GraphFamily(LADDER, 1), 0, 29)
    assert is_spanning_tree(seg, p.tree_edges)


def test_thinning():
    p = ladder_renewal_sample(math.inf, 40_000, seed=1)
    q = thin(p, 0.4, seed=2)
    assert q.tree_edges is None
    assert q.provenance["thinned"] == 0.4
    rate = q.x.mean()
    assert abs(rate - 0.4) < 0.01
    assert np.all(q.x <= p.x)
    with pytest.raises(ValueError):
        thin(p, 1.5)
    same = thin(p, 1.0, seed=3)
    assert np.array_equal(same.x, p.x)


def test_dpp_sampler_marginals_and_determinism():
    spec = build_kernel(HELIX3)
    a = dpp_window_sample(spec, 32, seed=4)
    b = dpp_window_sample(spec, 32, seed=4)
    assert isinstance(a, SamplePath)
    assert np.array_equal(a.x, b.x)
    reps, hits = 1500, 0
    rng = np.random.default_rng(6)
    for _ in range(reps):
        hits += int(dpp_window_sample(spec, 12, rng=rng).x.sum())
    marg = spec.hatf(0)
    sd = math.sqrt(marg * (1 - marg) / (12 * reps))
    assert abs(hits / (12 * reps) - marg) < 6 * sd


def test_dpp_sampler_window_pattern_frequencies():
    """Four-site occupation patterns against inclusion-exclusion of minors."""
    spec = build_kernel(ZIGZAG, c=1)
    sites = [0, 1, 2, 3]
    # P[pattern] by inclusion-exclusion over supersets of the occupied set
    def exact(bits):
        total = 0.0
        free = [s for i, s in enumerate(sites) if not bits >> i & 1]
        on = [s for i, s in enumerate(sites) if bits >> i & 1]
        for extra in range(1 << len(free)):
            sub = on + [free[i] for i in range(len(free)) if extra >> i & 1]
            total += (-1) ** bin(extra).count("1") * window_probability(spec, sub)
        return total

    probs = np.array([exact(b) for b in range(16)])
    assert abs(probs.sum() - 1.0) < 1e-10
    n = 8000
    rng = np.random.default_rng(14)
    counts = np.zeros(16)
    for _ in range(n):
        x = dpp_window_sample(spec, 4, rng=rng).x
        counts[int(x[0]) | int(x[1]) << 1 | int(x[2]) << 2 | int(x[3]) << 3] += 1
    keep = probs > 1e-12
    chi2 = float(((counts[keep] - n * probs[keep]) ** 2 / (n * probs[keep])).sum())
    assert chi2_dist.sf(chi2, int(keep.sum()) - 1) > 1e-3


def test_dpp_sampler_long_window_stays_numerically_sane():
    spec = build_kernel(HELIX3, c=1, p=0.7)
    p = dpp_window_sample(spec, 200, seed=99)
    assert len(p.x) == 200
    assert set(np.unique(p.x)) <= {0, 1}
    with pytest.raises(ValueError):
        dpp_window_sample(spec, 201)
    with pytest.raises(ValueError):
        dpp_window_sample(spec, 0)
    with pytest.raises(TypeError):
        dpp_window_sample("ladder", 10)


def test_dpp_sampler_handles_phase_twists():
    spec = build_kernel(HELIX3, c=2, phase=0.25)
    p = dpp_window_sample(spec, 64, seed=12)
    assert set(np.unique(p.x)) <= {0, 1}


def test_interlaced_reference_moments():
    alpha, p, n = 0.4, 0.8, 200_000
    path = interlaced_reference(alpha, p, n, seed=13)
    assert len(path.x) == n
    marg = p * (1 - alpha) / (1 + alpha)
    x = path.x.astype(float)
    sd = math.sqrt(marg / n)
    assert abs(x.mean() - marg) < 5 * sd
    # adjacent sites live on independent copies: lag-1 covariance vanishes
    lag1 = np.mean(x[:-1] * x[1:]) - x.mean() ** 2
    assert abs(lag1) < 5 * marg / math.sqrt(n)
    # lag-2 covariance is the one-copy lag-1 covariance, which is negative
    c = (1 - alpha) ** 2 / (2 * alpha)
    spec = build_kernel(LADDER, c=c, p=p)
    want = -abs(kernel_entry(spec, 1)) ** 2
    lag2 = np.mean(x[:-2] * x[2:]) - x.mean() ** 2
    assert want < 0
    assert abs(lag2 - want) < 6 * marg / math.sqrt(n)


def test_interlaced_reference_rejects_trivial_parameters():
    with pytest.raises(ValueError):
        interlaced_reference(0.0, 1.0, 10)
    with pytest.raises(ValueError):
        interlaced_reference(1.0, 1.0, 10)
    with pytest.raises(ValueError):
        interlaced_reference(0.5, 0.0, 10)


def test_sample_path_json_contract():
    p = ladder_renewal_sample(1, 12, seed=2)
    blob = p.to_json_dict()
    assert blob["family"] == LADDER
    assert blob["window"] == [0, 11]
    assert len(blob["x"]) == 12
    assert isinstance(blob["tree_edges"], list)
    q = thin(p, 0.5, seed=0)
    assert q.to_json_dict()["tree_edges"] is None
