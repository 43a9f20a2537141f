"""Resistor-network view of the width-2 families."""

import math
from fractions import Fraction

import pytest

from laddertrees.electrical import (
    effective_resistance,
    finite_window_current,
    finite_window_resistance,
    kirchhoff_marginal,
    segment_resistance,
    transfer_current,
)
from laddertrees.graphs import (
    HELIX3,
    LADDER,
    ZIGZAG,
    GraphFamily,
    build_segment,
)
from laddertrees.oracle import forced_edge_count, matrix_tree_count
from laddertrees.transfer import TransferSystem, _width2_alpha


def test_resistance_closed_forms():
    prof = effective_resistance(LADDER, 1)
    assert math.isclose(prof.r, 1 / math.sqrt(3), rel_tol=1e-12)
    prof = effective_resistance(ZIGZAG, 1)
    assert math.isclose(prof.r, 1 / math.sqrt(5), rel_tol=1e-12)
    for kind in (LADDER, ZIGZAG):
        for c in (0.3, 1.0, 6.0):
            prof = effective_resistance(kind, c)
            a = _width2_alpha(kind, c)
            assert math.isclose(prof.r, (1 - a) / (1 + a) / c, rel_tol=1e-12)
            assert math.isclose(prof.r_plus, (1 - a) / c, rel_tol=1e-12)


def test_marginal_is_resistance_times_weight(width2_kind):
    for c in (0.5, 1.0, 2.5):
        prof = effective_resistance(width2_kind, c)
        ts = TransferSystem(GraphFamily(width2_kind, Fraction(c)))
        assert abs(kirchhoff_marginal(prof) - ts.rung_marginal()) < 1e-12


def test_current_profile_is_geometric(width2_kind):
    prof = effective_resistance(width2_kind, 1.7)
    sign = 1.0 if width2_kind == LADDER else -1.0
    for m in range(0, 6):
        ratio = transfer_current(prof, m + 1) / transfer_current(prof, m)
        assert math.isclose(ratio, sign * prof.alpha, rel_tol=1e-12)
    assert math.isclose(transfer_current(prof, 0), kirchhoff_marginal(prof),
                        rel_tol=1e-12)
    assert transfer_current(prof, -3) == transfer_current(prof, 3)


def test_node_voltages_satisfy_kirchhoff_current_law():
    for kind, c in ((LADDER, 0.8), (ZIGZAG, 2.0)):
        prof = effective_resistance(kind, c)
        fam = GraphFamily(kind, c)
        seg = build_segment(fam, -9, 9)
        label_of = seg.vertex_labels
        # net current out of every node away from the battery rung is 0
        pot = {lab: prof.node_voltage(lab) for lab in label_of}
        flow = {lab: 0.0 for lab in label_of}
        for e in seg.edges:
            lu, lv = label_of[e.u], label_of[e.v]
            w = float(seg.edge_weight(e))
            i_uv = w * (pot[lu] - pot[lv])
            flow[lu] -= i_uv
            flow[lv] += i_uv
        battery = {(0, 0), (1, 0)} if kind == LADDER else {-1, 0}
        for lab, net in flow.items():
            at_edge = (abs(lab[1] if kind == LADDER else lab) >= 8)
            if lab in battery or at_edge:
                continue
            assert abs(net) < 1e-12, f"KCL violated at {lab}"


def test_finite_windows_converge_from_above(width2_kind):
    prof = effective_resistance(width2_kind, 1)
    vals = [finite_window_resistance(width2_kind, 1, n=n) for n in (2, 4, 8, 16)]
    assert all(a > b or b - prof.r < 1e-12 for a, b in zip(vals, vals[1:]))
    assert all(v >= prof.r - 1e-12 for v in vals)
    assert abs(vals[-1] - prof.r) < 1e-9


def test_finite_window_currents_approach_the_profile():
    prof = effective_resistance(LADDER, 1)
    cur = finite_window_current(LADDER, 1, n=18, rungs=range(0, 6))
    for m in range(6):
        assert abs(cur[m] - prof.current(m)) < 1e-9


def test_edge_marginal_via_resistance_matches_the_oracle():
    # P[e in tree] = weight(e) * R_eff(endpoints), checked by enumeration
    fam = GraphFamily(ZIGZAG, Fraction(3, 2))
    seg = build_segment(fam, 0, 6)
    total = matrix_tree_count(seg)
    for e in seg.edges:
        lu, lv = seg.vertex_labels[e.u], seg.vertex_labels[e.v]
        want = Fraction(forced_edge_count(seg, (e.label,)), 1) / total
        got = float(fam.weight_of(e.wkind)) * segment_resistance(seg, lu, lv)
        assert abs(got - float(want)) < 1e-10


def test_out_of_scope_families_are_rejected():
    with pytest.raises(ValueError):
        effective_resistance(HELIX3, 1)
    with pytest.raises(ValueError):
        finite_window_resistance(HELIX3, 1)
    with pytest.raises(ValueError):
        effective_resistance(LADDER, 0)
    with pytest.raises(ValueError):
        effective_resistance(LADDER, math.inf)


def test_profile_json_round_trip_fields():
    prof = effective_resistance(LADDER, 2)
    blob = prof.to_json_dict()
    assert blob["family"] == LADDER
    assert set(blob) == {"family", "c", "alpha", "r_plus", "r0", "r", "decay"}
