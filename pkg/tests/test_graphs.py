"""Window construction and tree-detection utilities."""

import math
from fractions import Fraction

import pytest

from laddertrees.graphs import (
    ENHANCED,
    HELIX3,
    LADDER,
    ZIGZAG,
    GraphFamily,
    build_segment,
    is_connected,
    is_spanning_tree,
    normalize_kind,
)


def test_normalize_kind_accepts_case_and_rejects_junk():
    assert normalize_kind("Ladder") == LADDER
    assert normalize_kind("HELIX3") == HELIX3
    with pytest.raises(ValueError):
        normalize_kind("moebius")


def test_family_weight_validation():
    with pytest.raises(ValueError):
        GraphFamily(LADDER, -1)
    with pytest.raises(ValueError):
        GraphFamily(LADDER, 0)
    with pytest.raises(ValueError):
        GraphFamily(ZIGZAG, 1, d=2)      # chords are enhanced-only
    with pytest.raises(ValueError):
        GraphFamily(ENHANCED, 1, d=-1)
    fam = GraphFamily(ENHANCED, Fraction(1, 2), d=Fraction(3))
    assert fam.weight_of("c") == Fraction(1, 2)
    assert fam.weight_of("d") == Fraction(3)
    assert fam.weight_of("h") == 1
    assert not fam.symbolic
    assert GraphFamily(HELIX3).symbolic


def test_ladder_segment_shape():
    seg = build_segment(GraphFamily(LADDER, 1), 0, 4)
    # two rails of 5 columns: 10 vertices, 5 rungs, 8 rail edges
    assert seg.n_vertices == 10
    labels = [e.label for e in seg.edges]
    assert [l for l in labels if l.startswith("z")] == [f"z{m}" for m in range(5)]
    assert sorted(l for l in labels if l.startswith("h")) == sorted(
        f"h{i}_{m}" for i in (0, 1) for m in range(1, 5))
    em = seg.edge_map()
    assert seg.edge_weight(em["z2"]) == 1
    assert em["z2"].wkind == "c"
    assert em["h0_3"].wkind == "h"
    assert not seg.degenerate


def test_helix_segments_wire_the_right_spans():
    for kind, span in ((ZIGZAG, 2), (HELIX3, 3)):
        seg = build_segment(GraphFamily(kind, 2), 1, 8)
        em = seg.edge_map()
        for m in range(2, 9):
            e = em[f"z{m}"]
            assert seg.vertex_labels[e.u] == m - 1
            assert seg.vertex_labels[e.v] == m
            assert e.wkind == "c"
        for m in range(1 + span, 9):
            e = em[f"h{m}"]
            assert seg.vertex_labels[e.u] == m - span
            assert e.wkind == "h"
        assert f"h{span}" not in em   # first long chord needs span+1 vertices

    seg = build_segment(GraphFamily(ENHANCED, 1, d=3), 0, 6)
    em = seg.edge_map()
    assert {l for l in em if l.startswith("g")} == {f"g{m}" for m in range(2, 7)}
    assert em["g4"].wkind == "d"
    assert seg.edge_weight(em["g4"]) == 3


def test_degenerate_windows_are_flagged_not_rejected():
    assert build_segment(GraphFamily(HELIX3, 1), 0, 1).degenerate
    assert not build_segment(GraphFamily(HELIX3, 1), 0, 2).degenerate
    assert build_segment(GraphFamily(ZIGZAG, 1), 5, 5).degenerate


def test_segment_input_validation():
    with pytest.raises(ValueError):
        build_segment(GraphFamily(LADDER, 1), 3, 2)
    with pytest.raises(ValueError):
        build_segment(GraphFamily(LADDER, math.inf), 0, 3)
    with pytest.raises(TypeError):
        build_segment(LADDER, 0, 3)


def test_spanning_tree_detection():
    seg = build_segment(GraphFamily(LADDER, 1), 0, 2)   # 6 vertices, 7 edges
    tree = ("z0", "h0_1", "h1_1", "h0_2", "h1_2")
    assert is_spanning_tree(seg, tree)
    assert is_connected(seg, tree)
    # right count but contains the 4-cycle z1, z2, rails
    cyclic = ("z1", "z2", "h0_2", "h1_2", "h0_1")
    assert not is_spanning_tree(seg, cyclic)
    # too few edges
    assert not is_spanning_tree(seg, ("z0", "h0_1"))
    # connected but with a cycle is not a tree either
    assert not is_spanning_tree(seg, tuple(e.label for e in seg.edges))
    assert is_connected(seg)
    with pytest.raises(ValueError):
        is_spanning_tree(seg, ("nope",))


def test_json_dump_has_stable_shape():
    seg = build_segment(GraphFamily(ENHANCED, Fraction(1, 2), d=1), 0, 3)
    blob = seg.to_json_dict()
    assert blob["family"] == ENHANCED
    assert blob["c"] == "1/2"
    assert blob["lo"] == 0 and blob["hi"] == 3
    assert len(blob["edges"]) == seg.n_edges
    assert all(set(e) == {"label", "u", "v", "weight"} for e in blob["edges"])
