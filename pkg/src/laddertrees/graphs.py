"""The four ladder-like graph families and their finite windows.

A family is a bi-infinite graph; a FiniteSegment is the induced subgraph
on an integer window.  The four kinds:

* ladder    -- vertices {0,1} x Z, rungs z_m = {(0,m),(1,m)} of weight c,
               rails h_{0,m}, h_{1,m} of weight 1
* zigzag    -- vertices Z, rungs z_m = {m-1,m} of weight c, chords
               h_m = {m-2,m} of weight 1
* helix3    -- vertices Z, rungs z_m = {m-1,m} of weight c, chords
               h_m = {m-3,m} of weight 1
* enhanced  -- helix3 plus extra chords g_m = {m-2,m} of weight d

Only edges with both endpoints inside the window are kept (strict induced
rule).  Vertices get dense indices; the original labels are kept alongside
for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .weights import WeightPoly, C, D, ONE

LADDER = "ladder"
ZIGZAG = "zigzag"
HELIX3 = "helix3"
ENHANCED = "enhanced"

FAMILY_KINDS = (LADDER, ZIGZAG, HELIX3, ENHANCED)

_ALIASES = {
    "ladder": LADDER,
    "zigzag": ZIGZAG,
    "helix2": ZIGZAG,
    "helix3": HELIX3,
    "enhanced": ENHANCED,
    "enhanced_helix3": ENHANCED,
    "enhanced-helix3": ENHANCED,
}


def normalize_kind(name):
    try:
        return _ALIASES[str(name).lower()]
    except KeyError:
        raise ValueError(f"unknown graph family {name!r}; expected one of {FAMILY_KINDS}")


@dataclass(frozen=True)
class GraphFamily:
    """A graph family with its edge weights.

    c is the rung weight, d the extra-chord weight (enhanced only).
    Either may be None, meaning "keep symbolic".  c = math.inf is the
    all-rungs-present limit and is only meaningful to the kernel/sampler
    layer; finite segments reject it.
    """

    kind: str
    c: object = None
    d: object = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        if self.c is not None and self.c != math.inf and not self.c > 0:
            raise ValueError(f"rung weight c must be positive, got {self.c}")
        if self.kind != ENHANCED:
            if self.d not in (0, None):
                raise ValueError(f"chord weight d is fixed 0 for {self.kind}")
            object.__setattr__(self, "d", 0)
        elif self.d is not None and not self.d >= 0:
            raise ValueError(f"chord weight d must be nonnegative, got {self.d}")

    @property
    def symbolic(self):
        return self.c is None or (self.kind == ENHANCED and self.d is None)

    def weight_of(self, wkind):
        """Numeric weight of an edge kind ('c', 'd' or 'h')."""
        if wkind == "h":
            return 1
        if wkind == "c":
            if self.c is None:
                raise ValueError("family has symbolic c")
            return self.c
        if self.d is None:
            raise ValueError("family has symbolic d")
        return self.d

    def weight_poly_of(self, wkind):
        return {"c": C, "d": D, "h": ONE}[wkind]


@dataclass(frozen=True)
class Edge:
    label: str
    u: int          # dense vertex indices
    v: int
    wkind: str      # 'c' (rung), 'h' (weight-1 chord/rail), 'd' (extra chord)


@dataclass(frozen=True)
class FiniteSegment:
    family: GraphFamily
    lo: int
    hi: int
    vertex_labels: tuple      # dense index -> original label
    edges: tuple              # of Edge
    degenerate: bool

    @property
    def n_vertices(self):
        return len(self.vertex_labels)

    @property
    def n_edges(self):
        return len(self.edges)

    def edge_map(self):
        return {e.label: e for e in self.edges}

    def edge_weight(self, edge):
        return self.family.weight_of(edge.wkind)

    def edge_weight_poly(self, edge):
        return self.family.weight_poly_of(edge.wkind)

    def to_json_dict(self):
        def num(x):
            if x is None:
                return None
            if isinstance(x, Fraction):
                return str(x)
            return x

        return {
            "schema": "laddertrees/segment/1",
            "family": self.family.kind,
            "c": num(self.family.c),
            "d": num(self.family.d),
            "lo": self.lo,
            "hi": self.hi,
            "degenerate": self.degenerate,
            "vertices": [list(v) if isinstance(v, tuple) else v
                         for v in self.vertex_labels],
            "edges": [
                {
                    "label": e.label,
                    "u": e.u,
                    "v": e.v,
                    "weight": e.wkind if self.family.symbolic else num(self.family.weight_of(e.wkind)),
                }
                for e in self.edges
            ],
        }


def build_segment(family, lo, hi):
    """Induced subgraph of the family on the window [lo, hi].

    For the ladder the window indexes columns; for the helix-type families
    it indexes vertices.  Windows too small for the family's boundary
    structure are flagged degenerate but still built.
    """
    if not isinstance(family, GraphFamily):
        raise TypeError("family must be a GraphFamily")
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if family.c == math.inf:
        raise ValueError("finite segments need a finite rung weight")

    k = hi - lo + 1
    edges = []
    if family.kind == LADDER:
        labels = []
        index = {}
        for m in range(lo, hi + 1):
            for i in (0, 1):
                index[(i, m)] = len(labels)
                labels.append((i, m))
        for m in range(lo, hi + 1):
            edges.append(Edge(f"z{m}", index[(0, m)], index[(1, m)], "c"))
        for m in range(lo + 1, hi + 1):
            for i in (0, 1):
                edges.append(Edge(f"h{i}_{m}", index[(i, m - 1)], index[(i, m)], "h"))
        degenerate = False
    else:
        labels = list(range(lo, hi + 1))
        index = {m: m - lo for m in labels}
        for m in range(lo + 1, hi + 1):
            edges.append(Edge(f"z{m}", index[m - 1], index[m], "c"))
        if family.kind == ZIGZAG:
            span = 2
            degenerate = k < 2
        else:
            span = 3
            degenerate = k < 3
        for m in range(lo + span, hi + 1):
            edges.append(Edge(f"h{m}", index[m - span], index[m], "h"))
        if family.kind == ENHANCED:
            for m in range(lo + 2, hi + 1):
                edges.append(Edge(f"g{m}", index[m - 2], index[m], "d"))

    return FiniteSegment(family, lo, hi, tuple(labels), tuple(edges), degenerate)


class _UnionFind:
    __slots__ = ("parent", "count")

    def __init__(self, n):
        self.parent = list(range(n))
        self.count = n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.count -= 1
        return True


def is_spanning_tree(segment, edge_labels):
    """True iff the labelled edges form a spanning tree of the segment."""
    emap = segment.edge_map()
    picked = []
    for lab in edge_labels:
        if lab not in emap:
            raise ValueError(f"edge {lab!r} not in segment")
        picked.append(emap[lab])
    if len(set(e.label for e in picked)) != len(picked):
        raise ValueError("duplicate edge labels")
    if len(picked) != segment.n_vertices - 1:
        return False
    uf = _UnionFind(segment.n_vertices)
    for e in picked:
        if not uf.union(e.u, e.v):
            return False
    return uf.count == 1


def is_connected(segment, edge_labels=None):
    """Connectivity of (V, chosen edges); all edges when labels is None."""
    uf = _UnionFind(segment.n_vertices)
    if edge_labels is None:
        for e in segment.edges:
            uf.union(e.u, e.v)
    else:
        emap = segment.edge_map()
        for lab in edge_labels:
            e = emap[lab]
            uf.union(e.u, e.v)
    return uf.count == 1
