"""Slow-but-sure reference algorithms on finite segments.

Everything here is independent of the transfer-matrix layer so the two can
be checked against each other: exhaustive tree enumeration, the weighted
matrix-tree determinant (exact, fraction-free), and Wilson's loop-erased
random walk sampler.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .weights import WeightPoly


def enumerate_trees(segment, max_edges=26):
    """Yield every spanning tree as a sorted tuple of edge labels.

    Exhaustive over C(E, V-1) subsets, so refuses large segments.
    """
    n = segment.n_vertices
    edges = segment.edges
    if len(edges) > max_edges:
        raise ValueError(
            f"segment has {len(edges)} edges; enumeration capped at {max_edges}")
    if n == 1:
        yield ()
        return
    us = [e.u for e in edges]
    vs = [e.v for e in edges]
    labels = [e.label for e in edges]
    for combo in combinations(range(len(edges)), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        comps = n
        for i in combo:
            ra, rb = find(us[i]), find(vs[i])
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
            comps -= 1
        if ok and comps == 1:
            yield tuple(sorted(labels[i] for i in combo))


def tree_weight_poly(segment, labels):
    emap = segment.edge_map()
    a = sum(1 for lab in labels if emap[lab].wkind == "c")
    b = sum(1 for lab in labels if emap[lab].wkind == "d")
    return WeightPoly({(a, b): 1})


def weighted_count(segment, max_edges=26):
    """Total tree weight as an exact polynomial in the rung/chord weights.

    A tree's weight is c^a * d^b where a rungs and b extra chords were
    used, so it suffices to count trees per (a, b) pair.
    """
    counts = {}
    emap = segment.edge_map()
    kinds = {lab: e.wkind for lab, e in emap.items()}
    for tree in enumerate_trees(segment, max_edges=max_edges):
        a = sum(1 for lab in tree if kinds[lab] == "c")
        b = sum(1 for lab in tree if kinds[lab] == "d")
        key = (a, b)
        counts[key] = counts.get(key, 0) + 1
    return WeightPoly(counts)


def _bareiss_det(mat):
    """Exact determinant of a square integer matrix (fraction-free)."""
    a = [row[:] for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _exact_weight(family, edge):
    w = family.weight_of(edge.wkind)
    if isinstance(w, float):
        w = Fraction(w).limit_denominator(10**12)
    return Fraction(w)


def _kirchhoff(n, edges_uvw):
    """Weighted tree count of a multigraph given as (u, v, Fraction) triples.

    Denominators are cleared so a fraction-free elimination can run over
    plain ints; parallel edges simply add up in the Laplacian.
    """
    if n == 1:
        return Fraction(1)
    weights = [w for _, _, w in edges_uvw]
    scale = math.lcm(*(w.denominator for w in weights)) if weights else 1

    # reduced Laplacian with vertex 0 removed
    m = [[0] * (n - 1) for _ in range(n - 1)]
    for (u, v, w), _ in zip(edges_uvw, weights):
        iw = int(w * scale)
        if u > 0:
            m[u - 1][u - 1] += iw
        if v > 0:
            m[v - 1][v - 1] += iw
        if u > 0 and v > 0:
            m[u - 1][v - 1] -= iw
            m[v - 1][u - 1] -= iw
    det = _bareiss_det(m)
    return Fraction(det, scale ** (n - 1))


def matrix_tree_count(segment):
    """Weighted spanning-tree count via the Kirchhoff determinant.

    Exact for integer or Fraction weights; symbolic segments should use
    weighted_count instead.
    """
    fam = segment.family
    if fam.symbolic:
        raise ValueError("matrix-tree determinant needs numeric weights")
    triples = [(e.u, e.v, _exact_weight(fam, e)) for e in segment.edges]
    return _kirchhoff(segment.n_vertices, triples)


def forced_edge_count(segment, forced_labels):
    """Total weight of spanning trees that contain every listed edge.

    Contracts the forced edges (exact weight factored out) and runs the
    Kirchhoff count on the quotient multigraph, so it stays exact and
    works on windows far too large to enumerate.
    """
    fam = segment.family
    if fam.symbolic:
        raise ValueError("matrix-tree determinant needs numeric weights")
    emap = segment.edge_map()
    forced = [emap[lab] for lab in forced_labels]
    if len(set(e.label for e in forced)) != len(forced):
        raise ValueError("duplicate forced edges")

    n = segment.n_vertices
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    factor = Fraction(1)
    for e in forced:
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return Fraction(0)       # forced edges close a cycle
        parent[ru] = rv
        factor *= _exact_weight(fam, e)

    roots = sorted(set(find(v) for v in range(n)))
    dense = {r: i for i, r in enumerate(roots)}
    forced_set = set(e.label for e in forced)
    triples = []
    for e in segment.edges:
        if e.label in forced_set:
            continue
        qu, qv = dense[find(e.u)], dense[find(e.v)]
        if qu != qv:                 # self-loops never sit in a tree
            triples.append((qu, qv, _exact_weight(fam, e)))
    return factor * _kirchhoff(len(roots), triples)


def wilson_sample(segment, rng):
    """One weighted uniform spanning tree via loop-erased random walks.

    Edge e is picked with probability proportional to its weight in the
    usual random-walk sense; the resulting tree law is weight(T)/Z.
    Returns a sorted tuple of edge labels.
    """
    fam = segment.family
    if fam.symbolic:
        raise ValueError("sampling needs numeric weights")
    n = segment.n_vertices
    adj = [[] for _ in range(n)]
    for e in segment.edges:
        w = float(fam.weight_of(e.wkind))
        adj[e.u].append((e.v, w, e.label))
        adj[e.v].append((e.u, w, e.label))
    totals = [sum(w for _, w, _ in nbrs) for nbrs in adj]

    in_tree = [False] * n
    in_tree[0] = True
    next_hop = [None] * n        # vertex -> (next vertex, edge label)
    for start in range(1, n):
        if in_tree[start]:
            continue
        u = start
        while not in_tree[u]:
            x = rng.random() * totals[u]
            acc = 0.0
            for v, w, lab in adj[u]:
                acc += w
                if x < acc:
                    next_hop[u] = (v, lab)
                    break
            else:
                v, w, lab = adj[u][-1]
                next_hop[u] = (v, lab)
            u = next_hop[u][0]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = next_hop[u][0]
    # every non-root vertex ends with next_hop = its parent edge in the tree
    return tuple(sorted(next_hop[v][1] for v in range(1, n)))
