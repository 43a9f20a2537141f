"""Boundary classes and transfer matrices for the ladder-like families.

Scanning a window left to right, a partial forest only matters through the
way its components touch the last few vertices: two boundary vertices for
the width-2 families (ladder, zigzag), three for the helix-type ones.
Grouping forests by that boundary pattern gives

* a growth matrix (one new vertex/column, any edge subset),
* a rung-growth matrix (same, but the new rung is forced in),
* a junction matrix gluing a left and a right half-window.

Counts, rung marginals, joint rung probabilities and their spectral
expansions all come from sandwiches of these matrices.  Everything exact
is done in WeightPoly or Fraction; spectral data is float/complex with
explicit residual checks.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .graphs import (
    ENHANCED,
    HELIX3,
    LADDER,
    ZIGZAG,
    GraphFamily,
    build_segment,
    is_spanning_tree,
    normalize_kind,
)
from .weights import C, D, ONE, ZERO, WeightPoly, poly_mat_eval, poly_vec_mat


def class_count(kind):
    """Number of boundary classes: 2 for width-2 families, 5 for helix-type."""
    return 2 if normalize_kind(kind) in (LADDER, ZIGZAG) else 5


def _k(n):
    return WeightPoly.const(n)


def growth_matrices(kind):
    """(growth, rung_growth, junction) as WeightPoly matrices.

    Rows index the class before the step, columns the class after; the
    junction matrix is symmetric.  These are frozen values; the
    regenerate_* functions below re-derive them from scratch.
    """
    kind = normalize_kind(kind)
    if kind == LADDER:
        growth = [[2 * C + 1, _k(2)], [C, ONE]]
        rung = [[2 * C, ZERO], [C, ZERO]]
        junction = [[_k(2), ONE], [ONE, ZERO]]
    elif kind == ZIGZAG:
        growth = [[C + 1, ONE], [C, ONE]]
        rung = [[C, ZERO], [C, ZERO]]
        junction = [[ONE, ONE], [ONE, ZERO]]
    else:
        growth = [
            [C + D + 1, ONE, ZERO, ZERO, ZERO],
            [C * (D + 1), ZERO, C, D + 1, ONE],
            [C + D, ONE, ZERO, ZERO, ZERO],
            [(C + 1) * D, ZERO, C + 1, D, ONE],
            [C * D, ZERO, C, D, ONE],
        ]
        rung = [
            [C, ZERO, ZERO, ZERO, ZERO],
            [C * (D + 1), ZERO, C, ZERO, ZERO],
            [C, ZERO, ZERO, ZERO, ZERO],
            [C * D, ZERO, C, ZERO, ZERO],
            [C * D, ZERO, C, ZERO, ZERO],
        ]
        junction = [
            [ONE, D + 2, ONE, D + 1, D + 1],
            [D + 2, ZERO, D + 1, D + 1, ZERO],
            [ONE, D + 1, ONE, D, D],
            [D + 1, D + 1, D, 2 * D + 1, D],
            [D + 1, ZERO, D, D, ZERO],
        ]
        if kind == HELIX3:
            growth = [[_drop_d(p) for p in row] for row in growth]
            rung = [[_drop_d(p) for p in row] for row in rung]
            junction = [[_drop_d(p) for p in row] for row in junction]
    return growth, rung, junction


def _drop_d(poly):
    """Substitute d = 0 into a WeightPoly."""
    return WeightPoly({(i, 0): v for (i, j), v in poly.coeffs.items() if j == 0})


def _seed(kind):
    """Honest class vector of the smallest usable window, and its size.

    The ladder seed covers zero columns, the zigzag seed one vertex, the
    helix-type seed the two-vertex window (rung sitting in class 3, since
    only one of the three boundary slots is a real separation there).
    """
    kind = normalize_kind(kind)
    if kind == LADDER:
        return [ZERO, ONE], 0
    if kind == ZIGZAG:
        return [ZERO, ONE], 1
    return [ZERO, ZERO, C, ZERO, ONE], 2


# ---------------------------------------------------------------------------
# boundary classification and brute-force regeneration

def _boundary_vertices(segment, side):
    kind = segment.family.kind
    n = segment.n_vertices
    if kind == LADDER:
        if side == "hi":
            return (n - 2, n - 1)        # (0, hi) then (1, hi)
        return (0, 1)
    if kind == ZIGZAG:
        return (n - 1, n - 2) if side == "hi" else (0, 1)
    # helix-type: (outer, mid, inner) relative to the open end
    if segment.n_vertices < 3:
        raise ValueError("helix-type boundary needs at least three vertices")
    return (n - 1, n - 2, n - 3) if side == "hi" else (0, 1, 2)


def boundary_class(segment, edge_labels, side="hi"):
    """1-based class of a partial forest, or None if it is a dead end.

    Classes for the width-2 families: 1 = spanning tree, 2 = two
    components separating the boundary pair.  For the helix-type families
    (boundary = last three vertices, outer/mid/inner): 1 = spanning tree,
    2/3/4 = two components with outer/inner/mid alone, 5 = all three
    boundary vertices in distinct components.  Any component that misses
    the boundary can never reconnect, hence None.
    """
    n = segment.n_vertices
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    emap = segment.edge_map()
    comps = n
    for lab in edge_labels:
        e = emap[lab]
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return None                  # cycle: not a forest
        parent[ru] = rv
        comps -= 1

    bverts = _boundary_vertices(segment, side)
    broots = [find(v) for v in bverts]
    if comps > len(set(broots)):
        return None                      # some component misses the boundary

    if comps == 1:
        return 1
    if len(bverts) == 2:
        return 2 if broots[0] != broots[1] else None
    outer, mid, inner = broots
    if comps == 3:
        return 5
    # two components: which boundary vertex sits alone?
    if mid == inner and outer != mid:
        return 2
    if outer == mid and inner != mid:
        return 3
    if outer == inner and mid != outer:
        return 4
    return None                          # all three together but comps == 2


def _symbolic_family(kind):
    kind = normalize_kind(kind)
    return GraphFamily(kind, c=None, d=None if kind == ENHANCED else 0)


def _forest_reps(segment, side, cap=None):
    """All edge subsets of the segment grouped by boundary class."""
    labels = [e.label for e in segment.edges]
    reps = {}
    for bits in range(1 << len(labels)):
        chosen = frozenset(lab for i, lab in enumerate(labels) if bits >> i & 1)
        cls = boundary_class(segment, chosen, side=side)
        if cls is None:
            continue
        bucket = reps.setdefault(cls, [])
        if cap is None or len(bucket) < cap:
            bucket.append(chosen)
    return reps


def regenerate_growth_matrices(kind):
    """Re-derive (growth, rung_growth) by exhaustive extension.

    Every forest on a base window is extended by one vertex/column in all
    2^k edge subsets and the outcome tallied per class.  Raises if two
    representatives of the same class ever disagree, so this doubles as a
    proof that the boundary classes are a sufficient statistic.
    """
    kind = normalize_kind(kind)
    fam = _symbolic_family(kind)
    n0 = 3 if kind in (LADDER, ZIGZAG) else 4
    base = build_segment(fam, 0, n0)
    ext = build_segment(fam, 0, n0 + 1)
    base_labels = set(e.label for e in base.edges)
    new = [e for e in ext.edges if e.label not in base_labels]

    size = class_count(kind)
    reps = _forest_reps(base, "hi")
    if sorted(reps) != list(range(1, size + 1)):
        raise ArithmeticError(f"base window missed classes: have {sorted(reps)}")

    growth = [None] * size
    rung = [None] * size
    for cls, forests in reps.items():
        seen = None
        for t in forests:
            grow_row = [ZERO] * size
            rung_row = [ZERO] * size
            for bits in range(1 << len(new)):
                extra = [new[i] for i in range(len(new)) if bits >> i & 1]
                target = boundary_class(
                    ext, t | set(e.label for e in extra), side="hi")
                if target is None:
                    continue
                w = ONE
                for e in extra:
                    w = w * ext.edge_weight_poly(e)
                grow_row[target - 1] = grow_row[target - 1] + w
                if any(e.wkind == "c" for e in extra):
                    rung_row[target - 1] = rung_row[target - 1] + w
            if seen is None:
                seen = (grow_row, rung_row)
            elif seen != (grow_row, rung_row):
                raise ArithmeticError(
                    f"class {cls} of {kind} is not a sufficient statistic")
        growth[cls - 1], rung[cls - 1] = seen
    return growth, rung


def regenerate_junction_matrix(kind, cap=6):
    """Re-derive the junction matrix by gluing half-windows exhaustively.

    The helix-type halves share their meeting vertex; the ladder halves
    sit in adjacent columns.  Entry (i, j) sums the weights of crossing
    edge subsets whose union with class-i and class-j forests is a
    spanning tree; representative independence is asserted (capped at
    `cap` representatives per class to stay fast).
    """
    kind = normalize_kind(kind)
    fam = _symbolic_family(kind)
    if kind == LADDER:
        left = build_segment(fam, 0, 2)
        right = build_segment(fam, 3, 5)
        full = build_segment(fam, 0, 5)
    elif kind == ZIGZAG:
        left = build_segment(fam, -3, 0)
        right = build_segment(fam, 0, 3)
        full = build_segment(fam, -3, 3)
    else:
        left = build_segment(fam, -4, 0)
        right = build_segment(fam, 0, 4)
        full = build_segment(fam, -4, 4)

    inner = set(e.label for e in left.edges) | set(e.label for e in right.edges)
    crossing = [e for e in full.edges if e.label not in inner]
    expected = {LADDER: 2, ZIGZAG: 1, HELIX3: 2, ENHANCED: 3}[kind]
    if len(crossing) != expected:
        raise ArithmeticError(f"unexpected crossing edges {crossing}")

    size = class_count(kind)
    lreps = _forest_reps(left, "hi", cap=cap)
    rreps = _forest_reps(right, "lo", cap=cap)
    if sorted(lreps) != list(range(1, size + 1)) or sorted(rreps) != sorted(lreps):
        raise ArithmeticError("half-windows missed some classes")

    junction = [[None] * size for _ in range(size)]
    for i, lts in lreps.items():
        for j, rts in rreps.items():
            seen = None
            for lt in lts:
                for rt in rts:
                    cell = ZERO
                    for bits in range(1 << len(crossing)):
                        extra = [crossing[b] for b in range(len(crossing))
                                 if bits >> b & 1]
                        union = lt | rt | set(e.label for e in extra)
                        if is_spanning_tree(full, union):
                            w = ONE
                            for e in extra:
                                w = w * full.edge_weight_poly(e)
                            cell = cell + w
                    if seen is None:
                        seen = cell
                    elif seen != cell:
                        raise ArithmeticError(
                            f"junction entry ({i},{j}) of {kind} is rep-dependent")
            junction[i - 1][j - 1] = seen
    return junction


# ---------------------------------------------------------------------------
# exact counting

def count_poly(kind, n):
    """Spanning-tree weight of an n-column/n-vertex window as a WeightPoly.

    n counts columns for the ladder and vertices for the other families.
    Windows smaller than the transfer seed are enumerated directly.
    """
    kind = normalize_kind(kind)
    if n < 1:
        raise ValueError(f"window must have at least one column/vertex, got {n}")
    seed, covered = _seed(kind)
    if n <= covered:
        from .oracle import weighted_count
        return weighted_count(build_segment(_symbolic_family(kind), 1, n))
    growth, _, _ = growth_matrices(kind)
    vec = seed
    for _ in range(n - covered):
        vec = poly_vec_mat(vec, growth)
    return vec[0]


def count_value(family, n):
    """Exact weighted spanning-tree count of an n-window, as a Fraction."""
    if family.symbolic:
        raise ValueError("count_value needs numeric weights; use count_poly")
    if n < 1:
        raise ValueError(f"window must have at least one column/vertex, got {n}")
    cq, dq = Fraction(family.c), Fraction(family.d)
    seed, covered = _seed(family.kind)
    if n <= covered:
        from .oracle import matrix_tree_count
        exact = GraphFamily(family.kind, cq, dq if family.kind == ENHANCED else 0)
        return matrix_tree_count(build_segment(exact, 1, n))
    growth, _, _ = growth_matrices(family.kind)
    gm = poly_mat_eval(growth, cq, dq)
    vec = [p.evaluate(cq, dq) for p in seed]
    size = len(vec)
    for _ in range(n - covered):
        vec = [sum(vec[i] * gm[i][j] for i in range(size)) for j in range(size)]
    return vec[0]


def count_by_recursion(family, n):
    """Window count via the boundary-class recursion, as a Fraction.

    Seeds the recursion with the empty boundary (only the all-separate
    class populated) and applies the growth matrix once per column or
    vertex.  Windows too small to carry a full boundary come out as 0
    under this bookkeeping even though their literal spanning-tree count
    (count_value) is positive: the two routes agree for n >= 1 on the
    ladder, n >= 2 on the zigzag and n >= 3 on the helix-3 line.  The
    closed forms follow this convention.

    Only defined for d = 0: a positive chord weight lets the phantom
    boundary vertices of the seed carry real weight, so the recursion
    never meets the literal counts.
    """
    if family.symbolic:
        raise ValueError("count_by_recursion needs numeric weights")
    if family.d != 0:
        raise ValueError("the empty-boundary recursion needs d = 0; "
                         "use count_value for weighted-chord windows")
    if n < 1:
        raise ValueError(f"window must have at least one column/vertex, got {n}")
    cq, dq = Fraction(family.c), Fraction(family.d)
    growth, _, _ = growth_matrices(family.kind)
    gm = poly_mat_eval(growth, cq, dq)
    size = len(gm)
    vec = [Fraction(0)] * (size - 1) + [Fraction(1)]
    covered = 0 if family.kind == LADDER else 1
    for _ in range(n - covered):
        vec = [sum(vec[i] * gm[i][j] for i in range(size)) for j in range(size)]
    return vec[0]


def count_closed_form(family, n):
    """Eigenvalue closed form for the window count, as a float.

    Supported: ladder (any c, n >= 1), zigzag (any c, n >= 2), helix3 at
    c = 1 (n >= 3).  The enhanced family has no published closed form;
    use TransferSystem.count_spectral for a numeric spectral sum.
    """
    kind = family.kind
    c = float(family.c)
    if kind == LADDER:
        if n < 1:
            raise ValueError("ladder closed form needs n >= 1")
        a = c + 1.0 - math.sqrt(c * c + 2.0 * c)
        return 0.5 * (1.0 - a) / (1.0 + a) * (a ** (-n) - a ** n)
    if kind == ZIGZAG:
        if n < 2:
            raise ValueError("zigzag closed form needs n >= 2")
        a = 1.0 + c / 2.0 - math.sqrt(4.0 * c + c * c) / 2.0
        return (1.0 - a) / (1.0 + a) * (a ** (1 - n) - a ** (n - 1))
    if kind == HELIX3:
        if family.c != 1:
            raise ValueError("helix3 closed form is only known at c = 1")
        if n < 1:
            raise ValueError("helix3 closed form needs n >= 1")
        # n = 1, 2 evaluate to 0: the formula follows the boundary-class
        # recursion (count_by_recursion), not the literal window count
        g = (1.0 + math.sqrt(5.0)) / 2.0
        rt5 = math.sqrt(5.0)
        sg = math.sqrt(g)
        lam1 = g + sg
        lam3 = g - sg
        lam4 = complex(-1.0 / g, 1.0 / sg)
        c4 = complex(-g ** -2, -g ** -1.5) / (4.0 * rt5)
        total = (
            (g * g - g ** 1.5) / (4.0 * rt5) * lam1 ** n
            - 0.5
            + (g * g + g ** 1.5) / (4.0 * rt5) * lam3 ** n
            + c4 * lam4 ** n
            + c4.conjugate() * lam4.conjugate() ** n
        )
        if abs(total.imag) > 1e-8 * max(1.0, abs(total.real)):
            raise ArithmeticError("closed form failed to cancel imaginary parts")
        return total.real
    raise ValueError(f"no closed-form count for family {kind!r}")


def charpoly_coefficients(family):
    """Exact characteristic polynomial of the growth matrix.

    Returns [1, a_1, ..., a_s] with det(xI - growth) = sum a_i x^(s-i);
    window counts satisfy the corresponding linear recurrence.
    """
    if family.symbolic:
        raise ValueError("charpoly needs numeric weights")
    growth, _, _ = growth_matrices(family.kind)
    m = poly_mat_eval(growth, Fraction(family.c), Fraction(family.d))
    s = len(m)
    # Faddeev-LeVerrier
    coeffs = [Fraction(1)]
    work = [[Fraction(0)] * s for _ in range(s)]
    for k in range(1, s + 1):
        for i in range(s):
            work[i][i] += coeffs[-1]
        work = [[sum(m[i][t] * work[t][j] for t in range(s)) for j in range(s)]
                for i in range(s)]
        coeffs.append(-sum(work[i][i] for i in range(s)) / k)
    return coeffs


# ---------------------------------------------------------------------------
# spectral layer

def _width2_alpha(kind, c):
    if kind == LADDER:
        return c + 1.0 - math.sqrt(c * c + 2.0 * c)
    return 1.0 + c / 2.0 - math.sqrt(4.0 * c + c * c) / 2.0


def _inner_roots(c, d):
    """The two roots of x^4+(d+2)x^3+(c+2d+3)x^2+(d+2)x+1 inside |x| < 1.

    Computed from the companion matrix and Newton-polished; the nested
    radical expressions are checked against the full root set so a branch
    slip in either route raises instead of propagating.
    """
    quartic = [1.0, d + 2.0, c + 2.0 * d + 3.0, d + 2.0, 1.0]

    def f(x):
        return (((x + quartic[1]) * x + quartic[2]) * x + quartic[3]) * x + quartic[4]

    def fp(x):
        return ((4.0 * x + 3.0 * quartic[1]) * x + 2.0 * quartic[2]) * x + quartic[3]

    roots = []
    for z in np.roots(quartic):
        z = complex(z)
        for _ in range(4):
            d1 = fp(z)
            if d1 == 0:
                break
            z = z - f(z) / d1
        roots.append(z)

    # radical form: x = (u +/- sqrt(u^2-16))/4, u = -d-2 +/- sqrt(d^2-4d-4c)
    disc = cmath.sqrt(d * d - 4.0 * d - 4.0 * c)
    radical = []
    for s1 in (1.0, -1.0):
        u = -d - 2.0 + s1 * disc
        r = cmath.sqrt(u * u - 16.0)
        radical.extend([(u + r) / 4.0, (u - r) / 4.0])
    for z in radical:
        if min(abs(z - w) for w in roots) > 1e-8 * max(1.0, abs(z)):
            raise ArithmeticError("radical root formula disagrees with companion matrix")

    inner = [z for z in roots if abs(z) < 1.0]
    if len(inner) != 2:
        raise ArithmeticError(f"expected two roots in the unit disk, got {inner}")
    inner.sort(key=lambda z: (-z.imag, -z.real))
    return inner[0], inner[1]


class TransferSystem:
    """Numeric transfer-matrix system for one family: spectra and rung laws.

    Eigenvalues are kept in the conventional order (Perron root first,
    then 1 and the decaying pair(s) for the helix-type families); left
    eigenvectors are normalized to last coordinate 1 and verified to
    residual ~1e-9.
    """

    def __init__(self, family):
        if not isinstance(family, GraphFamily):
            family = GraphFamily(family)
        if family.symbolic:
            raise ValueError("TransferSystem needs numeric weights")
        if family.c == math.inf:
            raise ValueError("TransferSystem needs a finite rung weight")
        self.family = family
        kind = family.kind
        self.size = class_count(kind)

        gp, rp, jp = growth_matrices(kind)
        cq, dq = Fraction(family.c), Fraction(family.d)
        self.growth_exact = poly_mat_eval(gp, cq, dq)
        self.rung_growth_exact = poly_mat_eval(rp, cq, dq)
        self.junction_exact = poly_mat_eval(jp, cq, dq)
        self.growth = np.array(self.growth_exact, dtype=float)
        self.rung_growth = np.array(self.rung_growth_exact, dtype=float)
        self.junction = np.array(self.junction_exact, dtype=float)

        c, d = float(family.c), float(family.d)
        if self.size == 2:
            a = _width2_alpha(kind, c)
            self.decay_root = a
            self.inner_roots = None
            lam = [1.0 / a, a]
            if kind == LADDER:
                vecs = [[(1.0 / a - 1.0) / 2.0, 1.0], [(a - 1.0) / 2.0, 1.0]]
            else:
                vecs = [[1.0 / a - 1.0, 1.0], [a - 1.0, 1.0]]
            self.eigenvalues = np.array(lam, dtype=complex)
            self.left_vectors = np.array(vecs, dtype=complex)
        else:
            x1, x2 = _inner_roots(c, d)
            self.decay_root = None
            self.inner_roots = (x1, x2)
            prod = x1 * x2
            if abs(prod.imag) > 1e-10 * abs(prod):
                raise ArithmeticError("inner root product should be real")
            lam = [1.0 / prod.real, 1.0, prod.real, x2 / x1, x1 / x2]
            self.eigenvalues = np.array(lam, dtype=complex)
            self.left_vectors = np.array(
                [self._left_vector(z) for z in lam], dtype=complex)

        self._check_spectrum()
        self.perron = self.eigenvalues[0].real
        w1 = self.left_vectors[0]
        if np.max(np.abs(w1.imag)) > 1e-10 * np.max(np.abs(w1.real)):
            raise ArithmeticError("Perron left vector should be real")
        self.perron_left = w1.real.copy()
        if np.min(self.perron_left) <= 0:
            raise ArithmeticError("Perron left vector should be positive")
        self.perron_right = self.junction @ self.perron_left
        self.junction_norm = float(self.perron_left @ self.perron_right)
        self._avec_cache = {}

    def _left_vector(self, lam):
        m = self.growth.astype(complex)
        _, _, vh = np.linalg.svd(m.T - lam * np.eye(self.size))
        w = vh[-1].conj()
        if abs(w[-1]) < 1e-12:
            raise ArithmeticError("left eigenvector has vanishing last coordinate")
        return w / w[-1]

    def _check_spectrum(self):
        m = self.growth.astype(complex)
        for lam, w in zip(self.eigenvalues, self.left_vectors):
            res = np.max(np.abs(w @ m - lam * w))
            if res > 1e-9 * (1.0 + abs(lam)) * np.max(np.abs(w)):
                raise ArithmeticError(f"left eigenpair residual {res:.2e} at {lam}")
        # the right Perron vector is junction @ perron_left (intertwining)
        v = self.junction.astype(complex) @ self.left_vectors[0]
        res = np.max(np.abs(m @ v - self.eigenvalues[0] * v))
        if res > 1e-9 * abs(self.eigenvalues[0]) * np.max(np.abs(v)):
            raise ArithmeticError("junction does not intertwine the Perron pair")

    # -- spectra ---------------------------------------------------------

    @property
    def lambda_tilde(self):
        """Eigenvalue ratios to the Perron root, Perron entry first (= 1)."""
        return self.eigenvalues / self.eigenvalues[0]

    def _coefficient_basis(self):
        lam = self.eigenvalues
        span = min(abs(lam[i] - lam[j])
                   for i in range(self.size) for j in range(i + 1, self.size))
        if span < 1e-8 * abs(lam[0]):
            raise ArithmeticError("confluent spectrum; expansions unavailable")
        return np.linalg.inv(self.left_vectors)

    def count_spectral(self, n):
        """Window count as a spectral sum; matches count_value to rounding."""
        seed, covered = _seed(self.family.kind)
        if n < max(covered, 1):
            raise ValueError(f"spectral count needs n >= {max(covered, 1)}")
        sv = np.array(
            [p.evaluate(float(self.family.c), float(self.family.d)) for p in seed],
            dtype=complex)
        winv = self._coefficient_basis()
        coeff = sv @ winv
        total = complex(0.0)
        for j in range(self.size):
            total += coeff[j] * self.eigenvalues[j] ** (n - covered) \
                * self.left_vectors[j][0]
        if abs(total.imag) > 1e-8 * max(1.0, abs(total.real)):
            raise ArithmeticError("spectral count failed to cancel imaginary parts")
        return total.real

    # -- infinite-volume rung statistics ----------------------------------

    def rung_marginal(self):
        """P[a fixed rung is in the tree] in the infinite-volume limit."""
        w1, v = self.perron_left, self.perron_right
        return float(w1 @ self.rung_growth @ v) / (self.perron * self.junction_norm)

    def joint_rung_probability(self, positions):
        """P[every listed rung is in the tree]; positions are integers.

        Translation invariant, so only the gaps matter.  Scaled matrix
        powers keep this stable out to separations in the thousands.
        """
        ms = sorted(set(int(m) for m in positions))
        if not ms:
            return 1.0
        scaled_growth = self.growth / self.perron
        scaled_rung = self.rung_growth / self.perron
        vec = self.perron_left @ scaled_rung
        for prev, cur in zip(ms, ms[1:]):
            gap = cur - prev
            vec = vec @ np.linalg.matrix_power(scaled_growth, gap - 1) @ scaled_rung
        return float(vec @ self.perron_right) / self.junction_norm

    def isolated_pair_probability(self, m):
        """P[rungs at 0 and m are in the tree and none strictly between]."""
        m = int(m)
        if m < 1:
            raise ValueError("need m >= 1")
        scaled_bare = (self.growth - self.rung_growth) / self.perron
        scaled_rung = self.rung_growth / self.perron
        vec = self.perron_left @ scaled_rung
        vec = vec @ np.linalg.matrix_power(scaled_bare, m - 1) @ scaled_rung
        return float(vec @ self.perron_right) / self.junction_norm

    def pair_coefficients(self):
        """(ratios, coefficients) with P[z_0, z_m] = sum_j coeff_j ratio_j^m.

        Exact for every m >= 1; the j = 0 term is the squared marginal.
        """
        winv = self._coefficient_basis()
        w1 = self.perron_left.astype(complex)
        front = w1 @ self.rung_growth
        mu = front @ winv
        tail = self.left_vectors @ self.junction @ front
        coeff = mu * tail / (self.perron * self.eigenvalues * self.junction_norm)
        return self.lambda_tilde.copy(), coeff

    def triple_coefficients(self, k):
        """Coefficients for P[z_0, z_k, z_{k+m}] as sum_j c_j ratio_j^m."""
        k = int(k)
        if k < 1:
            raise ValueError("need k >= 1")
        winv = self._coefficient_basis()
        w1 = self.perron_left.astype(complex)
        front = w1 @ self.rung_growth
        scaled_growth = (self.growth / self.perron).astype(complex)
        nu = (front @ np.linalg.matrix_power(scaled_growth, k - 1)
              @ self.rung_growth) @ winv
        tail = self.left_vectors @ self.junction @ front
        coeff = nu * tail / (self.perron ** 2 * self.eigenvalues
                             * self.junction_norm)
        return self.lambda_tilde.copy(), coeff

    # -- boundary-class chain ---------------------------------------------

    def class_stationary(self):
        """Stationary law of the boundary class seen at a window cut."""
        pi = self.perron_left * self.perron_right
        return pi / pi.sum()

    def class_transition(self):
        """Stochastic matrix of the class process (growth's Doob transform)."""
        v = self.perron_right
        return self.growth * v[None, :] / (self.perron * v[:, None])

    # -- exact finite windows ----------------------------------------------

    def _avec(self, p):
        """Exact class vector of a p-column/p-vertex window (p >= seed size)."""
        if p in self._avec_cache:
            return self._avec_cache[p]
        seed, covered = _seed(self.family.kind)
        if p < covered:
            raise ValueError(f"window part too small: {p} < {covered}")
        cq, dq = Fraction(self.family.c), Fraction(self.family.d)
        vec = [poly.evaluate(cq, dq) for poly in seed]
        gm = self.growth_exact
        size = self.size
        for _ in range(p - covered):
            vec = [sum(vec[i] * gm[i][j] for i in range(size)) for j in range(size)]
        self._avec_cache[p] = vec
        return vec

    def window_count(self, lo, hi):
        """Exact spanning-tree weight of the window [lo, hi]."""
        return count_value(self.family, hi - lo + 1)

    def window_rung_probability(self, lo, hi, rungs):
        """Exact P[given rungs all in the tree] on the finite window [lo, hi].

        Rung m means the rung entering vertex/column m.  The sandwich
        needs room on both sides: for the helix-type families the first
        rung must sit at >= lo+2 and the last at <= hi-2 (the junction's
        crossing edges must fit in the window); zigzag needs lo+1/hi-1;
        the ladder only needs lo <= m <= hi.
        """
        kind = self.family.kind
        ms = sorted(set(int(m) for m in rungs))
        if not ms:
            return Fraction(1)
        if kind == LADDER:
            left_pad, right_pad, shared = 0, 0, 0
        elif kind == ZIGZAG:
            left_pad, right_pad, shared = 1, 1, 1
        else:
            left_pad, right_pad, shared = 2, 2, 1
        if ms[0] < lo + left_pad or ms[-1] > hi - right_pad:
            raise ValueError(
                f"rungs {ms} leave no room for the junction in [{lo}, {hi}]")

        gm, rm, jm = self.growth_exact, self.rung_growth_exact, self.junction_exact
        size = self.size

        def times(vec, mat):
            return [sum(vec[i] * mat[i][j] for i in range(size)) for j in range(size)]

        vec = self._avec(ms[0] - lo)
        vec = times(vec, rm)
        for prev, cur in zip(ms, ms[1:]):
            for _ in range(cur - prev - 1):
                vec = times(vec, gm)
            vec = times(vec, rm)
        right = self._avec(hi - ms[-1] + shared)
        glued = times(vec, jm)
        num = sum(glued[j] * right[j] for j in range(size))
        return num / self.window_count(lo, hi)

    def window_rung_marginal(self, n):
        """Exact P[z_0 in the tree] on the symmetric window [-n, n]."""
        return self.window_rung_probability(-n, n, [0])


def build_transfer(family, c=None, d=None):
    """TransferSystem from a GraphFamily or a kind name plus weights."""
    if isinstance(family, GraphFamily):
        return TransferSystem(family)
    kind = normalize_kind(family)
    if c is None:
        c = 1
    if d is None:
        d = 0
    return TransferSystem(GraphFamily(kind, c, d))
