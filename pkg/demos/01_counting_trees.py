"""
Counting spanning trees four different ways
===========================================

Every window count in this package can be produced by four independent
routes: brute-force enumeration, the weighted matrix-tree determinant,
the transfer-matrix product, and (where one exists) a spectral closed
form.  This script walks through all of them on small windows where the
numbers are easy to eyeball.
"""

from fractions import Fraction

from laddertrees import (ENHANCED, HELIX3, LADDER, GraphFamily,
                         build_segment, count_by_recursion,
                         count_closed_form, count_poly, count_value,
                         enumerate_trees, matrix_tree_count,
                         weighted_count)

##############################################################################
# Brute force on a short ladder
# -----------------------------
# A ladder window over columns 0..3 has 8 vertices and 10 edges.  With the
# rung weight c = 1 every spanning tree weighs the same, so the weighted
# count is just the number of trees.

fam = GraphFamily(LADDER, c=1)
seg = build_segment(fam, 0, 3)
trees = list(enumerate_trees(seg))
print(f"ladder window 0..3: {seg.n_vertices} vertices, {seg.n_edges} edges")
print(f"spanning trees found by enumeration: {len(trees)}")
print(f"first few: {trees[:2]}")

##############################################################################
# The matrix-tree theorem gives the same number as one determinant of the
# reduced Laplacian, computed in exact rational arithmetic.

print(f"matrix-tree determinant:            {matrix_tree_count(seg)}")
print(f"transfer-matrix value:              {count_value(fam, 4)}")

##############################################################################
# Weighted counting
# -----------------
# With a fractional rung weight each tree contributes the product of its
# edge weights.  Everything stays an exact Fraction.

half = GraphFamily(LADDER, c=Fraction(1, 2))
seg_half = build_segment(half, 0, 2)
total = weighted_count(seg_half)          # polynomial in (c, d)
print(f"\ntree-weight polynomial on 0..2:  {total}")
print(f"  ... at c=1/2:                  {total.evaluate(half.c)}")

# Keeping the weights symbolic instead gives the count as a polynomial in
# the rung weight c (and the chord weight d for the enhanced family).
poly = count_poly(LADDER, 3)
print(f"symbolic 3-column ladder count:  {poly.coeffs}")
print(f"  ... evaluated at c=1/2:        {poly.evaluate(Fraction(1, 2))}")
print(f"  ... evaluated at c=1:          {poly.evaluate(1)}")

enh = count_poly(ENHANCED, 4)
print(f"enhanced 4-column count at (c,d)=(1,2): {enh.evaluate(1, 2)}")

##############################################################################
# Recursions and closed forms
# ---------------------------
# The scalar recursion route reproduces the transfer counts but runs in
# integer arithmetic, so it is the way to get huge exact values.  Note the
# bookkeeping convention: the recursion seeds count windows *with a full
# boundary*, so the first couple of terms are 0 even though a tiny window
# literally has at least one spanning tree.

h3 = GraphFamily(HELIX3, c=1)
print("\nhelix3 counts, recursion vs literal window count:")
for n in range(1, 9):
    rec, lit = count_by_recursion(h3, n), count_value(h3, n)
    print(f"  n={n}: recursion {str(rec):>5}   literal {str(lit):>5}")

big = count_by_recursion(h3, 40)
print(f"helix3 n=40 (exact integer): {big}")

# The closed form tracks the recursion to double precision ...
for n in (5, 10, 20):
    cf = count_closed_form(h3, n)
    ex = count_by_recursion(h3, n)
    print(f"  closed form n={n}: {cf:.6f}  (exact {ex},"
          f" rel err {abs(cf - ex) / ex:.2e})")

# ... and its leading eigenvalue tells you the growth rate per column.
r10 = float(count_by_recursion(h3, 11) / count_by_recursion(h3, 10))
r30 = float(count_by_recursion(h3, 31) / count_by_recursion(h3, 30))
print(f"count ratio a(n+1)/a(n): {r10:.10f} (n=10) -> {r30:.10f} (n=30)")
