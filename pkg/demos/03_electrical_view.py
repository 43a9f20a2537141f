"""
Spanning trees through an electrical lens
=========================================

Kirchhoff's theorem says P[edge in the uniform spanning tree] equals the
edge weight times the effective resistance across it.  On the infinite
width-2 families the resistance solves a fixed-point equation with an
explicit solution, and the resulting currents reproduce the kernel
entries.  This script checks all of that numerically and, on finite
windows, exactly.
"""

import math
from fractions import Fraction

from laddertrees import (LADDER, ZIGZAG, GraphFamily, build_kernel,
                         build_segment, effective_resistance,
                         finite_window_current, finite_window_resistance,
                         forced_edge_count, kernel_entry, kirchhoff_marginal,
                         matrix_tree_count, transfer_current)

##############################################################################
# Effective resistance across a rung
# ----------------------------------
# Cutting the infinite graph at one rung leaves two independent half-lines;
# the rung sees them in series, in parallel with itself.

prof = effective_resistance(LADDER, c=1)
print(f"ladder  c=1: R(one-sided) = {prof.r_plus:.12f}"
      f"   R(across rung) = {prof.r:.12f}")
print(f"             closed form 1/sqrt(3) = {1 / math.sqrt(3):.12f}")

zz = effective_resistance(ZIGZAG, c=1)
print(f"zigzag  c=1: R(across rung) = {zz.r:.12f}"
      f"   closed form 1/sqrt(5) = {1 / math.sqrt(5):.12f}")

##############################################################################
# Marginals, three ways
# ---------------------
# weight * resistance, the kernel diagonal, and the transfer-matrix
# stationary value are the same number.

spec = build_kernel(GraphFamily(LADDER, c=1))
print(f"\nP[rung in tree]: kirchhoff {kirchhoff_marginal(prof):.12f}"
      f"   kernel {kernel_entry(spec, 0):.12f}")

##############################################################################
# Current profiles
# ----------------
# Injecting a unit current across rung 0, the current through rung m
# decays geometrically -- and equals the kernel entry up to sign.

print("\ncurrent through rung m (ladder, c=1):")
for m in range(5):
    print(f"  m={m}:  current {transfer_current(prof, m):+.9f}"
          f"   kernel {kernel_entry(spec, m):+.9f}")

##############################################################################
# Finite windows converge
# -----------------------
# Truncating the graph to n columns and solving the Laplacian directly
# gives resistances that drop to the infinite-graph value geometrically.

print("\nfinite-window resistance, ladder c=1:")
for n in (2, 4, 8, 16):
    rn = finite_window_resistance(LADDER, c=1, n=n)
    print(f"  n={n:>2}: {rn:.15f}   excess {rn - prof.r:.3e}")

cur = finite_window_current(LADDER, c=1, n=8, rungs=range(4))
print("finite window [-8,8] currents at rungs 0..3: "
      + "  ".join(f"{cur[m]:+.6f}" for m in range(4)))

##############################################################################
# Exact Kirchhoff check on a finite segment
# -----------------------------------------
# On a finite window everything is rational: P[edge in tree] computed by
# counting trees that use the edge must equal weight * resistance, where
# the resistance comes from the exact rational Laplacian solve.

fam = GraphFamily(ZIGZAG, c=Fraction(3, 2))
seg = build_segment(fam, 0, 5)
total = matrix_tree_count(seg)
with_edge = forced_edge_count(seg, ["z2"])
marginal = Fraction(with_edge) / Fraction(total)
print(f"\nzigzag c=3/2 window 0..5: total tree weight {total}")
print(f"P[z2 in tree] = ({with_edge}) / ({total}) = {marginal}"
      f" = {float(marginal):.9f}")
