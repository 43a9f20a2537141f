"""
Exact samplers for trees and their rung processes
=================================================

Four ways to draw from these processes: the stationary renewal
construction on the ladder, Wilson's loop-erased walk on finite windows,
sequential determinantal sampling straight from the kernel, and derived
processes (thinning, interlacing).  Everything here is exact -- no
burn-in, no Metropolis.
"""

import math
from collections import Counter

import numpy as np

from laddertrees import (HELIX3, LADDER, GraphFamily, build_kernel,
                         build_segment, dpp_window_sample,
                         interlaced_reference, is_spanning_tree,
                         kernel_entry, ladder_renewal_sample,
                         renewal_distribution, renewal_gaps, thin,
                         wilson_sample)


def strip(x):
    return "".join("#" if b else "." for b in x)


##############################################################################
# Renewal construction on the ladder
# ----------------------------------
# Consecutive tree rungs are separated by independent gaps; sampling the
# stationary version means entering the window mid-gap.

path = ladder_renewal_sample(c=1, window=60, seed=3)
print(f"ladder c=1 rungs on 0..59 ('#' = rung):")
print(f"  {strip(path.x)}")
print(f"tree edges near the left edge: {path.tree_edges[:8]}")

# Between two rungs the sampler also chose which rail break reconnects the
# span, so the window content restricted to complete gaps is a tree piece.
fam = GraphFamily(LADDER, c=1)
ones = [m for m in path.indices if path.at(m)]
sub = build_segment(fam, ones[0], ones[-1])
inner = [lab for lab in path.tree_edges
         if lab in {e.label for e in sub.edges}]
print(f"restriction between first/last rung is a spanning tree: "
      f"{is_spanning_tree(sub, inner)}")

# Gap statistics against the exact law m * c * alpha^(m-1) * (1-alpha)^2...
spec = build_kernel(fam)
gaps = []
rng = np.random.default_rng(11)
for _ in range(400):
    p = ladder_renewal_sample(c=1, window=2000, rng=rng, conditioned=True)
    gaps.extend(renewal_gaps(p.x))
gaps = np.asarray(gaps)
print("\ngap law, empirical vs exact:")
for m in (1, 2, 3, 4):
    emp = (gaps == m).mean()
    print(f"  P[gap={m}]  empirical {emp:.5f}   exact {renewal_distribution(spec, m):.5f}")

##############################################################################
# Wilson's algorithm on finite windows
# ------------------------------------
# Loop-erased random walks give exactly uniform (weight-proportional)
# spanning trees on any finite segment -- all four families, any weights.

seg = build_segment(fam, 0, 2)
rng = np.random.default_rng(99)
counts = Counter(wilson_sample(seg, rng) for _ in range(6000))
print(f"\nwilson on a 3-column ladder: {len(counts)} distinct trees"
      f" (exact count 15)")
lo, hi = min(counts.values()), max(counts.values())
print(f"occurrences per tree: min {lo}, max {hi} (uniform would be 400)")

##############################################################################
# Determinantal sampling
# ----------------------
# The kernel itself can be sampled site by site via conditional
# probabilities; this works for every family including the enhanced one,
# and for thinned kernels.

h3 = build_kernel(GraphFamily(HELIX3, c=1))
draws = np.array([dpp_window_sample(h3, 40, seed=s).x for s in range(3000)])
print(f"\nhelix3 determinantal samples, empirical marginal: "
      f"{draws.mean():.5f}   exact {kernel_entry(h3, 0):.5f}")
print(f"  one draw: {strip(draws[0])}")

##############################################################################
# Thinning
# --------
# Keeping each rung with probability p is again determinantal; the

# sampler just erases marks, so tree structure no longer applies.
thinned = thin(path, 0.5, seed=4)
print(f"\nthinned p=1/2 ladder path (tree_edges now {thinned.tree_edges}):")
print(f"  {strip(thinned.x)}")

##############################################################################
# Interlacing: regenerative but not determinantal
# -----------------------------------------------
# Two independent thinned renewal copies on even/odd sites form an
# order-2 regenerative process.  Its lag-1 correlation vanishes (the
# copies are independent), but every rung kernel has nonzero K(1) --
# so no parameter choice reproduces it (see the scan in demo 02).

ref = interlaced_reference(alpha=2 - math.sqrt(3), p=0.7, n=200_000, seed=8)
x = ref.x - ref.x.mean()
lag1 = float(np.mean(x[1:] * x[:-1]) / np.mean(x * x))
lag2 = float(np.mean(x[2:] * x[:-2]) / np.mean(x * x))
print(f"\ninterlaced reference: lag-1 corr {lag1:+.5f} (zero),"
      f" lag-2 corr {lag2:+.5f} (negative)")
