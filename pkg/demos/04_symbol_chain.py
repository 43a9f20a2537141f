"""
The maximal-entropy symbol chain behind the helix tree
======================================================

The width-3 helix tree, read column by column, is an 11-symbol Markov
chain: each symbol records which of the column's two tree edges are
present plus the boundary class of everything to the left.  The chain
achieves the largest possible entropy among processes on its transition
graph, and its entropy rate is the log of the spanning-tree growth rate.
"""

import math

import numpy as np

from laddertrees import (build_chain, chain_entropy, decode_path,
                         decoded_edges, query_probability, sample_path,
                         verify_successor_table)
from laddertrees.chain import GROUPS, SYMBOLS

GOLDEN = (math.sqrt(5) + 1) / 2

##############################################################################
# The chain itself
# ----------------

spec = build_chain()
print(f"symbols ({len(SYMBOLS)}): (chord bit, rung bit, class)")
for cls, ids in GROUPS.items():
    print(f"  class {cls}: " + "  ".join(f"{k}={SYMBOLS[k - 1][:2]}" for k in ids))

print(f"\nrow sums of transition matrix: {spec.R.sum(axis=1).round(12)}")
print(f"stationary law over classes:   {spec.pi_Rbar.round(6)}")

##############################################################################
# Entropy
# -------
# Three numbers coincide: the stored rate, the Shannon entropy of the
# transitions, and log of the growth rate per column.

target = math.log(GOLDEN + math.sqrt(GOLDEN))
print(f"\nstored entropy rate:      {spec.entropy:.15f}")
print(f"Shannon entropy of chain: {chain_entropy(spec):.15f}")
print(f"log(growth rate):         {target:.15f}")

##############################################################################
# Query probabilities
# -------------------
# Patterns over {1, 0, None} describe consecutive rungs; None leaves a
# site unconstrained.  The one-rung marginal is gamma^1.5 / (2 sqrt 5).

marg = query_probability(spec, [1])
print(f"\nP[rung]          = {marg:.12f}"
      f"   closed form {GOLDEN ** 1.5 / (2 * math.sqrt(5)):.12f}")
print(f"P[rung, rung]    = {query_probability(spec, [1, 1]):.12f}")
print(f"P[rung, -, rung] = {query_probability(spec, [1, None, 1]):.12f}")
print(f"P[rung, no rung] = {query_probability(spec, [1, 0]):.12f}")

# Runs of consecutive rungs become geometric once they are at least two
# long; the per-step ratio is gamma - sqrt(gamma).
runs = [query_probability(spec, [1] * m) for m in range(1, 7)]
ratios = [runs[m + 1] / runs[m] for m in range(5)]
print("run-length ratios P[1^(m+1)]/P[1^m]: "
      + "  ".join(f"{r:.6f}" for r in ratios))
print(f"gamma - sqrt(gamma) = {GOLDEN - math.sqrt(GOLDEN):.6f}")

##############################################################################
# Sampling and decoding
# ---------------------
# A symbol path decodes into per-column chord/rung bits whose labels drop
# straight onto the graph window.

path = sample_path(spec, 20, seed=42)
h, z, cls = decode_path(path)
print(f"\nsampled symbols:  {path.tolist()}")
print(f"chord bits:       {h.tolist()}")
print(f"rung bits:        {z.tolist()}")
print(f"boundary classes: {cls.tolist()}")
print(f"edges on sites 0..19: {decoded_edges(path, 0)[:10]} ...")

# Long-run rung frequency converges to the marginal.
long = sample_path(spec, 200_000, seed=7)
freq = decode_path(long)[1].mean()
print(f"empirical rung frequency over 200k columns: {freq:.5f}"
      f"   (marginal {marg:.5f})")

##############################################################################
# The successor table is forced
# -----------------------------
# Brute-force classification of every edge subset of a finite window
# regenerates the hard-coded successor table exactly.

res = verify_successor_table(window=5, report=True)
print(f"\nsuccessor table regenerated from scratch: "
      f"matches_table={res['matches_table']}")
print(f"subsets classified per class: {res['representatives']}")
