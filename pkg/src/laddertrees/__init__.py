"""Random spanning trees on ladder-like graphs and their rung processes.

The package computes exact weighted spanning-tree counts of four
one-dimensional graph families (ladder, zigzag, width-3 helix, and the
chord-enhanced helix), the determinantal kernels of the process that
marks which rungs the tree uses, the electrical-network view of the same
quantities, a maximal-entropy symbol chain equivalent to the helix tree,
and exact samplers for all of it.
"""

from .graphs import (ENHANCED, FAMILY_KINDS, GraphFamily, HELIX3, LADDER,
                     ZIGZAG, build_segment, is_spanning_tree)
from .weights import WeightPoly
from .oracle import (enumerate_trees, forced_edge_count, matrix_tree_count,
                     weighted_count, wilson_sample)
from .transfer import (TransferSystem, boundary_class, build_transfer,
                       count_by_recursion, count_closed_form, count_poly,
                       count_value, growth_matrices)
from .kernel import (KernelSpec, build_kernel, classify_renewal_dpp,
                     fourier_invert, kernel_entry, kernel_matrix,
                     order2_nonrealizability_scan, regenerative_order,
                     renewal_distribution, spectral_density,
                     window_probability)
from .electrical import (ResistanceProfile, effective_resistance,
                         finite_window_current, finite_window_resistance,
                         kirchhoff_marginal, segment_resistance,
                         transfer_current)
from .chain import (ChainSpec, build_chain, chain_entropy, decode_path,
                    decoded_edges, query_probability, sample_path,
                    verify_successor_table)
from .sampling import (SamplePath, dpp_window_sample, interlaced_reference,
                       ladder_renewal_sample, renewal_gaps, thin)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "ENHANCED", "FAMILY_KINDS", "GraphFamily", "HELIX3", "LADDER", "ZIGZAG",
    "build_segment", "WeightPoly", "enumerate_trees", "forced_edge_count",
    "is_spanning_tree", "matrix_tree_count", "weighted_count", "wilson_sample",
    "TransferSystem", "boundary_class", "build_transfer", "count_by_recursion",
    "count_closed_form", "count_poly", "count_value", "growth_matrices",
    "KernelSpec", "build_kernel",
    "classify_renewal_dpp", "fourier_invert", "kernel_entry", "kernel_matrix",
    "order2_nonrealizability_scan", "regenerative_order",
    "renewal_distribution", "spectral_density", "window_probability",
    "ResistanceProfile", "effective_resistance", "finite_window_current",
    "finite_window_resistance", "kirchhoff_marginal", "segment_resistance",
    "transfer_current", "ChainSpec", "build_chain", "chain_entropy",
    "decode_path", "decoded_edges", "query_probability", "sample_path",
    "verify_successor_table", "SamplePath", "dpp_window_sample",
    "interlaced_reference", "ladder_renewal_sample", "renewal_gaps", "thin",
    "run_suite", "__version__",
]
