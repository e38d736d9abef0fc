"""Sliding-window covariance estimation through disjoint offset classes.

A P x Q window slides over a complex N x M matrix; each placement's
column-stacked vector contributes a rank-one outer product to a Hermitian
estimate.  Instead of sweeping windows, the engine groups products by the
inter-element offset of their factors: each class is computed once, owns its
own output slots, and can run on any thread without synchronization.  The
hot kernels are numba-compiled with a pure-numpy fallback, selected per call
or via the COVCOMB_BACKEND environment variable.
"""

from .analysis import (
    CostModel,
    closed_form_counts,
    serial_op_counts,
    unique_mult_counts,
    upper_triangle_size,
    write_coverage_split,
)
from .backend import ENV_BACKEND, available_backends, resolve_backend
from .baseline import count_naive_ops, estimate_naive, executed_naive_ops, window_positions
from .combinations import (
    Combination,
    ElementPair,
    element_pairs,
    is_unique_combination,
    max_writes,
    pair_count,
    unique_combinations,
    write_indices,
)
from .core import (
    CovarianceMatrix,
    InputMatrix,
    WindowSpec,
    column_stack_index,
    max_rel_diff,
    packed_offset,
    packed_size,
    rel_frobenius_distance,
)
from .engine import (
    MODE_PARALLEL,
    MODE_SEQ_DIRECT,
    MODE_SEQ_OPTIMIZED,
    OpCounters,
    estimate_batch,
    estimate_combinations,
    estimate_parallel,
    estimate_seq_direct,
    estimate_seq_optimized,
    measure_combination_times,
)
from .io import read_covariance, read_input_matrix, write_covariance, write_input_matrix
from .schedsim import (
    POLICY_FIFO,
    POLICY_LONGEST,
    SchedResult,
    SweepPoint,
    TaskCost,
    ingest_measured_costs,
    model_costs,
    simulate,
    sweep,
    write_cost_trace,
)

__version__ = "0.1.0"
