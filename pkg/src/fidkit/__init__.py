"""fidkit: fidelity and distance measures between quantum states.

Implements the superfidelity tr(rho sigma) + sqrt(1 - tr rho^2)
sqrt(1 - tr sigma^2) alongside the Uhlmann-Jozsa fidelity, the quantum
Chernoff quantity, and the trace distance, together with the metrics,
bounds, property suites, and benchmarks that relate them.
"""

from .bench import BenchRecord, ScalingFit, fit_scaling, run_bench
from .bounds import (
    BoundReport,
    ScatterRecord,
    axiom_suite,
    bound_report,
    concavity_suite,
    conjecture_scan,
    ozawa_monotonicity_demo,
    pinching_search,
    supermult_suite,
)
from .linalg import (
    eigh,
    hermitize,
    hs_inner,
    hs_norm,
    kron,
    matrix_sqrt_psd,
    partial_trace,
    rank_of,
    trace_norm,
)
from .measures import (
    chernoff_q,
    fidelity_chen,
    fidelity_n,
    fidelity_n_qubit_det,
    fidelity_uj,
    measure,
    trace_distance,
)
from .metrics import (
    KernelTestReport,
    metric_value,
    schoenberg_kernel_test,
    triangle_check,
)
from .states import (
    BlochExpansion,
    SaturatingPairSpec,
    disjoint_maximally_mixed,
    from_bloch,
    load_state,
    ozawa_pair,
    random_mixed,
    random_pure,
    random_unitary,
    saturating_pair,
    save_state,
    triangle_violation_triple,
    to_bloch,
    validate,
)

__version__ = "0.1.0"
