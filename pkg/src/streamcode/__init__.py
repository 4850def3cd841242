"""Intrasession streaming erasure code: even bandwidth allocation, worst-case
erasure patterns, rate bounds, and a GF(256) codec realizing the allocation."""

from .core import (
    CodingWindow,
    OffsetQR,
    ParameterError,
    SystemParams,
    achievable_rate,
    coding_window,
    offset_qr,
    y_vector,
)
from .allocation import (
    AllocationTable,
    StepAllocation,
    active_messages,
    allocation_table,
    message_allocation_profile,
)
from .erasure import (
    ErasurePattern,
    Model,
    NotCovered,
    burst_worst_case,
    enumerate_admissible,
    is_admissible,
    periodic_pattern,
)
from .partition import (
    Partition,
    build_partition,
    derived_window_patterns,
    v_vector,
    worst_case_base_pattern,
)

__version__ = "0.1.0"
