"""Robinson / Strong-Robinson recognition for complete and incomplete symmetric matrices."""

from .c1p import OrderingConstraints, consecutive_ones_order
from .checks import (
    CheckResult,
    Violation,
    ViolationKind,
    complete_min_rule,
    diagonal_lint,
    is_robinson,
    is_robinson_complete,
    is_strong_robinson,
)
from .complete import (
    LevelMatrix,
    RecognitionOutcome,
    Refutation,
    Verdict,
    recognize_robinsonian,
    threshold_levels,
)
from .errors import *  # noqa: F401,F403
from .generate import (
    NoInstance,
    PlantedInstance,
    SplitMix64,
    gen_no_instance,
    gen_planted,
    gen_robinson,
    punch_holes,
)
from .incomplete import (
    CompletionCursor,
    IncompleteOutcome,
    enumerate_completions,
    recognize_strong_robinsonian,
    recognize_strong_robinsonian_direct,
    verify_incomplete_witness,
)
from .matrix import (
    MISSING,
    Completion,
    IncompleteMatrix,
    apply_completion,
    apply_permutation,
    missing_count,
    new_matrix,
    value_set,
)
from .oracle import OracleReport, brute_robinsonian, brute_strong_robinsonian

__version__ = "0.1.0"
