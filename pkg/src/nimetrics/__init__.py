"""Normalized mutual information (NI) for binary classifier evaluation.

NI(T, Y) = (H(T) - H(T|Y)) / H(T): the fraction of target uncertainty
removed by a classifier's output, normalized to [0, 1] by the target
entropy. The package computes NI directly from label data or confusion
counts, provides the closed-form NI relations to accuracy, precision,
recall, and false alarm (with the nine-case zero-pattern taxonomy),
exports the relation-map datasets behind those formulas, and ranks models
by the NI-plus-accuracy selection scheme.
"""

from ._kernels import BACKEND as kernel_backend
from .closedform import (
    IndexPoint,
    NICase,
    accuracy_from_pr,
    apr_matrix,
    case5_matrix,
    case6_matrix,
    case7_matrix,
    case8_matrix,
    classify_case,
    fr_matrix,
    ni_case5,
    ni_case6,
    ni_case7,
    ni_case8,
    ni_case9_apr,
    ni_closed,
    ni_from_counts,
    ni_from_fr,
    ni_from_pr,
    pr_matrix,
    precision_from_fr,
)
from .confusion import (
    ConfusionMatrix,
    MetricsReport,
    accuracy,
    false_alarm,
    flip_predictions,
    from_label_pairs,
    precision,
    read_confusion_json,
    read_label_pairs_csv,
    recall,
)
from .errors import (
    DegenerateTargetError,
    InfeasibleParameterError,
    InvariantViolationError,
)
from .info import (
    CountMatrix,
    binary_target_entropy,
    conditional_entropy,
    empirical_entropy,
    normalized_mutual_information,
)
from .maps import (
    CurveSamples,
    EnvelopeScatter,
    SpecialPoint,
    SurfaceGrid,
    boundary_curves,
    envelope_scatter,
    feasible_region_pr,
    pr_region_contains,
    special_points,
    surface_fr,
    surface_pr,
)
from .ranking import Comparison, ModelRecord, Ranking, compare, complement, rank, table_report

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    # confusion
    "ConfusionMatrix",
    "MetricsReport",
    "from_label_pairs",
    "read_label_pairs_csv",
    "read_confusion_json",
    "accuracy",
    "precision",
    "recall",
    "false_alarm",
    "flip_predictions",
    # info theory
    "CountMatrix",
    "empirical_entropy",
    "binary_target_entropy",
    "conditional_entropy",
    "normalized_mutual_information",
    # closed forms
    "NICase",
    "IndexPoint",
    "classify_case",
    "ni_from_counts",
    "ni_closed",
    "ni_case5",
    "ni_case6",
    "ni_case7",
    "ni_case8",
    "ni_case9_apr",
    "accuracy_from_pr",
    "ni_from_pr",
    "precision_from_fr",
    "ni_from_fr",
    "case5_matrix",
    "case6_matrix",
    "case7_matrix",
    "case8_matrix",
    "pr_matrix",
    "fr_matrix",
    "apr_matrix",
    # maps
    "SpecialPoint",
    "CurveSamples",
    "SurfaceGrid",
    "EnvelopeScatter",
    "special_points",
    "boundary_curves",
    "feasible_region_pr",
    "pr_region_contains",
    "surface_pr",
    "surface_fr",
    "envelope_scatter",
    # evaluation
    "ModelRecord",
    "Comparison",
    "Ranking",
    "complement",
    "compare",
    "rank",
    "table_report",
    # errors
    "DegenerateTargetError",
    "InfeasibleParameterError",
    "InvariantViolationError",
]
