"""Pythagorean fuzzy conflict analysis.

Aggregate agents' attitudes over issues, split them into positive, central
and negative alliances, and classify them by minimum expected loss with one
or several PFN-valued loss functions.
"""

from .alliance import (
    AlliancePartition,
    Regime,
    Thresholds,
    partition,
    partition_closeness,
    partition_pfn,
    partition_score,
)
from .errors import (
    ConstraintError,
    DomainError,
    LossOrderError,
    ParseError,
    PFConflictError,
    ShapeError,
    ThresholdError,
    UnknownAgentError,
    WeightError,
)
from .group import (
    GroupMatrices,
    GroupRiskRow,
    LossPanel,
    classify_group,
    group_expected_loss,
    group_expected_loss_matrix,
    group_matrices,
    load_panel,
)
from .pfn import (
    PFN,
    Order,
    closeness,
    distance,
    hesitancy,
    pfn_add,
    pfn_new,
    pfn_scale,
    quasi_compare,
    score,
    weighted_average,
)
from .risk import (
    Action,
    Classification,
    DecisionRow,
    LossFunction,
    LossMode,
    Region,
    RiskRow,
    Rule,
    classify,
    classify_closeness,
    classify_pfn_order,
    classify_score,
    closeness_matrix,
    expected_loss,
    expected_loss_matrix,
    load_loss,
    score_matrix,
    to_partition,
    validate_loss,
)
from .system import (
    PFIS,
    AgentAggregate,
    PythagoreanMatrix,
    aggregate_agent,
    aggregate_all,
    dump_system,
    load_system,
    load_system_file,
    pythagorean_matrix,
)

__version__ = "0.1.0"
