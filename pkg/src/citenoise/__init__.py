"""Modeling and decomposition of accuracy, noise, and bias in citation systems."""

from .audit import (
    AuditReport,
    JustificationEntry,
    JustificationTable,
    OmissionFlags,
    SimilarityMatrix,
    audit_justification,
    build_similarity,
    canonicalize_key,
    omission_indicator,
    parse_justification_table,
    serialize_justification_table,
)
from .fixtures import builtin_fixture, fixture_names
from .metrics import (
    BiasDirection,
    BiasResult,
    CitedPaperStats,
    CitingPaperStats,
    NoiseReport,
    analyze,
    author_error_rate,
    author_pattern_noise,
    citation_bias,
    cited_paper_stats,
    citing_paper_stats,
    level_noise,
    pattern_noise,
    system_accuracy,
    system_noise,
)
from .model import (
    CitationSystem,
    DecisionClass,
    ErrorMatrix,
    build_system,
    classify_decision,
    error_matrix,
)
from .simulate import (
    GenerativeConfig,
    LatentTruth,
    ReplicateSet,
    aggregation_curve,
    bias_recovery,
    decompose_pattern_noise,
    expected_bias,
    generate_system,
    replicate_decisions,
)

__version__ = "0.1.0"
