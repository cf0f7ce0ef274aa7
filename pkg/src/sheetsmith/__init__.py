"""Spreadsheet formula risk metrics, evaluation, synthesis, and study analytics.

The package splits into four layers. ``parser``/``formulas`` turn Excel-style
formula text into an AST and render it back canonically. ``metrics`` computes
vocabulary-based risk numbers over that AST. ``evaluator`` runs formulas
against small grids and checks them against labelled examples, including
exhaustive equivalence over bounded integer domains. ``synthesis`` searches
decision lists of threshold tests and compiles the winner to nested IFs.
``confidence`` handles the study side: error scoring, overconfidence ratios,
summaries, and the exponential accuracy-vs-complexity fit. ``cli`` exposes all
of it as the ``sheetsmith`` command.
"""

from .confidence import (
    ApproachSummary,
    APPROACHES,
    combined_overconfidence,
    ConfidenceRecord,
    confidence_ratio,
    CurveFit,
    DEFAULT_BASE_ERROR_CEILING,
    exceeds_base_error_ceiling,
    ExperimentSummary,
    f_score,
    fit_accuracy_curve,
    question_outcome,
    QuestionOutcome,
    QuestionSummary,
    summarize_experiment,
)
from .errors import (
    ArityError,
    DegenerateFormulaError,
    DegenerateXError,
    DomainTooLargeError,
    EmptyExampleSetError,
    EmptyInputError,
    EmptyLabelError,
    FormulaSyntaxError,
    HypothesisSpaceExhaustedError,
    InconsistentExamplesError,
    InputFileError,
    InsufficientPointsError,
    RangeError,
    SearchBudgetExceededError,
    SheetsmithError,
    UnknownFunctionError,
    UnknownQuestionError,
    UsageError,
)
from .evaluator import (
    EvalError,
    evaluate,
    Grid,
    referenced_cells,
    semantic_equivalence,
    validate_examples,
    ValidationReport,
    values_equal,
)
from .formulas import (
    BinaryOp,
    BooleanLiteral,
    CellRef,
    FormulaAst,
    FunctionCall,
    NumberLiteral,
    RangeRef,
    render,
    SUPPORTED_FUNCTIONS,
    TextLiteral,
    UnaryOp,
)
from .metrics import (
    halstead_complexity,
    halstead_counts,
    HalsteadCounts,
    metrics_report,
    MetricsReport,
    MILLER_LIMIT,
    miller_concepts,
)
from .parser import parse
from .synthesis import (
    DEFAULT_AGGREGATES,
    DEFAULT_COMPARATORS,
    enumerate_candidates,
    example_grids,
    HypothesisConfig,
    LabeledExample,
    Predicate,
    synthesize,
    SynthesisResult,
)

__version__ = "0.1.0"

__all__ = [
    "APPROACHES",
    "ApproachSummary",
    "ArityError",
    "BinaryOp",
    "BooleanLiteral",
    "CellRef",
    "combined_overconfidence",
    "ConfidenceRecord",
    "confidence_ratio",
    "CurveFit",
    "DEFAULT_AGGREGATES",
    "DEFAULT_BASE_ERROR_CEILING",
    "DEFAULT_COMPARATORS",
    "DegenerateFormulaError",
    "DegenerateXError",
    "DomainTooLargeError",
    "EmptyExampleSetError",
    "EmptyInputError",
    "EmptyLabelError",
    "EvalError",
    "evaluate",
    "example_grids",
    "exceeds_base_error_ceiling",
    "ExperimentSummary",
    "f_score",
    "fit_accuracy_curve",
    "FormulaAst",
    "FormulaSyntaxError",
    "FunctionCall",
    "Grid",
    "halstead_complexity",
    "halstead_counts",
    "HalsteadCounts",
    "HypothesisConfig",
    "HypothesisSpaceExhaustedError",
    "InconsistentExamplesError",
    "InputFileError",
    "InsufficientPointsError",
    "LabeledExample",
    "metrics_report",
    "MetricsReport",
    "MILLER_LIMIT",
    "miller_concepts",
    "NumberLiteral",
    "parse",
    "Predicate",
    "question_outcome",
    "QuestionOutcome",
    "QuestionSummary",
    "RangeError",
    "RangeRef",
    "referenced_cells",
    "render",
    "SearchBudgetExceededError",
    "semantic_equivalence",
    "SheetsmithError",
    "summarize_experiment",
    "SUPPORTED_FUNCTIONS",
    "SynthesisResult",
    "synthesize",
    "TextLiteral",
    "UnaryOp",
    "UnknownFunctionError",
    "UnknownQuestionError",
    "UsageError",
    "validate_examples",
    "ValidationReport",
    "values_equal",
]
