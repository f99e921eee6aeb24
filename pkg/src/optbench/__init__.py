"""optbench: derivative-free optimization with a selection wizard,
a transformation-rich benchmark generator, and a reproducible harness."""

from .algospec import (
    AlgorithmSpec,
    BetAndRun,
    Chain,
    Leaf,
    Wrap,
    canonical_text,
    parse_algorithm,
    split_top_level,
)
from .core import Candidate, Optimizer, RunContext, run_loop
from .domain import (
    DomainSpec,
    ScalarView,
    VariableSpec,
    categorical,
    continuous,
    integer,
    unbounded_integer,
)
from .errors import (
    BudgetExceededError,
    ConfigurationError,
    ContractError,
    EvaluationError,
    InvalidLossError,
    OptbenchError,
    ProtocolError,
    RegistryError,
    SpecParseError,
)
from .seeds import SEED_TEST_VECTOR, derive_seed
from .wizard import SelectionContext, build_optimizer, explain_selection, select_algorithm

__version__ = "0.1.0"

__all__ = [
    "AlgorithmSpec",
    "BetAndRun",
    "BudgetExceededError",
    "Candidate",
    "Chain",
    "ConfigurationError",
    "ContractError",
    "DomainSpec",
    "EvaluationError",
    "InvalidLossError",
    "Leaf",
    "OptbenchError",
    "Optimizer",
    "ProtocolError",
    "RegistryError",
    "RunContext",
    "ScalarView",
    "SEED_TEST_VECTOR",
    "SelectionContext",
    "SpecParseError",
    "VariableSpec",
    "Wrap",
    "build_optimizer",
    "canonical_text",
    "categorical",
    "continuous",
    "derive_seed",
    "explain_selection",
    "integer",
    "parse_algorithm",
    "run_loop",
    "select_algorithm",
    "split_top_level",
    "unbounded_integer",
    "__version__",
]
