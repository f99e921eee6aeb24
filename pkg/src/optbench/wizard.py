"""Rule-based algorithm selection and optimizer construction.

``select_algorithm`` is a pure, total function from a-priori problem
features (dimension, budget, parallelism, noise flag, variable kinds) to an
algorithm spec tree.  Rules are checked in a fixed order and the first match
applies; ``explain_selection`` also returns the index of the rule that
fired.

``build_optimizer`` instantiates any spec tree against a run context,
deriving each tree node's RNG seed from the master seed and the node's path
so that sibling nodes get independent streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .algospec import AlgorithmSpec, BetAndRun, Chain, Leaf, Wrap, parse_algorithm
from .combinators import BetAndRunOptimizer, ChainOptimizer, ProgressiveWidening
from .core import Optimizer, RunContext
from .domain import DomainSpec
from .errors import RegistryError
from .seeds import derive_seed
from .solvers import SoftmaxBridge, solver_factory
from .solvers.metamodel import MetamodelWrapper

WIZARD_ID = "abbo"


@dataclass(frozen=True)
class SelectionContext:
    """Everything the wizard may look at; nothing requires an evaluation."""

    dimension: int
    budget: int
    num_workers: int = 1
    noisy: bool = False
    has_discrete: bool = False
    all_discrete: bool = False
    has_categorical: bool = False
    max_arity: float = 0
    has_unbounded_discrete: bool = False
    fully_continuous: bool = True

    @classmethod
    def from_problem(cls, domain: DomainSpec, context: RunContext) -> "SelectionContext":
        return cls(
            dimension=domain.dimension,
            budget=context.budget,
            num_workers=context.num_workers,
            noisy=context.noisy,
            has_discrete=domain.has_discrete,
            all_discrete=domain.all_discrete,
            has_categorical=domain.has_categorical,
            max_arity=math.inf if domain.has_unbounded_discrete else domain.max_arity,
            has_unbounded_discrete=domain.has_unbounded_discrete,
            fully_continuous=domain.fully_continuous,
        )

    def continuous_counterpart(self) -> "SelectionContext":
        """The context seen through the softmax logit encoding."""
        return replace(
            self,
            has_discrete=False,
            all_discrete=False,
            has_categorical=False,
            max_arity=0,
            has_unbounded_discrete=False,
            fully_continuous=True,
        )


def explain_selection(ctx: SelectionContext) -> tuple[int, AlgorithmSpec]:
    """Return ``(fired_rule_index, spec)``; rules match in listed order."""
    d, b, w = ctx.dimension, ctx.budget, ctx.num_workers
    if ctx.has_discrete:
        if ctx.noisy and ctx.has_categorical:
            return 1, Leaf("discrete-optimistic")
        if ctx.max_arity < 5 and w == 1:
            return 2, Leaf("discrete-lineardecay")
        if ctx.max_arity < 5 and w > 1:
            return 3, Leaf("discrete-adaptive")
        if not ctx.has_unbounded_discrete:
            _rule, inner = explain_selection(ctx.continuous_counterpart())
            return 4, Wrap("softmax", inner)
        return 5, Leaf("fastga")
    if ctx.noisy:
        if d > 100:
            return 6, Wrap("progressive", Leaf("de"))
        if d <= 30:
            return 7, Leaf("tbpsa")
        if b > 100:
            return 8, Leaf("quadratic-tr")
        return 9, Leaf("tbpsa")
    if w > b / 2 or b < d:
        return 10, Leaf("oneshot")
    if w > b / 5 and d < 5 and b < 100:
        return 11, Leaf("diagcma")
    if w > b / 5 and d < 5 and b < 500:
        return 12, Chain(
            (Leaf("diagcma"), Wrap("metamodel", Leaf("cma"))),
            fractions=(None, 1.0),
            asks=(100, None),
        )
    if w > b / 5:
        return 13, Leaf("naive-tbpsa")
    if b > 6000 and d > 7:
        return 14, Chain((Leaf("cma"), Leaf("powell")), fractions=(0.5, 0.5))
    if b < 30 * d and d > 30:
        return 15, Leaf("one-plus-one-es")
    if d < 5 and b < 30 * d:
        return 16, Wrap("metamodel", Leaf("cma"))
    if b < 30 * d:
        return 17, Leaf("linear-tr")
    return 18, Leaf("cma")


def select_algorithm(ctx: SelectionContext) -> AlgorithmSpec:
    """Pure feature-based dispatch; see ``explain_selection`` for the rule."""
    return explain_selection(ctx)[1]


# ----------------------------------------------------------------------
# construction


def _leaf_params(leaf: Leaf) -> dict:
    return dict(leaf.params)


def build_optimizer(
    spec: "AlgorithmSpec | str",
    context: RunContext,
    _path: tuple = ("alg",),
    _init_point=None,
) -> Optimizer:
    """Instantiate a spec tree (or its text form) for a run context.

    Node seeds come from ``derive_seed(master_seed, path)`` where the path
    lists child indices from the root; a leaf parameter ``seed=...``
    overrides the derived seed.
    """
    if isinstance(spec, str):
        spec = parse_algorithm(spec)
    seed = derive_seed(context.master_seed, list(_path))

    def child_builder(child_spec, child_context, child_path, init_point):
        return build_optimizer(child_spec, child_context, tuple(child_path), init_point)

    if isinstance(spec, Leaf):
        if spec.name == WIZARD_ID:
            ctx = SelectionContext.from_problem(context.domain, context)
            resolved = select_algorithm(ctx)
            return build_optimizer(resolved, context, _path + (WIZARD_ID,), _init_point)
        params = _leaf_params(spec)
        seed = params.pop("seed", seed)
        factory = solver_factory(spec.name)
        return factory(context, seed=seed, init_point=_init_point, **params)
    if isinstance(spec, Chain):
        return ChainOptimizer(
            context, spec, child_builder, path=_path, seed=seed, init_point=_init_point
        )
    if isinstance(spec, BetAndRun):
        return BetAndRunOptimizer(
            context, spec, child_builder, path=_path, seed=seed, init_point=_init_point
        )
    if isinstance(spec, Wrap):
        if spec.kind == "metamodel":
            child = build_optimizer(spec.child, context, _path + (0,), _init_point)
            return MetamodelWrapper(context, child)
        if spec.kind == "progressive":
            return ProgressiveWidening(
                context, spec.child, child_builder, path=_path, seed=seed, init_point=_init_point
            )
        if spec.kind == "softmax":

            def inner_factory(inner_context, inner_init):
                return build_optimizer(spec.child, inner_context, _path + (0,), inner_init)

            return SoftmaxBridge(
                context, inner_factory, seed=seed, init_point=_init_point
            )
    raise RegistryError(f"cannot build optimizer from {spec!r}")
