"""Solver registry: canonical algorithm ids to constructors."""

from __future__ import annotations

from ..errors import RegistryError
from .cma import CmaEs
from .de import DifferentialEvolution
from .discrete import DiscreteOnePlusOne, FastGa, strength_probabilities
from .es import OnePlusOneEs
from .localsearch import Powell, TrustRegion, linear_descent_step, quadratic_model_step
from .metamodel import MetamodelWrapper, metamodel_min_points, metamodel_propose
from .oneshot import OneShotRecentering, recentering_std
from .softmax import SoftmaxBridge, logit_domain, softmax_probabilities
from .tbpsa import Tbpsa


def _variant(cls, **fixed):
    def factory(context, seed=0, init_point=None, **params):
        return cls(context, seed=seed, init_point=init_point, **fixed, **params)

    return factory


REGISTRY = {
    "cma": _variant(CmaEs),
    "diagcma": _variant(CmaEs, diagonal=True),
    "de": _variant(DifferentialEvolution),
    "lhsde": _variant(DifferentialEvolution, lhs_init=True, population_size=30),
    "one-plus-one-es": _variant(OnePlusOneEs),
    "tbpsa": _variant(Tbpsa),
    "naive-tbpsa": _variant(Tbpsa, naive=True),
    "powell": _variant(Powell),
    "linear-tr": _variant(TrustRegion, quadratic=False),
    "quadratic-tr": _variant(TrustRegion, quadratic=True),
    "oneshot": _variant(OneShotRecentering),
    "discrete-fixed": _variant(DiscreteOnePlusOne, variant="fixed"),
    "discrete-lineardecay": _variant(DiscreteOnePlusOne, variant="linear_decay"),
    "discrete-adaptive": _variant(DiscreteOnePlusOne, variant="adaptive"),
    "discrete-portfolio": _variant(DiscreteOnePlusOne, variant="portfolio"),
    "discrete-optimistic": _variant(DiscreteOnePlusOne, variant="optimistic_noisy"),
    "fastga": _variant(FastGa),
}


def known_solvers() -> tuple[str, ...]:
    return tuple(sorted(REGISTRY)) + ("abbo",)


def solver_factory(name: str):
    try:
        return REGISTRY[name]
    except KeyError:
        raise RegistryError(
            f"unknown solver id {name!r}; known ids: {', '.join(known_solvers())}"
        ) from None


__all__ = [
    "CmaEs",
    "DifferentialEvolution",
    "DiscreteOnePlusOne",
    "FastGa",
    "MetamodelWrapper",
    "OnePlusOneEs",
    "OneShotRecentering",
    "Powell",
    "REGISTRY",
    "SoftmaxBridge",
    "Tbpsa",
    "TrustRegion",
    "known_solvers",
    "linear_descent_step",
    "logit_domain",
    "metamodel_min_points",
    "metamodel_propose",
    "quadratic_model_step",
    "recentering_std",
    "softmax_probabilities",
    "solver_factory",
    "strength_probabilities",
]
