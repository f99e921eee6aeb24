"""Base test-function catalog with analytic minima.

Every continuous entry is minimized at 0 with value 0, except rosenbrock
whose minimizer is the all-ones vector and lunacek whose minimizer is the
all-2.5 vector.  Definitions used here:

    sphere(y)     = sum y_i^2
    cigar(y)      = y_1^2 + 1e6 * sum_{i>=2} y_i^2
    ellipsoid(y)  = sum 10^(6 (i-1)/(d-1)) y_i^2           (condition 1e6)
    hm(y)         = sum y_i^2 (1.1 + cos(1/y_i)),  term 0 at y_i = 0
    ackley(y)     = -20 exp(-0.2 sqrt(mean y^2)) - exp(mean cos 2 pi y) + 20 + e
    griewank(y)   = 1 + sum y^2/4000 - prod cos(y_i / sqrt(i))
    rosenbrock(y) = sum 100 (y_{i+1} - y_i^2)^2 + (1 - y_i)^2
    lunacek(y)    = bi-Rastrigin with mu0 = 2.5,
                    s = 1 - 1/(2 sqrt(d + 20) - 8.2),
                    mu1 = -sqrt((mu0^2 - 1)/s):
                    min(sum (y-mu0)^2, d + s sum (y-mu1)^2)
                      + 10 sum (1 - cos(2 pi (y - mu0)))
    deceptive_multimodal(y) = r (1 + 0.9 cos(2 pi log2 r)),  r = |y|_2
                    rings of deceptive local minima at geometrically spaced
                    radii; value 0 only at the origin

Discrete entries: onemax counts entries different from one, leadingones
counts positions after the first non-one entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ..domain import DomainSpec, VariableSpec, continuous, integer
from ..errors import ConfigurationError

_TWO_PI = 2.0 * math.pi


def sphere(y: np.ndarray) -> float:
    return float(y @ y)


def cigar(y: np.ndarray) -> float:
    tail = y[1:]
    return float(y[0] * y[0] + 1e6 * (tail @ tail))


@lru_cache(maxsize=None)
def _ellipsoid_weights(d: int) -> np.ndarray:
    if d == 1:
        return np.ones(1)
    return 10.0 ** (6.0 * np.arange(d) / (d - 1))


def ellipsoid(y: np.ndarray) -> float:
    return float(_ellipsoid_weights(len(y)) @ (y * y))


def hm(y: np.ndarray) -> float:
    safe = np.where(y == 0.0, 1.0, y)
    terms = y * y * (1.1 + np.cos(1.0 / safe))
    return float(np.where(y == 0.0, 0.0, terms).sum())


def ackley(y: np.ndarray) -> float:
    d = len(y)
    return float(
        -20.0 * math.exp(-0.2 * math.sqrt((y @ y) / d))
        - math.exp(np.cos(_TWO_PI * y).sum() / d)
        + 20.0
        + math.e
    )


def griewank(y: np.ndarray) -> float:
    d = len(y)
    return float(1.0 + (y @ y) / 4000.0 - np.prod(np.cos(y / np.sqrt(np.arange(1, d + 1)))))


def rosenbrock(y: np.ndarray) -> float:
    a = y[:-1]
    b = y[1:]
    return float(np.sum(100.0 * (b - a * a) ** 2 + (1.0 - a) ** 2))


_LUNACEK_MU0 = 2.5


def lunacek(y: np.ndarray) -> float:
    d = len(y)
    s = 1.0 - 1.0 / (2.0 * math.sqrt(d + 20.0) - 8.2)
    mu1 = -math.sqrt((_LUNACEK_MU0 * _LUNACEK_MU0 - 1.0) / s)
    a = y - _LUNACEK_MU0
    b = y - mu1
    return float(
        min(a @ a, d + s * (b @ b)) + 10.0 * np.sum(1.0 - np.cos(_TWO_PI * a))
    )


def deceptive_multimodal(y: np.ndarray) -> float:
    r = float(np.sqrt(y @ y))
    if r == 0.0:
        return 0.0
    return r * (1.0 + 0.9 * math.cos(_TWO_PI * math.log2(r)))


def onemax(v: np.ndarray) -> float:
    return float(np.sum(v != 1.0))


def leadingones(v: np.ndarray) -> float:
    d = len(v)
    ones = np.flatnonzero(v != 1.0)
    return float(d - (ones[0] if ones.size else d))


@dataclass(frozen=True)
class BaseFunction:
    """Catalog entry: callable, default domain builder, analytic minimum."""

    name: str
    fn: Callable[[np.ndarray], float]
    discrete: bool = False
    multimodal: bool = False
    minimum_value: float = 0.0

    def minimum_point(self, dimension: int) -> np.ndarray | None:
        if self.name == "rosenbrock":
            return np.ones(dimension)
        if self.name == "lunacek":
            return np.full(dimension, _LUNACEK_MU0)
        if self.name in ("onemax", "leadingones"):
            return np.ones(dimension)
        return np.zeros(dimension)

    def default_domain(self, dimension: int) -> DomainSpec:
        if self.name in ("onemax", "leadingones"):
            return DomainSpec([integer(0, 1) for _ in range(dimension)])
        return DomainSpec([continuous() for _ in range(dimension)])


CATALOG: dict[str, BaseFunction] = {
    f.name: f
    for f in (
        BaseFunction("sphere", sphere),
        BaseFunction("cigar", cigar),
        BaseFunction("ellipsoid", ellipsoid),
        BaseFunction("hm", hm, multimodal=True),
        BaseFunction("ackley", ackley, multimodal=True),
        BaseFunction("rosenbrock", rosenbrock),
        BaseFunction("griewank", griewank, multimodal=True),
        BaseFunction("lunacek", lunacek, multimodal=True),
        BaseFunction("deceptive_multimodal", deceptive_multimodal, multimodal=True),
        BaseFunction("onemax", onemax, discrete=True),
        BaseFunction("leadingones", leadingones, discrete=True),
    )
}


def base_function_catalog() -> dict[str, BaseFunction]:
    """All base functions with their analytic minima."""
    return dict(CATALOG)


def get_base(name: str) -> BaseFunction:
    try:
        return CATALOG[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown base function {name!r}; known: {sorted(CATALOG)}"
        ) from None
