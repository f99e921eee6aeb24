"""Small traveling-salesman instances over random planar cities.

The tour encoding is a Lehmer code: variable ``i`` selects the index of the
next city within the list of not-yet-visited cities, so every encoding in
the integer domain decodes to a valid closed tour.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from ..domain import DomainSpec, integer
from ..errors import ConfigurationError
from ..seeds import derive_seed


def tsp_cities(n_cities: int, seed: int) -> np.ndarray:
    """Uniform cities in the unit square, deterministic in ``seed``."""
    rng = np.random.default_rng(derive_seed(seed, ["tsp-cities"]))
    return rng.random((n_cities, 2))


def tsp_domain(n_cities: int) -> DomainSpec:
    return DomainSpec([integer(0, n_cities - 1 - i) for i in range(n_cities)])


def decode_tour(encoding) -> list[int]:
    """Map a Lehmer-code encoding to a visiting order of all cities."""
    remaining = list(range(len(encoding)))
    tour = []
    for value in encoding:
        tour.append(remaining.pop(int(value)))
    return tour


def tour_length(cities: np.ndarray, tour) -> float:
    pts = cities[np.asarray(tour, dtype=int)]
    diffs = pts - np.roll(pts, -1, axis=0)
    return float(np.sqrt((diffs * diffs).sum(axis=1)).sum())


def enumerate_tour_lengths(cities: np.ndarray) -> list[float]:
    """Closed-tour lengths of all (n-1)! orderings that fix city 0 first.

    Exhaustive oracle for small instances; every decodable tour length
    appears in this list.
    """
    n = len(cities)
    lengths = []
    for rest in permutations(range(1, n)):
        lengths.append(tour_length(cities, (0,) + rest))
    return lengths


def simple_tsp(n_cities: int, seed: int):
    """A FunctionSpec for a closed-tour length over random planar cities."""
    if n_cities < 3:
        raise ConfigurationError("simple_tsp needs at least 3 cities")
    from .transforms import FunctionSpec, TransformSpec

    return FunctionSpec(
        base="simple_tsp",
        dimension=n_cities,
        transform=TransformSpec(transform_seed=seed),
    )
