"""Benchmark generation: base functions, transforms, composites, suites."""

from .composite import lsgo_composite
from .functions import BaseFunction, base_function_catalog, get_base
from .suites import (
    BenchmarkSuite,
    SuiteProblem,
    get_suite,
    load_manifest,
    load_suite,
    save_manifest,
    shipped_suites,
    suite_from_manifest,
    suite_to_manifest,
)
from .transforms import (
    BenchmarkFunction,
    CompositeBlock,
    FunctionSpec,
    TransformSpec,
    make_function,
)
from .tsp import (
    decode_tour,
    enumerate_tour_lengths,
    simple_tsp,
    tour_length,
    tsp_cities,
    tsp_domain,
)

__all__ = [
    "BaseFunction",
    "BenchmarkFunction",
    "BenchmarkSuite",
    "CompositeBlock",
    "FunctionSpec",
    "SuiteProblem",
    "TransformSpec",
    "base_function_catalog",
    "decode_tour",
    "enumerate_tour_lengths",
    "get_base",
    "get_suite",
    "load_manifest",
    "load_suite",
    "lsgo_composite",
    "make_function",
    "save_manifest",
    "shipped_suites",
    "simple_tsp",
    "suite_from_manifest",
    "suite_to_manifest",
    "tour_length",
    "tsp_cities",
    "tsp_domain",
]
