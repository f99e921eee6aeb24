"""Named benchmark suites and their serializable manifests.

A suite pins every function instance (including transform seeds), the budget
grid, and the parallelism grid, so that ``(manifest, master_seed)`` fully
reproduces an experiment.  Shipped suites are desk-scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigurationError
from ..seeds import derive_seed
from .composite import lsgo_composite
from .transforms import CompositeBlock, FunctionSpec, TransformSpec
from .tsp import simple_tsp

MANIFEST_SCHEMA = "optbench-suite-v1"


@dataclass(frozen=True)
class SuiteProblem:
    problem_id: str
    spec: FunctionSpec
    budgets: tuple[int, ...]
    num_workers: tuple[int, ...] = (1,)

    def __post_init__(self):
        if not self.budgets:
            raise ConfigurationError("a suite problem needs at least one budget")
        if min(self.budgets) < max(self.num_workers):
            raise ConfigurationError(
                f"problem {self.problem_id!r}: every budget must be >= every num_workers"
            )


@dataclass(frozen=True)
class BenchmarkSuite:
    name: str
    problems: tuple[SuiteProblem, ...]

    def __post_init__(self):
        ids = [p.problem_id for p in self.problems]
        if len(set(ids)) != len(ids):
            raise ConfigurationError("duplicate problem ids in suite")


def _suite_seed(suite: str, *labels) -> int:
    return derive_seed(0, ["suite", suite, *labels])


def _yabbob_lite() -> BenchmarkSuite:
    # rotation on the non-separable half keeps both cases represented
    bases = ("sphere", "cigar", "ellipsoid", "hm", "ackley", "rosenbrock", "griewank", "lunacek")
    rotated = {"cigar", "ellipsoid", "rosenbrock", "lunacek"}
    problems = []
    for d in (5, 20):
        for i, base in enumerate(bases):
            spec = FunctionSpec(
                base=base,
                dimension=d,
                transform=TransformSpec(
                    translation_std=1.0,
                    rotate=base in rotated,
                    transform_seed=_suite_seed("yabbob_lite", base, d),
                ),
            )
            problems.append(
                SuiteProblem(f"{base}-d{d}", spec, budgets=(100, 1000, 10000))
            )
    return BenchmarkSuite("yabbob_lite", tuple(problems))


def _parallel_multimodal_lite() -> BenchmarkSuite:
    bases = ("ackley", "rosenbrock", "deceptive_multimodal", "griewank", "lunacek", "hm")
    problems = []
    d = 10
    for base in bases:
        spec = FunctionSpec(
            base=base,
            dimension=d,
            transform=TransformSpec(
                translation_std=1.0,
                transform_seed=_suite_seed("parallel_multimodal_lite", base, d),
            ),
        )
        problems.append(
            SuiteProblem(f"{base}-d{d}", spec, budgets=(1000, 10000), num_workers=(250,))
        )
    return BenchmarkSuite("parallel_multimodal_lite", tuple(problems))


def _noisy_lite() -> BenchmarkSuite:
    problems = []
    for base in ("sphere", "hm"):
        for d in (5, 25):
            for noise_std in (0.1, 1.0, 10.0):
                spec = FunctionSpec(
                    base=base,
                    dimension=d,
                    transform=TransformSpec(
                        translation_std=1.0,
                        noise_std=noise_std,
                        transform_seed=_suite_seed("noisy_lite", base, d, f"{noise_std:g}"),
                    ),
                )
                problems.append(
                    SuiteProblem(f"{base}-d{d}-n{noise_std:g}", spec, budgets=(1000, 5000))
                )
    return BenchmarkSuite("noisy_lite", tuple(problems))


def _lsgo_lite() -> BenchmarkSuite:
    problems = []
    for d, blocks in ((50, 5), (200, 8)):
        for overlap in (False, True):
            spec = lsgo_composite(
                d, blocks, _suite_seed("lsgo_lite", d, int(overlap)), overlap=overlap
            )
            tag = "ov" if overlap else "sep"
            problems.append(SuiteProblem(f"lsgo-d{d}-{tag}", spec, budgets=(3000,)))
    return BenchmarkSuite("lsgo_lite", tuple(problems))


def _discrete_lite() -> BenchmarkSuite:
    problems = []
    for base, d in (("onemax", 20), ("onemax", 100), ("leadingones", 20)):
        spec = FunctionSpec(base=base, dimension=d)
        problems.append(SuiteProblem(f"{base}-d{d}", spec, budgets=(2000,)))
    problems.append(
        SuiteProblem(
            "simple_tsp-n10",
            simple_tsp(10, _suite_seed("discrete_lite", "tsp", 10)),
            budgets=(2000,),
        )
    )
    return BenchmarkSuite("discrete_lite", tuple(problems))


def _large_smoke() -> BenchmarkSuite:
    # optional large-scale smoke case; not part of the default experiments
    problems = []
    for base in ("sphere", "ellipsoid"):
        spec = FunctionSpec(
            base=base,
            dimension=1000,
            transform=TransformSpec(
                translation_std=1.0, transform_seed=_suite_seed("large_smoke", base)
            ),
        )
        problems.append(SuiteProblem(f"{base}-d1000", spec, budgets=(2000,)))
    return BenchmarkSuite("large_smoke", tuple(problems))


_BUILDERS = {
    "yabbob_lite": _yabbob_lite,
    "parallel_multimodal_lite": _parallel_multimodal_lite,
    "noisy_lite": _noisy_lite,
    "lsgo_lite": _lsgo_lite,
    "discrete_lite": _discrete_lite,
    "large_smoke": _large_smoke,
}


def shipped_suites() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def get_suite(name: str) -> BenchmarkSuite:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ConfigurationError(
            f"unknown suite {name!r}; shipped suites: {', '.join(shipped_suites())}"
        ) from None


# ----------------------------------------------------------------------
# manifest serialization


def _transform_to_obj(t: TransformSpec) -> dict:
    return {
        "translation_std": t.translation_std,
        "far_optimum": t.far_optimum,
        "rotate": t.rotate,
        "symmetrize": t.symmetrize,
        "noise_std": t.noise_std,
        "transform_seed": t.transform_seed,
    }


def _spec_to_obj(spec: FunctionSpec) -> dict:
    obj = {
        "base": spec.base,
        "dimension": spec.dimension,
        "transform": _transform_to_obj(spec.transform),
    }
    if spec.blocks:
        obj["blocks"] = [
            {"base": b.base, "indices": list(b.indices), "weight": b.weight, "seed": b.seed}
            for b in spec.blocks
        ]
    return obj


def _spec_from_obj(obj: dict) -> FunctionSpec:
    blocks = None
    if obj.get("blocks"):
        blocks = tuple(
            CompositeBlock(b["base"], tuple(b["indices"]), b["weight"], b.get("seed"))
            for b in obj["blocks"]
        )
    return FunctionSpec(
        base=obj["base"],
        dimension=obj["dimension"],
        transform=TransformSpec(**obj["transform"]),
        blocks=blocks,
    )


def suite_to_manifest(suite: BenchmarkSuite) -> dict:
    return {
        "schema": MANIFEST_SCHEMA,
        "name": suite.name,
        "problems": [
            {
                "problem_id": p.problem_id,
                "spec": _spec_to_obj(p.spec),
                "budgets": list(p.budgets),
                "num_workers": list(p.num_workers),
            }
            for p in suite.problems
        ],
    }


def suite_from_manifest(obj: dict) -> BenchmarkSuite:
    if obj.get("schema") != MANIFEST_SCHEMA:
        raise ConfigurationError(f"unsupported manifest schema {obj.get('schema')!r}")
    problems = tuple(
        SuiteProblem(
            problem_id=p["problem_id"],
            spec=_spec_from_obj(p["spec"]),
            budgets=tuple(p["budgets"]),
            num_workers=tuple(p["num_workers"]),
        )
        for p in obj["problems"]
    )
    return BenchmarkSuite(obj["name"], problems)


def save_manifest(suite: BenchmarkSuite, path) -> None:
    Path(path).write_text(json.dumps(suite_to_manifest(suite), indent=2, sort_keys=True) + "\n")


def load_manifest(path) -> BenchmarkSuite:
    return suite_from_manifest(json.loads(Path(path).read_text()))


def load_suite(name_or_path: str) -> BenchmarkSuite:
    """Resolve a shipped suite name or a manifest file path."""
    if name_or_path in _BUILDERS:
        return get_suite(name_or_path)
    path = Path(name_or_path)
    if path.exists():
        return load_manifest(path)
    raise ConfigurationError(
        f"{name_or_path!r} is neither a shipped suite ({', '.join(shipped_suites())}) nor a manifest path"
    )
