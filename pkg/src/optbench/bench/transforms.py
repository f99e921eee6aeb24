"""Benchmark instances: base function + transform stack + optional blocks.

A continuous instance evaluates ``g(x) = f(S M (x - t)) + noise_std * nu``
with a fresh standard normal ``nu`` per call.  Transforms apply in the fixed
order translate, rotate, symmetrize; the optimum therefore sits at ``t`` in
original coordinates (shifted by the base minimizer where it is not zero).
The noise-free part ``g0`` stays available as an oracle for simple-regret
scoring and never spends evaluation budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..domain import DomainSpec, continuous
from ..errors import ConfigurationError
from ..seeds import derive_seed
from .functions import BaseFunction, get_base
from .tsp import decode_tour, tour_length, tsp_cities, tsp_domain


@dataclass(frozen=True)
class TransformSpec:
    """How a base function is disguised into a benchmark instance.

    ``far_optimum`` multiplies the translation standard deviation by 5
    (variance times 25) to test recovery from a bad initialization.
    """

    translation_std: float = 0.0
    far_optimum: bool = False
    rotate: bool = False
    symmetrize: bool = False
    noise_std: float = 0.0
    transform_seed: int = 0

    def __post_init__(self):
        if self.translation_std < 0 or self.noise_std < 0:
            raise ConfigurationError("standard deviations must be non-negative")

    @property
    def effective_translation_std(self) -> float:
        return self.translation_std * (5.0 if self.far_optimum else 1.0)

    @property
    def is_affine(self) -> bool:
        return self.translation_std > 0 or self.rotate or self.symmetrize


@dataclass(frozen=True)
class CompositeBlock:
    """One subcomponent of a composite function.

    ``seed`` selects the block's own shift and rotation; ``None`` leaves the
    block untransformed.
    """

    base: str
    indices: tuple[int, ...]
    weight: float
    seed: int | None = None

    def __post_init__(self):
        if self.weight == 0:
            raise ConfigurationError("composite block weights must be nonzero")
        if not self.indices:
            raise ConfigurationError("composite blocks need at least one variable")


@dataclass(frozen=True)
class FunctionSpec:
    """A reproducible benchmark instance description."""

    base: str
    dimension: int
    transform: TransformSpec = field(default_factory=TransformSpec)
    blocks: tuple[CompositeBlock, ...] | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ConfigurationError("dimension must be positive")
        if self.base == "lsgo_composite":
            if not self.blocks:
                raise ConfigurationError("composite specs need at least one block")
            for block in self.blocks:
                if max(block.indices) >= self.dimension:
                    raise ConfigurationError("block indices exceed the dimension")
        elif self.blocks:
            raise ConfigurationError("only lsgo_composite specs carry blocks")

    @property
    def instance_name(self) -> str:
        parts = [self.base, f"d{self.dimension}"]
        t = self.transform
        if t.translation_std > 0:
            parts.append("far" if t.far_optimum else "tr")
        if t.rotate:
            parts.append("rot")
        if t.symmetrize:
            parts.append("sym")
        if t.noise_std > 0:
            parts.append(f"n{t.noise_std:g}")
        return "-".join(parts)


def _haar_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    gauss = rng.standard_normal((d, d))
    q, r = np.linalg.qr(gauss)
    return q * np.sign(np.diag(r))


def _is_continuous_base(name: str) -> bool:
    if name in ("simple_tsp",):
        return False
    if name == "lsgo_composite":
        return True
    return not get_base(name).discrete


class BenchmarkFunction:
    """Callable instance with a noise-free oracle and analytic minimum.

    Calling the object returns a (possibly noisy) loss; ``noise_free`` is
    the oracle used only for scoring recommendations.
    """

    def __init__(self, spec: FunctionSpec, noise_seed: int | None = None):
        self.spec = spec
        t = spec.transform
        d = spec.dimension
        if not _is_continuous_base(spec.base) and t.is_affine:
            raise ConfigurationError(
                f"translate/rotate/symmetrize do not apply to {spec.base!r}"
            )
        rng = np.random.default_rng(derive_seed(t.transform_seed, ["transform"]))
        self._t = None
        self._M = None
        self._S = None
        if t.translation_std > 0:
            self._t = t.effective_translation_std * rng.standard_normal(d)
        if t.rotate:
            self._M = _haar_orthogonal(rng, d)
        if t.symmetrize:
            self._S = np.where(rng.random(d) < 0.5, -1.0, 1.0)
        self.noise_std = t.noise_std
        self._noise_rng = np.random.default_rng(
            derive_seed(t.transform_seed if noise_seed is None else noise_seed, ["noise"])
        )

        self._base: BaseFunction | None = None
        self._blocks = None
        self._cities = None
        if spec.base == "lsgo_composite":
            self._blocks = []
            for block in spec.blocks:
                entry = get_base(block.base)
                if entry.discrete:
                    raise ConfigurationError("composite blocks must be continuous bases")
                idx = np.asarray(block.indices, dtype=int)
                bt = bm = None
                if block.seed is not None:
                    brng = np.random.default_rng(derive_seed(block.seed, ["block"]))
                    bt = brng.standard_normal(len(idx))
                    bm = _haar_orthogonal(brng, len(idx))
                self._blocks.append((entry.fn, idx, block.weight, bt, bm, entry))
        elif spec.base == "simple_tsp":
            self._cities = tsp_cities(d, t.transform_seed)
        else:
            self._base = get_base(spec.base)

    # ------------------------------------------------------------------
    @property
    def domain(self) -> DomainSpec:
        spec = self.spec
        if spec.base == "simple_tsp":
            return tsp_domain(spec.dimension)
        if spec.base == "lsgo_composite":
            return DomainSpec([continuous() for _ in range(spec.dimension)])
        return self._base.default_domain(spec.dimension)

    @property
    def known_minimum(self) -> float | None:
        """Minimum value of the noise-free instance, when analytic."""
        if self.spec.base == "simple_tsp":
            return None
        if self.spec.base == "lsgo_composite":
            seen: set[int] = set()
            for block in self.spec.blocks:
                if seen.intersection(block.indices):
                    return None  # overlapping blocks can conflict
                seen.update(block.indices)
            return 0.0
        return self._base.minimum_value

    @property
    def minimum_point(self) -> np.ndarray | None:
        if self.known_minimum is None:
            return None
        if self.spec.base == "lsgo_composite":
            inner = np.zeros(self.spec.dimension)
            for (fn, idx, _w, bt, bm, entry) in self._blocks:
                m = entry.minimum_point(len(idx))
                if bt is not None:
                    m = bt + bm.T @ m
                inner[idx] = m
        else:
            inner = self._base.minimum_point(self.spec.dimension)
        if inner is None:
            return None
        x = inner
        if self._S is not None:
            x = self._S * x
        if self._M is not None:
            x = self._M.T @ x
        if self._t is not None:
            x = x + self._t
        return x

    # ------------------------------------------------------------------
    def noise_free(self, point) -> float:
        y = np.asarray(point, dtype=float)
        if self._cities is not None:
            return tour_length(self._cities, decode_tour(y))
        if self._t is not None:
            y = y - self._t
        if self._M is not None:
            y = self._M @ y
        if self._S is not None:
            y = self._S * y
        if self._blocks is not None:
            total = 0.0
            for fn, idx, weight, bt, bm, _entry in self._blocks:
                sub = y[idx]
                if bt is not None:
                    sub = bm @ (sub - bt)
                total += weight * fn(sub)
            return total
        return self._base.fn(y)

    def __call__(self, point) -> float:
        value = self.noise_free(point)
        if self.noise_std > 0:
            value += self.noise_std * self._noise_rng.standard_normal()
        return value

    def reseed_noise(self, noise_seed: int) -> None:
        """Restart the per-evaluation noise stream (one stream per run)."""
        self._noise_rng = np.random.default_rng(derive_seed(noise_seed, ["noise"]))


def make_function(spec: FunctionSpec, noise_seed: int | None = None) -> BenchmarkFunction:
    """Instantiate a benchmark: transforms drawn from the transform seed."""
    return BenchmarkFunction(spec, noise_seed=noise_seed)
