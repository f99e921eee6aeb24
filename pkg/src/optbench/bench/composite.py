"""Generator for LSGO-style composite instances.

Builds partially separable functions whose subcomponents (groups of decision
variables) have non-uniform sizes and non-uniform, possibly conflicting,
contributions: block sizes are log-uniform, weights are log-uniform over six
orders of magnitude, and each block gets its own shift and rotation.  In
overlap mode consecutive blocks share a quarter of their variables.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConfigurationError
from ..seeds import derive_seed
from .transforms import CompositeBlock, FunctionSpec, TransformSpec

_BLOCK_BASES = ("ellipsoid", "rosenbrock", "ackley", "sphere")


def lsgo_composite(
    dimension: int,
    num_blocks: int,
    transform_seed: int,
    overlap: bool = False,
) -> FunctionSpec:
    """A composite FunctionSpec with ``num_blocks`` random subcomponents.

    Sizes are log-uniform over ``[2, dimension/2]``, weights log-uniform over
    ``[1e-3, 1e3]``.  Raises when the requested blocks cannot fit in the
    dimension.
    """
    if dimension < 4:
        raise ConfigurationError("composite generation needs dimension >= 4")
    if num_blocks < 1:
        raise ConfigurationError("need at least one block")
    rng = np.random.default_rng(derive_seed(transform_seed, ["lsgo"]))
    hi = max(2, dimension // 2)

    def net_need(size: int, first: bool) -> int:
        return size - (0 if first or not overlap else size // 4)

    min_needed = sum(net_need(2, i == 0) for i in range(num_blocks))
    if min_needed > dimension:
        raise ConfigurationError(
            f"dimension {dimension} too small for {num_blocks} blocks needing {min_needed} variables"
        )
    sizes = []
    available = dimension
    for i in range(num_blocks):
        reserve = sum(net_need(2, False) for _ in range(num_blocks - i - 1))
        size = int(round(math.exp(rng.uniform(math.log(2.0), math.log(hi)))))
        size = min(max(size, 2), hi)
        while net_need(size, i == 0) > available - reserve and size > 2:
            size -= 1  # clamp to the remaining capacity
        sizes.append(size)
        available -= net_need(size, i == 0)
    shared = [0] + [s // 4 if overlap else 0 for s in sizes[1:]]
    order = rng.permutation(dimension)
    blocks = []
    cursor = 0
    for i, size in enumerate(sizes):
        start = cursor - shared[i]
        idx = tuple(int(v) for v in order[start : start + size])
        cursor = start + size
        weight = float(math.exp(rng.uniform(math.log(1e-3), math.log(1e3))))
        blocks.append(
            CompositeBlock(
                base=_BLOCK_BASES[int(rng.integers(len(_BLOCK_BASES)))],
                indices=idx,
                weight=weight,
                seed=derive_seed(transform_seed, ["block", i]),
            )
        )
    return FunctionSpec(
        base="lsgo_composite",
        dimension=dimension,
        transform=TransformSpec(transform_seed=transform_seed),
        blocks=tuple(blocks),
    )
