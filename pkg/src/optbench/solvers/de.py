"""Differential evolution (rand/1/bin) with optional Latin-hypercube init."""

from __future__ import annotations

import numpy as np

from ..core import Candidate, Optimizer, RunContext
from ..errors import ConfigurationError


class DifferentialEvolution(Optimizer):
    """rand/1/bin DE over the standardized domain.

    The first ``NP`` asks are quasi-uniform initial samples (Latin hypercube
    when ``lhs_init``); afterwards each ask is a binomial crossover of the
    next population slot with a mutant ``a + F (b - c)`` built from three
    distinct other slots.  A slot is replaced when the trial's loss does not
    exceed the slot's, so slot losses never increase in noise-free mode.
    """

    def __init__(
        self,
        context: RunContext,
        seed: int = 0,
        init_point=None,
        population_size: int | None = None,
        f_weight: float = 0.8,
        crossover: float = 0.5,
        lhs_init: bool = False,
    ):
        super().__init__(context, seed=seed, init_point=init_point)
        self._view = self.domain.scalar_view
        d = self._view.dim
        np_size = population_size or (30 if lhs_init else max(30, d))
        if np_size < 4:
            raise ConfigurationError("DE needs a population of at least 4")
        if not (0.0 <= f_weight <= 2.0):  # 0 is degenerate but well-defined
            raise ConfigurationError("differential weight F must lie in [0, 2]")
        if not (0.0 <= crossover <= 1.0):
            raise ConfigurationError("crossover rate CR must lie in [0, 1]")
        self.np_size = np_size
        self.generation_size = np_size
        self.f_weight = f_weight
        self.crossover = crossover
        self.positions = np.zeros((np_size, d))
        self.losses = np.full(np_size, np.inf)
        self._initialized = np.zeros(np_size, dtype=bool)
        self._init_samples = self._draw_init(lhs_init)
        if self.init_point is not None:
            self._init_samples[0] = self._view.encode(self.init_point)
        self._cursor = 0
        self._slot_of: dict[int, tuple[int, np.ndarray]] = {}

    def _draw_init(self, lhs_init: bool) -> np.ndarray:
        lo, hi = self._view.init_box()
        d = self._view.dim
        if lhs_init:
            u = np.empty((self.np_size, d))
            for j in range(d):
                strata = (self.rng.permutation(self.np_size) + self.rng.random(self.np_size))
                u[:, j] = strata / self.np_size
        else:
            u = self.rng.random((self.np_size, d))
        return lo + u * (hi - lo)

    def _ask(self) -> Candidate:
        slot = self._cursor % self.np_size
        self._cursor += 1
        if not self._initialized[slot]:
            z = self._init_samples[slot].copy()
        else:
            z = self._trial(slot)
        cand = self._new_candidate(self._view.decode(z))
        self._slot_of[cand.id] = (slot, z)
        return cand

    def _trial(self, slot: int) -> np.ndarray:
        ready = np.flatnonzero(self._initialized)
        pool = ready[ready != slot]
        if len(pool) < 3:
            # not enough evaluated slots yet: fall back to a fresh sample
            lo, hi = self._view.init_box()
            return lo + self.rng.random(self._view.dim) * (hi - lo)
        a, b, c = self.rng.choice(pool, size=3, replace=False)
        mutant = self.positions[a] + self.f_weight * (self.positions[b] - self.positions[c])
        d = self._view.dim
        mask = self.rng.random(d) < self.crossover
        mask[self.rng.integers(d)] = True  # at least one coordinate from the mutant
        return np.where(mask, mutant, self.positions[slot])

    def _tell(self, candidate: Candidate, loss: float) -> None:
        entry = self._slot_of.pop(candidate.id, None)
        if entry is None:
            return  # re-tell of an old candidate: population already settled
        slot, z = entry
        if loss <= self.losses[slot]:
            self.positions[slot] = z
            self.losses[slot] = loss
        self._initialized[slot] = True
