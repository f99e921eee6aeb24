"""Population-based evolution strategy for noisy objectives (TBPSA).

Samples each generation around a center with mutative self-adaptive step
sizes, recombines the elite quarter into a new center, and doubles the
population whenever the observed elite mean stops improving, so that under
noise the center estimate is averaged over ever more samples.  The
recommendation aggregates the last few center estimates instead of trusting
any single observation; the naive variant recommends the best single
observation instead, which is the behavior proper noisy benchmarking must
distinguish from.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import Candidate, Optimizer, RunContext

SIGMA_MIN = 1e-18
SIGMA_MAX = 1e6


class Tbpsa(Optimizer):
    """Test-based population size adaptation ES."""

    def __init__(
        self,
        context: RunContext,
        seed: int = 0,
        init_point=None,
        naive: bool = False,
        elite_fraction: float = 0.25,
        recommendation_window: int = 5,
        stagnation_limit: int = 2,
        population_size: int | None = None,
    ):
        super().__init__(context, seed=seed, init_point=init_point)
        self.naive = naive
        self.elite_fraction = elite_fraction
        self.recommendation_window = recommendation_window
        self.stagnation_limit = stagnation_limit
        self._view = self.domain.scalar_view
        d = self._view.dim
        self.lam = max(4, population_size or (4 + int(3 * math.log(d))))
        self.generation_size = self.lam
        self.tau = 1.0 / math.sqrt(2.0 * d)
        self.center = (
            self._view.encode(self.init_point) if self.init_point is not None else np.zeros(d)
        )
        self.sigma = 1.0
        self.center_history: list[np.ndarray] = []
        self._gen: list[tuple[np.ndarray, float, float]] = []  # (z, log sigma_i, loss)
        self._meta: dict[int, tuple[np.ndarray, float]] = {}
        self._best_elite_mean = math.inf
        self._stagnation = 0
        self._best_single: tuple[float, np.ndarray] | None = None

    def _ask(self) -> Candidate:
        d = self._view.dim
        log_sigma_i = math.log(self.sigma) + self.tau * self.rng.standard_normal()
        z = self.center + math.exp(log_sigma_i) * self.rng.standard_normal(d)
        cand = self._new_candidate(self._view.decode(z))
        self._meta[cand.id] = (z, log_sigma_i)
        return cand

    def _tell(self, candidate: Candidate, loss: float) -> None:
        if self._best_single is None or loss < self._best_single[0]:
            self._best_single = (loss, candidate.point)
        meta = self._meta.pop(candidate.id, None)
        if meta is None:
            meta = (self._view.encode(candidate.point), math.log(self.sigma))
        self._gen.append((meta[0], meta[1], loss))
        if len(self._gen) >= self.lam:
            self._update_generation()

    def _update_generation(self) -> None:
        order = sorted(range(len(self._gen)), key=lambda i: self._gen[i][2])
        k = max(1, math.ceil(self.lam * self.elite_fraction))
        elite = [self._gen[i] for i in order[:k]]
        self._gen.clear()
        zs = np.asarray([e[0] for e in elite])
        self.center = zs.mean(axis=0)
        log_sigma = float(np.mean([e[1] for e in elite]))
        self.sigma = min(max(math.exp(log_sigma), SIGMA_MIN), SIGMA_MAX)
        self.center_history.append(self.center)
        elite_mean = float(np.mean([e[2] for e in elite]))
        if elite_mean < self._best_elite_mean:
            self._best_elite_mean = elite_mean
            self._stagnation = 0
        else:
            self._stagnation += 1
            if self._stagnation >= self.stagnation_limit:
                self.lam *= 2  # double the population to average more noise
                self.generation_size = self.lam
                self._stagnation = 0

    def _recommend(self):
        if self.naive:
            if self._best_single is None:
                return None
            return self._best_single[1]
        if not self.center_history:
            return None
        window = self.center_history[-self.recommendation_window :]
        return self._view.decode(np.mean(window, axis=0))
