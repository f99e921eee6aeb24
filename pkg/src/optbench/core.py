"""Ask/tell/recommend optimizer contract and the evaluation run loop.

The interaction pattern is: ``ask`` proposes a candidate, ``tell`` reports
its loss, ``recommend`` returns the solver's estimate of the optimum, which
is allowed to differ from any asked point.  Parallelism is modeled logically
through up to ``num_workers`` asked-but-untold candidates; handles are
single-threaded and never spawn threads themselves.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .domain import DomainSpec
from .errors import (
    BudgetExceededError,
    ConfigurationError,
    ContractError,
    EvaluationError,
    InvalidLossError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunContext:
    """Everything an optimizer may know about a run before it starts."""

    domain: DomainSpec
    budget: int
    num_workers: int = 1
    noisy: bool = False
    master_seed: int = 0

    def __post_init__(self):
        if self.budget < 1:
            raise ConfigurationError("budget must be a positive integer")
        if not (1 <= self.num_workers <= self.budget):
            raise ConfigurationError("num_workers must satisfy 1 <= w <= budget")

    def with_budget(self, budget: int, num_workers: int | None = None) -> "RunContext":
        w = self.num_workers if num_workers is None else num_workers
        return replace(self, budget=budget, num_workers=min(w, budget))


@dataclass(eq=False)
class Candidate:
    """One proposed point and the losses observed for it.

    Observations are only appended through ``tell``; re-tells of the same
    candidate are legal and used by resampling solvers under noise.
    """

    id: int
    point: np.ndarray
    observations: list[float] = field(default_factory=list)
    is_default_center: bool = False

    @property
    def num_observations(self) -> int:
        return len(self.observations)

    @property
    def mean_loss(self) -> float:
        return sum(self.observations) / len(self.observations)

    @property
    def last_loss(self) -> float:
        return self.observations[-1]

    def __repr__(self) -> str:
        return f"Candidate(id={self.id}, point={np.asarray(self.point)!r}, n_obs={len(self.observations)})"


class Optimizer:
    """Base class for all solvers and combinators.

    Subclasses implement ``_ask`` (return a point, or an already-issued
    Candidate to request a re-tell), ``_tell``, and optionally
    ``_recommend``.  The base class owns budget accounting, the pending set,
    the archive, and incumbent tracking: strict-improvement replacement in
    noise-free mode, lowest mean loss (ties: more observations, then lower
    id) in noisy mode.
    """

    #: generation-based solvers expose their population size for combinators
    generation_size: int | None = None

    def __init__(self, context: RunContext, seed: int = 0, init_point: Sequence[float] | None = None):
        self.context = context
        self.domain = context.domain
        self.budget = context.budget
        self.num_workers = context.num_workers
        self.noisy = context.noisy
        self.rng = np.random.default_rng(seed)
        self.init_point = None if init_point is None else np.asarray(init_point, dtype=float)
        self.archive: list[Candidate] = []
        self.pending: dict[int, Candidate] = {}
        self.incumbent: Candidate | None = None
        self.num_asks = 0
        self.num_tells = 0
        self._candidates: dict[int, Candidate] = {}
        self._next_id = 0
        self._incumbent_loss = math.inf

    # ------------------------------------------------------------------
    # subclass hooks
    def _ask(self) -> "np.ndarray | Candidate":
        raise NotImplementedError

    def _tell(self, candidate: Candidate, loss: float) -> None:
        pass

    def _recommend(self) -> "Candidate | np.ndarray | None":
        return None

    # ------------------------------------------------------------------
    def _new_candidate(self, point) -> Candidate:
        cand = Candidate(self._next_id, np.asarray(point, dtype=float))
        self._candidates[self._next_id] = cand
        self._next_id += 1
        return cand

    def ask(self) -> Candidate:
        if self.num_asks >= self.budget:
            raise BudgetExceededError(
                f"budget of {self.budget} evaluations exhausted after {self.num_asks} asks"
            )
        out = self._ask()
        if isinstance(out, Candidate):
            cand = out
            if self._candidates.get(cand.id) is not cand:
                raise ContractError("solver re-asked a candidate it does not own")
        else:
            cand = self._new_candidate(out)
        self.pending[cand.id] = cand
        self.num_asks += 1
        return cand

    def tell(self, candidate: Candidate, loss: float) -> None:
        loss = float(loss)
        if not math.isfinite(loss):
            raise InvalidLossError(f"loss must be finite, got {loss!r}")
        if self._candidates.get(candidate.id) is not candidate:
            raise ContractError(f"candidate id {candidate.id} unknown to this optimizer")
        first = not candidate.observations
        candidate.observations.append(loss)
        self.pending.pop(candidate.id, None)
        if first:
            self.archive.append(candidate)
        self.num_tells += 1
        self._update_incumbent(candidate, loss)
        self._tell(candidate, loss)

    def recommend(self) -> Candidate:
        if self.num_tells == 0:
            logger.warning("recommend() called before any tell; returning the domain center")
            return Candidate(-1, self.domain.center(), is_default_center=True)
        out = self._recommend()
        if out is None:
            return self.incumbent
        if isinstance(out, Candidate):
            return out
        return Candidate(-2, np.asarray(out, dtype=float))

    # ------------------------------------------------------------------
    def _update_incumbent(self, candidate: Candidate, loss: float) -> None:
        if not self.noisy:
            if loss < self._incumbent_loss:
                self.incumbent = candidate
                self._incumbent_loss = loss
            return
        if self.incumbent is None:
            self.incumbent = candidate
            return
        if candidate is self.incumbent:
            # the incumbent's own mean moved; a full rescan keeps the rule exact
            self.incumbent = min(self.archive, key=self._noisy_key)
            return
        if self._noisy_key(candidate) < self._noisy_key(self.incumbent):
            self.incumbent = candidate

    @staticmethod
    def _noisy_key(cand: Candidate) -> tuple[float, int, int]:
        return (cand.mean_loss, -len(cand.observations), cand.id)

    @property
    def incumbent_loss(self) -> float:
        if self.incumbent is None:
            return math.inf
        return self.incumbent.mean_loss if self.noisy else self._incumbent_loss


def run_loop(
    algorithm,
    function: Callable[[np.ndarray], float],
    context: RunContext,
    checkpoint_callback: Callable[[int, Optimizer], None] | None = None,
) -> tuple[Candidate, list[tuple[int, float]]]:
    """Run ``algorithm`` on ``function`` for exactly ``context.budget`` tells.

    Asks are issued in waves of ``min(num_workers, remaining)``.  Each run is
    executed independently from scratch; results for budget T are not the
    truncation of a longer run.  Returns ``(recommendation, history)`` where
    history holds ``(evaluation_index, loss)`` pairs.

    ``algorithm`` may be an :class:`Optimizer`, an algorithm spec tree, or a
    spec string such as ``"chain(cma,powell;0.5,0.5)"``.
    """
    if isinstance(algorithm, Optimizer):
        handle = algorithm
    else:
        from .wizard import build_optimizer

        handle = build_optimizer(algorithm, context)
    fdomain = getattr(function, "domain", None)
    if fdomain is not None and fdomain != context.domain:
        raise ContractError("function domain does not match the run context domain")
    history: list[tuple[int, float]] = []
    done = 0
    while done < context.budget:
        wave = min(context.num_workers, context.budget - done)
        cands = [handle.ask() for _ in range(wave)]
        for cand in cands:
            try:
                loss = float(function(cand.point))
            except Exception as exc:
                raise EvaluationError(
                    f"objective evaluation {done + 1} failed: {exc}", history=history
                ) from exc
            try:
                handle.tell(cand, loss)
            except InvalidLossError as exc:
                raise EvaluationError(str(exc), history=history) from exc
            done += 1
            history.append((done, loss))
        if checkpoint_callback is not None:
            checkpoint_callback(done, handle)
    return handle.recommend(), history
