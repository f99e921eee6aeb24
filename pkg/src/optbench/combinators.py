"""Algorithm composition: chaining, bet-and-run, progressive widening.

Combinators are optimizers whose asks route to child optimizers built on
demand.  Child handles are wrapped candidate-by-candidate so ids stay local
to each handle, budgets are conserved exactly, and the parallelism contract
forwards to the active child.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .algospec import BetAndRun, Chain
from .core import Candidate, Optimizer, RunContext
from .domain import DomainSpec
from .errors import BudgetExceededError, ConfigurationError

#: builder(child_spec, child_context, child_path, init_point) -> Optimizer
ChildBuilder = Callable[..., Optimizer]


class _RoutingOptimizer(Optimizer):
    """Shared child-candidate wrapping for composite optimizers."""

    def __init__(self, context: RunContext, seed: int = 0, init_point=None):
        super().__init__(context, seed=seed, init_point=init_point)
        self._route: dict[int, tuple[Optimizer, Candidate]] = {}
        self._reverse: dict[tuple[int, int], Candidate] = {}

    def _wrap(self, child_key: int, child: Optimizer, child_cand: Candidate) -> Candidate:
        known = self._reverse.get((child_key, child_cand.id))
        if known is not None:
            return known  # child re-asked one of its own candidates
        cand = self._new_candidate(child_cand.point)
        self._route[cand.id] = (child, child_cand)
        self._reverse[(child_key, child_cand.id)] = cand
        return cand

    def _tell(self, candidate: Candidate, loss: float) -> None:
        entry = self._route.get(candidate.id)
        if entry is not None:
            child, child_cand = entry
            child.tell(child_cand, loss)
        self._after_tell(candidate, loss)

    def _after_tell(self, candidate: Candidate, loss: float) -> None:
        pass


def chain_allocations(budget: int, fractions, asks) -> list[int]:
    """Per-child evaluation counts: absolute ask counts first, floored
    fractions of the remainder after them, leftover to the last fractional
    child.
    """
    n = len(fractions)
    allocs = [0] * n
    remaining = budget
    for i in range(n):
        if asks[i] is not None:
            allocs[i] = min(asks[i], remaining)
            remaining -= allocs[i]
    net = remaining
    last_fractional = None
    for i in range(n):
        if asks[i] is None:
            allocs[i] = int(net * fractions[i])
            remaining -= allocs[i]
            last_fractional = i
    if last_fractional is not None:
        allocs[last_fractional] += remaining
    elif remaining > 0:
        allocs[-1] += remaining  # all-absolute chains roll leftovers to the end
    return allocs


class ChainOptimizer(_RoutingOptimizer):
    """Run children in turn; each starts from the best point found so far.

    The final recommendation is the last child's recommendation, with the
    global incumbent as fallback when the recommendation has been observed
    to be worse.
    """

    def __init__(
        self,
        context: RunContext,
        spec: Chain,
        builder: ChildBuilder,
        path: tuple = (),
        seed: int = 0,
        init_point=None,
    ):
        super().__init__(context, seed=seed, init_point=init_point)
        self.spec = spec
        self._builder = builder
        self._path = path
        self._allocs = chain_allocations(context.budget, spec.fractions, spec.asks)
        self._active_index = -1
        self._active: Optimizer | None = None
        self._last_built: Optimizer | None = None
        self._active_alloc = 0
        self._unused = 0  # rolled over from children that quit early
        self._advance()

    def _advance(self) -> None:
        while True:
            self._active_index += 1
            if self._active_index >= len(self.spec.children):
                self._active = None
                return
            alloc = self._allocs[self._active_index] + self._unused
            self._unused = 0
            if alloc <= 0:
                continue
            child_context = self.context.with_budget(alloc)
            init = self.incumbent.point if self.incumbent is not None else self.init_point
            self._active = self._builder(
                self.spec.children[self._active_index],
                child_context,
                self._path + (self._active_index,),
                init,
            )
            self._last_built = self._active
            self._active_alloc = alloc
            return

    def _ask(self) -> Candidate:
        while self._active is not None and self._active.num_asks >= self._active_alloc:
            self._advance()
        if self._active is None:
            raise BudgetExceededError("chain children exhausted their allocations")
        try:
            child_cand = self._active.ask()
        except BudgetExceededError:
            # an early-stopping child rolls its remaining budget forward
            self._unused = self._active_alloc - self._active.num_asks
            self._advance()
            if self._active is None:
                raise
            child_cand = self._active.ask()
        return self._wrap(self._active_index, self._active, child_cand)

    def _recommend(self):
        final = self._active or self._last_built
        if final is None or final.num_tells == 0:
            return None
        rec = final.recommend()
        if rec.observations and self.incumbent is not None and rec.mean_loss > self.incumbent_loss:
            return self.incumbent
        return rec


class BetAndRunOptimizer(_RoutingOptimizer):
    """Phase 1 splits a budget slice round-robin over all children; the
    child with the best told loss survives and gets everything left."""

    def __init__(
        self,
        context: RunContext,
        spec: BetAndRun,
        builder: ChildBuilder,
        path: tuple = (),
        seed: int = 0,
        init_point=None,
    ):
        super().__init__(context, seed=seed, init_point=init_point)
        self.spec = spec
        m = len(spec.children)
        phase_total = int(context.budget * spec.phase_fraction)
        base = phase_total // m
        if base < 1:
            raise ConfigurationError(
                f"phase-1 budget {phase_total} cannot cover {m} children"
            )
        self._phase_allocs = [base + (phase_total - base * m if i == 0 else 0) for i in range(m)]
        rest = context.budget - phase_total
        self.children = [
            builder(
                child,
                context.with_budget(self._phase_allocs[i] + rest),
                path + (i,),
                init_point,
            )
            for i, child in enumerate(spec.children)
        ]
        self._best: list[float] = [math.inf] * m
        self._cursor = 0
        self.survivor: int | None = None

    def _phase1_done(self) -> bool:
        return all(
            child.num_asks >= alloc for child, alloc in zip(self.children, self._phase_allocs)
        )

    def _ask(self) -> Candidate:
        if self.survivor is None and self._phase1_done():
            self._pick_survivor()
        if self.survivor is not None:
            idx = self.survivor
        else:
            idx = self._cursor % len(self.children)
            probes = 0
            while self.children[idx].num_asks >= self._phase_allocs[idx]:
                self._cursor += 1
                idx = self._cursor % len(self.children)
                probes += 1
                if probes > len(self.children):
                    raise BudgetExceededError("phase-1 allocations exhausted")
            self._cursor += 1
        child = self.children[idx]
        return self._wrap(idx, child, child.ask())

    def _after_tell(self, candidate: Candidate, loss: float) -> None:
        entry = self._route.get(candidate.id)
        if entry is None:
            return
        child = entry[0]
        idx = self.children.index(child)
        if loss < self._best[idx]:
            self._best[idx] = loss
        if self.survivor is None and self.num_tells >= sum(self._phase_allocs):
            self._pick_survivor()

    def _pick_survivor(self) -> None:
        # ties go to the lowest child index
        self.survivor = int(np.argmin(self._best))

    def _recommend(self):
        if self.survivor is not None:
            rec = self.children[self.survivor].recommend()
            if not rec.is_default_center:
                return rec
        return None


class ProgressiveWidening(_RoutingOptimizer):
    """Optimize a growing prefix of coordinates, pinning the rest.

    At evaluation ``t`` only the first ``active(t) = min(d, 1 + floor(t /
    ceil(0.8 budget / d)))`` coordinates are free; the child is rebuilt on
    the wider subspace at each widening, warm-started from the best point.
    """

    def __init__(
        self,
        context: RunContext,
        child_spec,
        builder: ChildBuilder,
        path: tuple = (),
        seed: int = 0,
        init_point=None,
    ):
        super().__init__(context, seed=seed, init_point=init_point)
        if not self.domain.all_continuous:
            raise ConfigurationError("progressive widening needs a continuous domain")
        self.child_spec = child_spec
        self._builder = builder
        self._path = path
        d = len(self.domain.variables)
        self._step = max(1, math.ceil(0.8 * context.budget / d))
        self._center = self.domain.center()
        self._active_dims = 0
        self._child: Optimizer | None = None
        self._rebuilds = 0

    def active_dims(self, tells: int) -> int:
        return min(len(self.domain.variables), 1 + tells // self._step)

    def _ensure_child(self) -> Optimizer:
        k = self.active_dims(self.num_tells)
        if self._child is None or k > self._active_dims:
            self._active_dims = k
            remaining = self.budget - self.num_tells
            child_context = RunContext(
                domain=DomainSpec(self.domain.variables[:k]),
                budget=max(1, remaining),
                num_workers=min(self.num_workers, max(1, remaining)),
                noisy=self.noisy,
                master_seed=self.context.master_seed,
            )
            init = None
            if self.incumbent is not None:
                init = self.incumbent.point[:k]
            elif self.init_point is not None:
                init = self.init_point[:k]
            self._child = self._builder(
                self.child_spec, child_context, self._path + (self._rebuilds,), init
            )
            self._rebuilds += 1
        return self._child

    def _ask(self) -> Candidate:
        child = self._ensure_child()
        child_cand = child.ask()
        point = self._center.copy()
        point[: self._active_dims] = child_cand.point
        cand = self._new_candidate(point)
        self._route[cand.id] = (child, child_cand)
        return cand

    def _recommend(self):
        if self._child is None or self._child.num_tells == 0:
            return None
        rec = self._child.recommend()
        point = self._center.copy()
        point[: len(rec.point)] = rec.point
        return point
