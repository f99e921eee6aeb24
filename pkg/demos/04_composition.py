"""Composing algorithms: chaining, bet-and-run, progressive widening.

Chaining runs algorithms in turn, each warm-started from the best point so
far: a global explorer followed by a local polisher is the classic pattern,
and it visibly improves the endgame on ill-conditioned problems.
Bet-and-run spends a slice of the budget racing all children, then gives
everything that remains to the leader.
"""

import numpy as np

from optbench import RunContext, run_loop
from optbench.bench import FunctionSpec, TransformSpec, make_function

spec = FunctionSpec("cigar", 10, TransformSpec(translation_std=1.0, transform_seed=1))
f = make_function(spec)
context = RunContext(f.domain, budget=8000, master_seed=1)

for algorithm in ("cma", "powell", "chain(cma,powell;0.5,0.5)"):
    recommendation, _history = run_loop(algorithm, f, context)
    print(f"{algorithm:28s} final regret {f.noise_free(recommendation.point):.3e}")

# bet-and-run: one fifth of the budget races three solvers round-robin
print()
recommendation, _ = run_loop("bet(cma,de,one-plus-one-es;0.2)", f, context)
print(f"{'bet(cma,de,es;0.2)':28s} final regret {f.noise_free(recommendation.point):.3e}")

# progressive widening pins most coordinates to the center early on and
# releases them on a fixed schedule; built for very high-dimensional noisy
# problems where full-space moves drown in noise
spec = FunctionSpec(
    "sphere", 150, TransformSpec(translation_std=1.0, noise_std=0.5, transform_seed=2)
)
g = make_function(spec, noise_seed=9)
context = RunContext(g.domain, budget=3000, noisy=True, master_seed=2)
recommendation, _ = run_loop("prog(de)", g, context)
print(f"\n{'prog(de), d=150 noisy':28s} final regret {g.noise_free(recommendation.point):.3e}")
