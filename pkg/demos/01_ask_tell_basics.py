"""Ask/tell/recommend basics.

An optimizer never calls your function: you ask it for candidates, evaluate
them however you like, and tell it the losses.  The recommendation at the
end is the optimizer's estimate of the minimizer, which may differ from any
asked point.
"""

import numpy as np

from optbench import DomainSpec, RunContext, build_optimizer, continuous

# A three-dimensional unbounded search space; scale=1.0 tells the solvers
# how wide their initial sampling should be.
domain = DomainSpec([continuous(scale=1.0) for _ in range(3)])
context = RunContext(domain, budget=200, master_seed=42)

target = np.array([0.7, -1.2, 0.4])


def loss(x):
    return float((x - target) @ (x - target))


optimizer = build_optimizer("cma", context)

for i in range(context.budget):
    candidate = optimizer.ask()
    optimizer.tell(candidate, loss(candidate.point))

recommendation = optimizer.recommend()
print("recommendation:", np.round(recommendation.point, 4))
print("loss:          ", loss(recommendation.point))

# The same loop, batteries included: run_loop drives ask/tell in waves of
# num_workers and returns the recommendation plus the full loss history.
from optbench import run_loop

context = RunContext(domain, budget=200, num_workers=4, master_seed=42)
recommendation, history = run_loop("chain(cma,powell;0.5,0.5)", loss, context)
print("chained recommendation loss:", loss(recommendation.point))
print("evaluations used:", len(history))
