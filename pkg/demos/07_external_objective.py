"""Optimizing an objective that lives in another process.

The harness can drive any program that speaks a tiny line-based JSON
protocol on stdio: a hello message declaring the domain, then eval/loss
pairs.  This demo writes such a child program to disk, optimizes it, and
scores the recommendation with one extra evaluation.
"""

import sys
import tempfile
import textwrap
from pathlib import Path

from optbench import RunContext, run_loop
from optbench.harness import external_evaluator_session

child_source = textwrap.dedent(
    """
    import json, sys

    print(json.dumps({
        "type": "hello",
        "dimension": 4,
        "variables": [{"kind": "continuous"}] * 4,
    }), flush=True)

    for line in sys.stdin:
        msg = json.loads(line)
        x = msg["point"]
        value = sum((v - 0.5) ** 2 for v in x)
        print(json.dumps({"type": "loss", "id": msg["id"], "value": value}), flush=True)
    """
)

child_path = Path(tempfile.mkdtemp(prefix="optbench_demo_")) / "objective.py"
child_path.write_text(child_source)

with external_evaluator_session(f"{sys.executable} {child_path}") as objective:
    print("handshake domain:", objective.domain)
    context = RunContext(objective.domain, budget=150, master_seed=5)
    recommendation, history = run_loop("abbo", objective, context)
    final = objective(recommendation.point)  # one extra eval to score it

print("best told loss:     ", min(loss for _i, loss in history))
print("recommendation loss:", final)
print(
    "\nequivalent one-liner:\n"
    f'  optbench eval-server --cmd "{sys.executable} {child_path}" --algs abbo --budget 150'
)
