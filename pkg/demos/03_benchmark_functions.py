"""Benchmark instances: base functions disguised by a transform stack.

A raw test function has its optimum at a known spot (usually the origin).
Benchmarks translate it by a Gaussian shift, optionally rotate it to break
separability, flip signs per coordinate, and add evaluation noise.  The
noise-free oracle stays available for scoring recommendations, and the
analytic minimum survives the transforms.
"""

import numpy as np

from optbench.bench import FunctionSpec, TransformSpec, lsgo_composite, make_function, simple_tsp

spec = FunctionSpec(
    "ellipsoid",
    5,
    TransformSpec(
        translation_std=1.0,
        rotate=True,
        symmetrize=True,
        noise_std=0.5,
        transform_seed=7,
    ),
)
f = make_function(spec, noise_seed=123)

print("instance:", spec.instance_name)
print("optimum location:", np.round(f.minimum_point, 4))
print("noise-free value there:", f.noise_free(f.minimum_point))
print("three noisy evaluations there:", [round(f(f.minimum_point), 3) for _ in range(3)])

# far-optimum instances move the shift five standard deviations out
far = make_function(
    FunctionSpec("sphere", 5, TransformSpec(translation_std=1.0, far_optimum=True, transform_seed=7))
)
near = make_function(
    FunctionSpec("sphere", 5, TransformSpec(translation_std=1.0, transform_seed=7))
)
print("\nshift norms, near vs far:", round(np.linalg.norm(near._t), 3), round(np.linalg.norm(far._t), 3))

# LSGO-style composites: blocks of variables with their own base function,
# rotation, shift, and a weight spanning six orders of magnitude
composite = lsgo_composite(dimension=40, num_blocks=4, transform_seed=11, overlap=True)
print("\ncomposite blocks:")
for block in composite.blocks:
    print(f"  {block.base:12s} weight {block.weight:9.3g}  vars {block.indices}")

# a small TSP instance: every integer assignment decodes to a valid tour
tsp = make_function(simple_tsp(8, seed=3))
encoding = np.zeros(8)
print("\nTSP loss of the identity tour:", round(tsp.noise_free(encoding), 4))
