"""Bounding error on an unlabeled target domain.

Train-domain data is two unit Gaussians; the deployment domain is the same
problem shifted. The bound uses only source labels plus unlabeled target
points: source class divergence + a penalty for source/target shift.
"""

import numpy as np

from dpdiv import da_bound, estimate

rng = np.random.default_rng(11)
n = 500

source0 = rng.normal(size=(n, 2)) + [-1.0, 0.0]
source1 = rng.normal(size=(n, 2)) + [1.0, 0.0]

for shift in (0.0, 0.5, 1.5, 3.0):
    target0 = rng.normal(size=(n, 2)) + [-1.0 + shift, 0.0]
    target1 = rng.normal(size=(n, 2)) + [1.0 + shift, 0.0]

    source_est = estimate(source0, source1)
    shift_est = estimate(np.vstack([source0, source1]), np.vstack([target0, target1]))
    report = da_bound(source_est, shift_est)

    # the source-optimal rule is sign(x0); measure it on the target truth
    actual = 0.5 * np.mean(target0[:, 0] > 0) + 0.5 * np.mean(target1[:, 0] <= 0)
    flag = "  (vacuous)" if report.vacuous else ""
    print(f"shift {shift:3.1f}: bound = {report.source_term:.3f} source "
          f"+ {report.shift_term:.3f} shift = {report.total:.3f}{flag}   "
          f"actual target error {actual:.3f}")

print("\nthe bound always dominates the realized target error; it goes")
print("vacuous (> 0.5) once the domains barely overlap")
