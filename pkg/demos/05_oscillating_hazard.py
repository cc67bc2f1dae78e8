"""
Quantile-hazard approximation and an oscillating hazard
=======================================================

R_n is close to the inverse hazard evaluated at the (n-1)/n quantile.  A
law whose inverse hazard is 2 + cos(eps * log(1 - F)) makes that vivid:
the approximation predicts R_n ~ 2 + cos(eps * log n), which oscillates in
n, so the gap sequence cannot be monotone even though every hazard is
positive and bounded.
"""

import math

import numpy as np

from ordgap import GapSequence, check_all, r_direct
from ordgap.approx import oscillating_hazard_dist, quantile_hazard_approx

d = oscillating_hazard_dist(0.1)
for n in (2, 10, 100, 1000):
    r = quantile_hazard_approx(d, n)
    print(f"eps=0.1 n={n:>4}  R_n={r.r_quadrature:.6f}  mu(x_n)={r.inv_hazard_at_xn:.6f}  "
          f"2+cos(0.1 log n)={2 + math.cos(0.1 * math.log(n)):.6f}")

# With eps = 0.5 the first turning point is near n ~ 330.
d = oscillating_hazard_dist(0.5)
gaps = [r_direct(d, n) for n in range(2, 501)]
values = np.array([g.value for g in gaps])
print(f"\neps=0.5: R_n is smallest at n={2 + int(values.argmin())}")
rep = check_all(GapSequence.from_gap_values(gaps), max_order=2)
print("decreasing:", rep.decreasing.status, rep.decreasing.witness)

# Empirical size of the approximation error, max over n in [2, 100].
for eps in (0.05, 0.1, 0.2, 0.4):
    d = oscillating_hazard_dist(eps)
    worst = max(quantile_hazard_approx(d, n).abs_gap for n in range(2, 101))
    print(f"eps={eps:<4}  max |R_n - mu(x_n)| = {worst:.4f}  ratio to eps = {worst / eps:.3f}")
