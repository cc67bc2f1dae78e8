"""
Checking the shape of a gap sequence
====================================

For increasing-hazard laws the top-gap sequence is decreasing, convex,
log-convex, has decreasing ratios and is completely monotone.  Numerical
checks cannot see below the error of the values they test, so each check
reports pass, fail, or inconclusive relative to an error floor that
doubles with every order of differencing.
"""

from ordgap import GapSequence, check_all, make_builtin, r_direct, strictness_check

for spec in ("exp:lambda=1", "uniform", "gompertz", "weibull:shape=3"):
    dist = make_builtin(spec)
    seq = GapSequence.from_gap_values([r_direct(dist, n) for n in range(2, 21)])
    rep = check_all(seq, max_order=8)
    strict = strictness_check(seq, dist.is_shifted_exponential, dist.is_truncated_exponential)
    print(f"{spec:<16} decreasing={rep.decreasing.status}  log_convex={rep.log_convex.status}  "
          f"CM to order {rep.completely_monotone_to_order}  "
          f"strictly decreasing={strict.strict_decrease.observed_strict}  "
          f"matches family={strict.consistent}")

# The floors that separate "fail" from "inconclusive".
print("\nerror floor per order:", [f"{f:.1e}" for f in rep.error_floor_per_order])

# A sequence that rises by more than its error fails, with the offending pair.
bad = GapSequence(2, (1.0, 0.9, 0.95, 0.8), (1e-6,) * 4)
print("\nperturbed sequence:", check_all(bad).decreasing)
