"""
Exact gap sequences
===================

Two families have gap sequences known in closed form: the shifted
exponential, whose top gap never changes with n, and the exponential
truncated with an atom at its right endpoint, whose gaps shrink
geometrically.  The uniform law adds a third closed form, 1/(n+1), for
every spacing.
"""

from ordgap import gap_expectation, make_builtin, r_direct, r_stieltjes

# A rate-2 exponential: every top gap equals the mean residual life 1/2.
expo = make_builtin("exp:lambda=2,L=1")
for n in (2, 5, 20, 50):
    print(f"exp   n={n:>2}  direct={r_direct(expo, n).value:.12f}  "
          f"stieltjes={r_stieltjes(expo, n).value:.12f}")

# Truncate at M = log 2: half the mass sits on M, and R_n = 2^-n.
trunc = make_builtin("truncexp:lambda=1,L=0,M=0.6931471805599453")
print("\natom at M carries", trunc.bounds.survival_at_M_minus)
for n in (2, 3, 10, 30):
    print(f"trunc n={n:>2}  R_n={r_direct(trunc, n).value:.6e}  2^-n={2.0**-n:.6e}")

# Uniform spacings are all equal to 1/(n+1), not only the top one.
unif = make_builtin("uniform")
n = 6
print(f"\nuniform n={n}:", [round(gap_expectation(unif, n, k).value, 12) for k in range(1, n)])
