"""
Two routes to the top gap
=========================

R_n can be integrated directly as n * int F^(n-1) (1 - F) dx, or as a
Stieltjes integral of F^n against d(-mu), where mu = 1/hazard is the
inverse hazard.  The second form only makes sense when mu decreases, and
its weighted versions give every alternating difference of the sequence
as a nonnegative number.
"""

from ordgap import cm_witness, difference_table, make_builtin, r_direct, r_stieltjes

dist = make_builtin("weibull:shape=2")

# The two integrands share nothing, so agreement is a real check.
for n in (2, 3, 5, 8, 13):
    a, b = r_direct(dist, n), r_stieltjes(dist, n)
    print(f"n={n:>2}  direct={a.value:.15f}  stieltjes={b.value:.15f}  diff={a.value - b.value:+.1e}")

# (-1)^k Delta^k R_n from a difference table and from its own integral.
values = [r_direct(dist, n).value for n in range(2, 14)]
table = difference_table(values, 6)
print("\n k   table               integral")
for k in range(1, 7):
    print(f"{k:>2}   {(-1) ** k * table[k][0]:.12e}  {cm_witness(dist, 2, k).value:.12e}")

# A decreasing hazard has no such representation.
try:
    r_stieltjes(make_builtin("weibull:shape=0.5"), 3)
except ValueError as exc:
    print("\nshape 0.5:", exc)
