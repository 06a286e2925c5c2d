"""
Exact q-series identities
=========================

Rogers-Ramanujan sums against their products, the logarithmic derivative
as a Lambert series, and the Schur polynomials closing in on G and H.
"""

from qmodular import QSeries, compare_series, log_theta_derivative, run_suite
from qmodular.specials import lambert_weighted, rr_series, schur_polynomial

# G as a sum over n of q^{n^2}/(q;q)_n
G = rr_series("G", 12)
print("G =", G)

# the product side lives in the suite; every coefficient through q^500 agrees
rep = run_suite("rr-sum-product", order=500)
print("sum = product through q^500:", rep.all_passed)

# theta G / G picks up only divisors congruent to +-1 mod 5
lhs = log_theta_derivative(rr_series("G", 12), 12)
rhs = lambert_weighted(1, 5, 12) + lambert_weighted(4, 5, 12)
print("thetaG/G =", lhs)
print("matches S1 + S4:", lhs == rhs)

# A_m agrees with G below q^m
for m in (2, 5, 8):
    diff = schur_polynomial("A", m, 30) - rr_series("G", 30)
    print(f"A_{m} - G starts at q^{diff.offset}")

# a deliberately broken identity shows where it breaks
G20 = rr_series("G", 20)
r = compare_series(G20, G20 + QSeries.monomial(7, 20), 20, "G vs G + q^7")
print(r.identity_id, "first mismatch at q^%d" % r.first_mismatch.exponent)
