"""The nodal cubic splits after adic completion: a series identity check.

s^3 + s^2 - t^2 is irreducible as a polynomial, but inside k[[s,t]] the
unit square root of 1+s exists and factors it as (w+t)(w-t) with
w = s*(1+s)^(1/2).  The check multiplies the exact binomial series out and
compares every retained coefficient.
"""

from fractions import Fraction

from resym import binomial_series, nodal_factorization_check
from resym.laurent import EXACT_ORDER, TruncatedSeries
from resym.scalars import QQ

print("== the square root as an exact binomial series ==")
root = binomial_series(Fraction(1, 2), 8)
print("  (1+s)^(1/2) =", root.render())
print("  its square  =", (root * root).render())

print()
print("== the factorization check ==")
for order in (4, 8, 12):
    print(f"  order {order:2d}: (w+t)(w-t) = s^3+s^2-t^2 ->",
          nodal_factorization_check(order))

print()
print("== and it does detect a perturbed target ==")
perturbed = TruncatedSeries(2, EXACT_ORDER, QQ,
                            {(3, 0): 1, (2, 0): 1, (0, 2): -1, (4, 0): 1})
print("  against s^3+s^2-t^2+s^4 ->", nodal_factorization_check(12, target=perturbed))
