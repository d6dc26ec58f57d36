"""The windowed operator algebra and its finite-potent trace.

Operators are finite sums of "scale, shift exponents, restrict to a
per-axis window" terms.  That normal form is closed under composition and
makes the compact/discrete ideal predicates and the trace decidable.
"""

from fractions import Fraction

from resym import (LaurentPoly, WindowedOperator, ideal_member,
                   in_trace_ideal, is_finite_rank, mul_op, projector,
                   tate_trace)

print("== multiplication operators and projectors ==")
f = LaurentPoly(2, coeffs={(1, 0): 2, (0, -1): 1})
op = mul_op(f)
print("  mul(2*t1 + t2^-1) =", op.render())
P1 = projector(2, 1, "+")
print("  P1+ =", P1.render())
print("  P1+ is idempotent:", P1 @ P1 == P1)
print("  P1+ + P1- = id:", P1 + projector(2, 1, "-") == WindowedOperator.identity(2))

print()
print("== the ideals: compact (+) and discrete (-) per axis ==")
member = P1 @ op
print("  P1+ compose mul(f) lies in I_1^+:", ideal_member(member, 1, "+"))
print("  ... and not in I_1^-:", ideal_member(member, 1, "-"))
boxed = WindowedOperator.single(2, Fraction(5, 3), (0, 0), ((2, 5), (2, 5)))
print("  a diagonal box term lies in every ideal:", in_trace_ideal(boxed))
print("  trace ideal forces finite rank:", is_finite_rank(boxed))

print()
print("== the trace ==")
print("  diagonal (5/3 on a 3x3 box):", tate_trace(boxed), "= 9 * 5/3")
shifting = WindowedOperator.single(2, 1, (1, 0), ((0, 3), (None, None)))
print("  strictly shifting + finite window on that axis -> nilpotent:")
power = shifting
for k in range(2, 6):
    power = power @ shifting
    print(f"    x^{k} zero: {power.is_zero()}")
print("  so its trace is", tate_trace(shifting))

print()
print("== refusal instead of guessing ==")
try:
    tate_trace(projector(2, 1, "+"))
except Exception as exc:
    print("  trace(P1+) ->", type(exc).__name__, "-", exc)

print()
print("== cyclicity on finite-rank pairs ==")
x = WindowedOperator.single(1, 2, (1,), ((0, 4),))
y = WindowedOperator.single(1, Fraction(1, 2), (-1,), ((1, 5),))
print("  tr(xy) =", tate_trace(x @ y), " tr(yx) =", tate_trace(y @ x))
