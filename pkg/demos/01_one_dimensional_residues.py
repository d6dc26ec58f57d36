"""One-dimensional residues without choosing coefficients from the series.

The residue of f(t) dt is classically the t^-1 coefficient.  Here it falls
out of operator algebra instead: f acts by multiplication on the monomial
basis of k((t)), P^+ projects onto nonnegative exponents, and the residue
is the trace of a commutator-like product that happens to have finite rank.
"""

from fractions import Fraction

from resym import (DifferentialForm, ExtensionField, LaurentPoly, PolyQ,
                   coordinate_invariance_check_1d, hkr_antisymmetrize, mul_op,
                   phi_hh_closed, projector, residue_form, tate_trace)

t = LaurentPoly.variable(1, 1)

print("== the anchor: res t^i dt ==")
for i in range(-3, 3):
    form = DifferentialForm(LaurentPoly.monomial(1, (i,)), [t])
    print(f"  res t^{i} dt = {residue_form(form)}")

print()
print("== the operator picture ==")
P = projector(1, 1, "+")
bracket = (P @ mul_op(LaurentPoly.monomial(1, (-1,)))).commutator(mul_op(t))
print("  [P+ t^-1, t] =", bracket.render())
print("  its trace    =", tate_trace(bracket))

print()
print("== a composite, via the closed functional ==")
f = LaurentPoly(1, coeffs={(-2,): Fraction(3), (-1,): Fraction(5, 2), (4,): 1})
form = DifferentialForm(f, [t])
chain = hkr_antisymmetrize(form)
print("  f =", f.render())
print("  res f dt =", residue_form(form), " (t^-1 coefficient is 5/2)")
print("  phi(f (x) t) =", phi_hh_closed(chain))

print()
print("== residues see the residue field ==")
gauss = ExtensionField(PolyQ((1, 0, 1)))  # Q[x]/(x^2+1)
tinv = LaurentPoly.monomial(1, (-1,), 1, gauss)
tg = LaurentPoly.variable(1, 1, gauss)
print("  over Q[x]/(x^2+1): res t^-1 dt =",
      residue_form(DifferentialForm(tinv, [tg])), "(the field degree)")
xtinv = LaurentPoly.monomial(1, (-1,), gauss.generator, gauss)
print("  res x*t^-1 dt =", residue_form(DifferentialForm(xtinv, [tg])),
      "(trace of x vanishes)")

print()
print("== nothing depends on the coordinate ==")
g = LaurentPoly(1, coeffs={(-3,): 2, (-1,): Fraction(7, 3), (2,): -1})
order = max(g.max_exponent() - g.min_exponent() + 2, 1 - g.min_exponent())
print("  res g(t) dt = res g(u) u' dt for u = t + t^2:",
      coordinate_invariance_check_1d(g, order))
