"""Residues of a rational one-form on the projective line sum to zero.

Places are monic irreducible polynomials (plus infinity); at a place of
degree d the expansion lives over Q[x]/(p) and the residue is folded down
to Q by the field trace.
"""

from resym import (Place, PolyQ, RationalFunction, expand_at_place,
                   global_residue_sum, parse_rational_function)


def show(r: RationalFunction):
    total, report = global_residue_sum(r)
    print(f"  r = {r.render()}")
    for place, res in report:
        print(f"    res at {place.render():<12} = {res}")
    print(f"    sum = {total}")
    print()


print("== simple pole ==")
show(parse_rational_function("1/t"))

print("== an irreducible quadratic place ==")
show(parse_rational_function("1/(t^2+1)"))

print("== mixed places ==")
show(parse_rational_function("(t^2+3)/((t-1)*(t^2+t+1))"))

print("== what the expansion at a higher place looks like ==")
p = PolyQ((1, 0, 1))
field, series = expand_at_place(parse_rational_function("1/(t^2+1)"),
                                Place.finite(p), 2)
print("  field:", field)
print("  series:", series.render())
print("  (the principal coefficient is 1/(2x) = -x/2; its trace is 0)")
