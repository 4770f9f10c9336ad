"""
Cox-Gorenstein ideals and linkage
=================================

An Artinian ideal is Gorenstein when each graded piece is the annihilator of a
single functional on the top degree.  Nested Gorenstein ideals are linked by a
colon with a polynomial F that we solve for exactly.
"""

# %%
from coxlab.coxring import format_polynomial, parse_polynomial
from coxlab.ideals import (HomogeneousIdeal, SocleFunctional, find_link, jacobian,
                           socle_degree_formula, socle_degrees_bruteforce, verify_cox_gorenstein)
from coxlab.toric import projective_space

p2 = projective_space(2)
squares = HomogeneousIdeal.from_strings(p2, ["x1^2", "x2^2", "x3^2"])
lam = SocleFunctional.dual_of(parse_polynomial("x1*x2*x3", p2))
rep = verify_cox_gorenstein(squares, lam, [(d,) for d in range(4)])
for r in rep.records:
    print(r.beta, "codim I =", r.codim_ideal, "equal to annihilator:", r.equal, "dual codim:", r.codim_dual)

# %%
cubes = HomogeneousIdeal.from_strings(p2, ["x1^3", "x2^3", "x3^3"])
f = find_link(cubes, SocleFunctional.dual_of(parse_polynomial("x1^2*x2^2*x3^2", p2)), squares, lam)
print("(cubes : F) = squares for F =", format_polynomial(f))

# %%
# The Jacobian ideal of a smooth cubic curve is Gorenstein with socle in degree 3.
fermat = parse_polynomial("x1^3 + x2^3 + x3^3", p2)
j = jacobian(fermat)
print("socle by search:", socle_degrees_bruteforce(j, [(d,) for d in range(6)]))
print("socle by formula:", socle_degree_formula(fermat, "complement"))
