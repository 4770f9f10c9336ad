"""
Class-group gradings of toric Cox rings
=======================================

A complete simplicial fan determines a polynomial ring with one variable per
ray, graded by the class group.  We look at projective space, a weighted
projective plane and the Hirzebruch surfaces.
"""

# %%
from coxlab.coxring import graded_dim, monomial_basis, format_monomial
from coxlab.toric import (anticanonical, cox_summary, hirzebruch, is_ample, is_nef,
                          strongly_fano, weighted_projective, projective_space)

p2 = projective_space(2)
print(cox_summary(p2))
print("dim S^5 on P^3 =", graded_dim(projective_space(3), (5,)))

# %%
wp = weighted_projective(1, 1, 2)
print("wp(1,1,2) degrees:", [wp.degree_of(tuple(int(i == j) for j in range(3))) for i in range(3)])
print("basis of degree 2:", [format_monomial(m) for m in monomial_basis(wp, (2,))])

# %%
for r in range(3):
    f = hirzebruch(r)
    s = cox_summary(f)
    print(f"F_{r}: degrees {s['degrees']}, irrelevant {s['irrelevant_generators']}, -K = {anticanonical(f)}")
    for c in [(1, 0), (0, 1), (1, 1), (r + 1, 1)]:
        print(f"   {c}: nef={is_nef(f, c)} ample={is_ample(f, c)} strongly Fano={strongly_fano(f, c)}")
