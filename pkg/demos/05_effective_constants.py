"""
Effective constants
===================

The numerical side: a counting bound and its summed form, the small constants
delta2, gamma and delta1, and a certificate that checks every constraint on the
chosen constants with exact rationals.
"""

# %%
from fractions import Fraction

import mpmath

from coxlab import bounds

print("counting bound (4,1,1):", bounds.lemma41_bound(4, 1, 1), "=", bounds.lemma41_sum_form(4, 1, 1))
d2 = bounds.delta2_of(Fraction(1, 4), 1)
print("delta2(1/4, k=1) =", float(d2), " closed form:", bounds.delta2_closed_form_k1(Fraction(1, 4)))

# %%
with mpmath.workprec(bounds.PREC):
    for k, d in [(1, 1), (1, 2), (2, 1)]:
        g, j = bounds.gamma_min(k, d)
        print(f"gamma(k={k}, d={d}) = {mpmath.nstr(g, 20)}  (j={j})")

# %%
cert = bounds.main_certificate(1, 1, 4)
for c in cert.constraints:
    print("ok " if c.satisfied else "BAD", c.text)
print("verdict:", cert.verdict)
