"""
Macaulay representations and Hilbert-function growth
=====================================================

Every nonnegative integer c has a unique representation as a sum of binomial
coefficients with strictly decreasing tops.  Shifting the tops down or up gives
the two maps that bound how codimension can change under restriction to a
hypersurface and under multiplication by a section.
"""

# %%
from coxlab.macaulay import decompose, lower, upper

for c in (5, 6, 56, 100):
    d = decompose(c, 3)
    terms = " + ".join(f"C({k},{i})" for k, i in d.pairs)
    print(f"c={c:>4} n=3: {terms:<28} lower={lower(c, 3):>3} upper={upper(c, 3):>4}")

# %%
# The lower map never decreases, and it strictly increases whenever the last
# top exceeds its index.
row = [lower(c, 2) for c in range(16)]
print("lower(c, 2), c = 0..15:", row)

# %%
# The upper map grows by one, except after a representation ending in a C(k, 1)
# term, where it jumps by k + 1.
for c in range(8):
    d = decompose(c, 2)
    print(c, d.pairs, "->", upper(c + 1, 2) - upper(c, 2))
