"""Independent reference computations used to cross-check the library.

Nothing here imports the code under test.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def naive_rank(rows) -> int:
    """Textbook Gaussian elimination over Fractions with partial search for a pivot."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def all_decompositions(c: int, n: int):
    """Every strictly decreasing k_n > ... > k_delta >= delta >= 1 with sum C(k_i, i) = c."""
    out = []

    def rec(i, rem, prev, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        if i == 0:
            return
        k = i
        while math.comb(k, i) <= rem and k < prev:
            rec(i - 1, rem - math.comb(k, i), k, acc + [(k, i)])
            k += 1

    rec(n, c, 10 ** 9, [])
    return out


def projective_dim_v(n: int, monos) -> int:
    """dim of the zero set of monomials on P^n, as the classical cover problem.

    A coordinate subspace {x_j = 0, j in T} lies in V(I) iff every monomial uses
    a variable of T; its dimension is n - |T|.  Empty when only T = all works.
    """
    if any(not any(m) for m in monos):
        return -1
    best = -1
    for size in range(n + 2):
        for t in itertools.combinations(range(n + 1), size):
            if size <= n and all(any(m[j] for j in t) for m in monos):
                best = max(best, n - size)
    return best


def delta2_quadratic_k1(eps2: float) -> float:
    """Root of 3 delta + sqrt(8 delta) = e with e = min(1, eps2), as a quadratic in s = sqrt(delta)."""
    e = min(1.0, eps2)
    s = (-math.sqrt(8) + math.sqrt(8 + 12 * e)) / 6
    return s * s


def stars_and_bars(n: int, d: int) -> int:
    return math.comb(n + d, n) if d >= 0 else 0


def decompositions_up_to(limit: int, n: int) -> dict[int, list[tuple]]:
    """All strictly decreasing sequences k_n > ... > k_delta >= delta >= 1 (delta <= n),
    grouped by their value sum C(k_i, i), for values up to ``limit``."""
    found: dict[int, list[tuple]] = {0: [()]}

    def rec(i, total, prev, acc):
        # extend with a term C(k, i), k_i < prev and k_i >= i
        if i == 0:
            return
        k = i
        while k < prev:
            t = total + math.comb(k, i)
            if t > limit:
                break
            seq = acc + [(k, i)]
            found.setdefault(t, []).append(tuple(seq))
            rec(i - 1, t, k, seq)
            k += 1

    rec(n, 0, 10 ** 9, [])
    return found


M64 = 0xFFFFFFFFFFFFFFFF


def ref_splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) % 2 ** 64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2 ** 64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2 ** 64
    return z ^ (z >> 31)


def ref_xorshift64star(seed: int, count: int) -> list[int]:
    """First ``count`` outputs of xorshift64* seeded through splitmix64."""
    s = ref_splitmix64(seed % 2 ** 64) or 0x9E3779B97F4A7C15
    out = []
    for _ in range(count):
        s ^= s >> 12
        s = (s ^ (s << 25)) & M64
        s ^= s >> 27
        out.append((s * 0x2545F4914F6CDD1D) & M64)
    return out
