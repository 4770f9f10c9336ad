"""Macaulay (binomial) representations and the maps c -> c_<n>, c -> c^<n>."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class MacaulayDecomposition:
    """``c = sum C(k_i, i)`` over ``pairs = ((k_n, n), ..., (k_delta, delta))``."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return sum(comb(k, i) for k, i in self.pairs)

    @property
    def delta(self) -> int | None:
        return self.pairs[-1][1] if self.pairs else None

    def coefficient(self, i: int) -> int | None:
        for k, j in self.pairs:
            if j == i:
                return k
        return None


def _largest_k(c: int, i: int) -> int:
    # largest k >= i with C(k, i) <= c, for c >= 1
    lo, hi = i, i + 1
    while comb(hi, i) <= c:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, i) <= c:
            lo = mid
        else:
            hi = mid
    return lo


def decompose(c: int, n: int) -> MacaulayDecomposition:
    """Greedy n-th Macaulay decomposition of ``c`` (empty for ``c == 0``)."""
    if c < 0 or n < 1:
        raise ValueError("need c >= 0 and n >= 1")
    pairs = []
    i = n
    while c > 0:
        k = _largest_k(c, i)
        pairs.append((k, i))
        c -= comb(k, i)
        i -= 1
    return MacaulayDecomposition(n, tuple(pairs))


def lower(c: int, n: int) -> int:
    """``c_<n> = sum C(k_i - 1, i)``."""
    return sum(comb(k - 1, i) for k, i in decompose(c, n).pairs)


def upper(c: int, n: int) -> int:
    """``c^<n> = sum C(k_i + 1, i + 1)``."""
    return sum(comb(k + 1, i + 1) for k, i in decompose(c, n).pairs)


def upper_iterated(c: int, n: int, steps: int) -> int:
    """``(c^<n>)^<n+1>...`` applied ``steps`` times."""
    for j in range(steps):
        c = upper(c, n + j)
    return c
