"""Exact integer and rational linear algebra.

Matrices are plain lists of rows.  Integer matrices hold Python ints,
rational matrices hold :class:`fractions.Fraction`.  Nothing here touches
floating point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]

DEFAULT_FUNCTIONAL_BOUND = 16


class NotFound(LookupError):
    """No positive functional exists within the coefficient bound."""


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def determinant(m: Sequence[Sequence]) -> Fraction | int:
    """Determinant by Bareiss elimination (exact for ints and Fractions)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) else num / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(s, u, v)`` with ``u @ m @ v == s``.

    ``s`` is diagonal with nonnegative entries ``d1 | d2 | ...`` and ``u``,
    ``v`` are unimodular.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    s = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        s[dst] = [a + q * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(s[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if s[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        done = False
            if done:
                # divisibility: every remaining entry must be a multiple of the pivot
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % s[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # a smaller remainder appeared; move it to the pivot slot
            cands = [(abs(s[i][t]), i, t) for i in range(t + 1, rows) if s[i][t]]
            cands += [(abs(s[t][j]), t, j) for j in range(t + 1, cols) if s[t][j]]
            best = min(cands)
            if best[0] < abs(s[t][t]):
                if best[2] == t:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return s, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    s, _, _ = smith_normal_form(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form (left multiplication by a unimodular matrix).

    Zero rows are dropped.  Pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [(abs(a[i][c]), i) for i in range(r, rows) if a[i][c]]
            if not nz:
                break
            _, p = min(nz)
            a[r], a[p] = a[p], a[r]
            clean = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r < rows and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return [row for row in a if any(row)]


def kernel_basis(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Lattice basis of ``{x in Z^n : m x = 0}`` (saturated)."""
    if not m:
        return []
    cols = len(m[0])
    s, _, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(len(s), cols)) if s[i][i])
    return [[v[i][j] for i in range(cols)] for j in range(rank, cols)]


# ---------------------------------------------------------------------------
# Rational elimination


def _as_fraction_rows(m: Sequence[Sequence]) -> RatMatrix:
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in m]


def _integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row (same span)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def rank_and_basis(m: Sequence[Sequence]) -> tuple[int, list[int]]:
    """Rank of a rational matrix and the indices of the pivot rows.

    Fraction-free (Bareiss) elimination on the row-integerised matrix.  At
    each column the first remaining row with a nonzero entry is chosen, so the
    returned row indices are deterministic.
    """
    a = [_integer_row(row) for row in m]
    order = list(range(len(a)))
    if not a:
        return 0, []
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        # rotate rather than swap so untouched rows keep their original order
        a.insert(r, a.pop(p))
        order.insert(r, order.pop(p))
        piv = a[r][c]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            a[i] = [(piv * x - f * y) // prev for x, y in zip(ai, ar)]
        prev = piv
        r += 1
    return r, sorted(order[:r])


def rank(m: Sequence[Sequence]) -> int:
    return rank_and_basis(m)[0]


def rref(m: Sequence[Sequence]) -> tuple[RatMatrix, list[int]]:
    """Reduced row-echelon form with zero rows removed, plus pivot columns."""
    a = [_integer_row(row) for row in m]
    a = [row for row in a if any(row)]
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        piv = pr[c]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                new = [piv * x - f * y for x, y in zip(a[i], pr)]
                g = 0
                for x in new:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                if g > 1:
                    new = [x // g for x in new]
                a[i] = new
        pivots.append(c)
        r += 1
    out = []
    for i, c in enumerate(pivots):
        piv = a[i][c]
        out.append([Fraction(x, piv) for x in a[i]])
    return out, pivots


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> RatMatrix:
    """Basis of the right kernel ``{x : m x = 0}`` over the rationals."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    red, pivots = rref(m) if m else ([], [])
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[f]
        basis.append(vec)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of ``a x = b`` (free variables set to 0), or None."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


# ---------------------------------------------------------------------------
# Grading positivity


def positive_functional(degrees: Sequence[Sequence[int]], bound: int = DEFAULT_FUNCTIONAL_BOUND) -> tuple[int, ...]:
    """Integer vector strictly positive on every degree, of smallest max-norm.

    Candidates of a given max-norm are scanned in lexicographic order, so the
    answer is deterministic.  Raises :class:`NotFound` when nothing with
    coefficients bounded by ``bound`` works.
    """
    if not degrees:
        raise ValueError("degrees must be nonempty")
    dim = len(degrees[0])
    if any(len(d) != dim for d in degrees):
        raise ValueError("degrees must all have the same length")
    if dim == 0:
        raise NotFound("zero-rank grading has no positive functional")
    for b in range(1, bound + 1):
        for cand in itertools.product(range(-b, b + 1), repeat=dim):
            if max(abs(x) for x in cand) != b:
                continue
            if all(sum(x * y for x, y in zip(cand, d)) > 0 for d in degrees):
                return cand
    raise NotFound(f"no positive functional with coefficients <= {bound}")
