"""Graded polynomial arithmetic in the Cox ring and exact graded subspaces."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import intlin
from .toric import DivisorClass, ToricVariety, cls_add, cls_sub

Monomial = tuple[int, ...]


class UnboundedGrading(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class ZeroSection(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial bases


class Session:
    """Cache of monomial bases keyed by (variety, degree).

    Entries are never evicted.  A lock guards the dict so concurrent queries
    see either nothing or a complete tuple.
    """

    def __init__(self):
        self._bases: dict = {}
        self._functionals: dict = {}
        self._lock = threading.Lock()

    def functional(self, v: ToricVariety) -> tuple[int, ...]:
        with self._lock:
            ell = self._functionals.get(v)
        if ell is None:
            try:
                ell = intlin.positive_functional(v.deg)
            except intlin.NotFound:
                raise UnboundedGrading(f"grading of {v.name or 'variety'} admits no positive functional") from None
            with self._lock:
                self._functionals[v] = ell
        return ell

    def basis(self, v: ToricVariety, beta: DivisorClass) -> tuple[Monomial, ...]:
        key = (v, beta)
        with self._lock:
            hit = self._bases.get(key)
        if hit is not None:
            return hit
        out = _enumerate(v, beta, self.functional(v))
        with self._lock:
            self._bases.setdefault(key, out)
        return out

    def clear(self):
        with self._lock:
            self._bases.clear()
            self._functionals.clear()


DEFAULT_SESSION = Session()


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _enumerate(v: ToricVariety, beta: DivisorClass, ell: Sequence[int]) -> tuple[Monomial, ...]:
    r = v.nvars
    weights = [_dot(ell, d) for d in v.deg]
    budget = _dot(ell, beta)
    if budget < 0:
        return ()
    out: list[Monomial] = []
    exps = [0] * r
    remaining = list(beta)

    def dfs(i, budget):
        if i == r - 1:
            w = weights[i]
            if budget % w:
                return
            a = budget // w
            d = v.deg[i]
            if all(x == a * y for x, y in zip(remaining, d)):
                exps[i] = a
                out.append(tuple(exps))
                exps[i] = 0
            return
        d = v.deg[i]
        # descending exponent of the current variable gives descending lex order
        for a in range(budget // weights[i], -1, -1):
            exps[i] = a
            for j in range(len(remaining)):
                remaining[j] -= a * d[j]
            dfs(i + 1, budget - a * weights[i])
            for j in range(len(remaining)):
                remaining[j] += a * d[j]
        exps[i] = 0

    dfs(0, budget)
    return tuple(out)


def monomial_basis(v: ToricVariety, beta: Sequence[int], session: Session | None = None) -> tuple[Monomial, ...]:
    """All monomials of degree ``beta`` in descending lexicographic order."""
    return (session or DEFAULT_SESSION).basis(v, tuple(beta))


def graded_dim(v: ToricVariety, beta: Sequence[int], session: Session | None = None) -> int:
    return len(monomial_basis(v, beta, session))


# ---------------------------------------------------------------------------
# polynomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class GradedPolynomial:
    variety: ToricVariety
    degree: DivisorClass
    terms: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def from_dict(cls, v: ToricVariety, terms: dict, degree: Sequence[int] | None = None) -> "GradedPolynomial":
        clean = {tuple(m): Fraction(c) for m, c in terms.items() if c != 0}
        degs = {v.degree_of(m) for m in clean}
        if degree is None:
            if len(degs) != 1:
                raise DegreeMismatch("cannot infer the degree of a zero or inhomogeneous polynomial")
            degree = degs.pop()
        degree = tuple(degree)
        if any(d != degree for d in degs):
            raise DegreeMismatch(f"polynomial is not homogeneous of degree {degree}")
        return cls(v, degree, tuple(sorted(clean.items(), reverse=True)))

    @classmethod
    def monomial(cls, v: ToricVariety, exps: Sequence[int], coeff=1) -> "GradedPolynomial":
        return cls.from_dict(v, {tuple(exps): coeff})

    @property
    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __mul__(self, other):
        if isinstance(other, GradedPolynomial):
            return multiply(self, other)
        return GradedPolynomial.from_dict(self.variety, {m: c * other for m, c in self.terms}, self.degree)

    __rmul__ = __mul__

    def __add__(self, other: "GradedPolynomial"):
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add polynomials of different degrees")
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return GradedPolynomial.from_dict(self.variety, acc, self.degree)

    def __sub__(self, other):
        return self + other * -1

    def __str__(self):
        return format_polynomial(self)


def multiply(p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    acc: dict[Monomial, Fraction] = {}
    for m1, c1 in p.terms:
        for m2, c2 in q.terms:
            m = mono_mul(m1, m2)
            acc[m] = acc.get(m, 0) + c1 * c2
    return GradedPolynomial.from_dict(p.variety, acc, cls_add(p.degree, q.degree))


def partial_derivative(p: GradedPolynomial, i: int) -> GradedPolynomial:
    v = p.variety
    acc = {}
    for m, c in p.terms:
        if m[i]:
            mm = list(m)
            mm[i] -= 1
            acc[tuple(mm)] = c * m[i]
    return GradedPolynomial.from_dict(v, acc, cls_sub(p.degree, v.deg[i]))


# ---------------------------------------------------------------------------
# text format:  3/2*x1^2*x3 + -1*x2


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, a in enumerate(m):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a > 1:
            parts.append(f"x{i + 1}^{a}")
    return "*".join(parts) if parts else "1"


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: GradedPolynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.terms:
        body = format_monomial(m)
        out.append(_format_coeff(c) if body == "1" else f"{_format_coeff(c)}*{body}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:]!r}")
        pos = mt.end()
        num, name, caret, star, plus, minus, lp, rp = mt.groups()
        if num:
            yield ("num", num)
        elif name:
            yield ("name", name)
        elif caret:
            yield ("^", caret)
        elif star:
            yield ("*", star)
        elif plus:
            yield ("+", plus)
        elif minus:
            yield ("-", minus)
        elif lp:
            yield ("(", lp)
        else:
            yield (")", rp)


def parse_monomial_alias(text: str, nvars: int) -> Monomial:
    p = _parse_terms(text, nvars, {})
    if len(p) != 1 or next(iter(p.values())) != 1:
        raise PolynomialSyntaxError(f"alias {text!r} is not a monic monomial")
    return next(iter(p))


def _parse_terms(text: str, nvars: int, aliases: dict[str, Monomial]) -> dict[Monomial, Fraction]:
    toks = list(_tokens(text))
    acc: dict[Monomial, Fraction] = {}
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    def factor():
        nonlocal i
        kind, val = toks[i]
        i += 1
        if kind == "num":
            if peek() == "^":
                raise PolynomialSyntaxError("powers of numbers are not supported")
            return Fraction(val), (0,) * nvars
        if kind == "name":
            if val in aliases:
                base = aliases[val]
            else:
                mt = re.fullmatch(r"x(\d+)", val)
                if not mt or not 1 <= int(mt.group(1)) <= nvars:
                    raise PolynomialSyntaxError(f"unknown variable {val!r}")
                base = tuple(int(j == int(mt.group(1)) - 1) for j in range(nvars))
            e = 1
            if peek() == "^":
                i += 1
                if peek() != "num" or "/" in toks[i][1]:
                    raise PolynomialSyntaxError("exponent must be a nonnegative integer")
                e = int(toks[i][1])
                i += 1
            return Fraction(1), tuple(e * x for x in base)
        raise PolynomialSyntaxError(f"unexpected token {val!r}")

    if not toks:
        raise PolynomialSyntaxError("empty polynomial")
    sign = 1
    while i < len(toks):
        while peek() in ("+", "-"):
            if toks[i][0] == "-":
                sign = -sign
            i += 1
        coeff, mono = Fraction(sign), (0,) * nvars
        while True:
            c, m = factor()
            coeff *= c
            mono = mono_mul(mono, m)
            if peek() == "*":
                i += 1
                continue
            break
        acc[mono] = acc.get(mono, 0) + coeff
        sign = 1
        if i < len(toks) and peek() not in ("+", "-"):
            raise PolynomialSyntaxError(f"unexpected token {toks[i][1]!r}")
    return {m: c for m, c in acc.items() if c != 0}


def parse_polynomial(text: str, v: ToricVariety, degree: Sequence[int] | None = None,
                     aliases: dict[str, str] | None = None) -> GradedPolynomial:
    """Parse the text format (``coeff*x1^a1*...`` terms joined by ``+``)."""
    amap = {k: parse_monomial_alias(s, v.nvars) for k, s in (aliases or {}).items()}
    terms = _parse_terms(text, v.nvars, amap)
    return GradedPolynomial.from_dict(v, terms, degree)


# ---------------------------------------------------------------------------
# graded subspaces


@dataclass(frozen=True)
class GradedSubspace:
    variety: ToricVariety
    degree: DivisorClass
    ambient: tuple[Monomial, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def polynomials(self) -> list[GradedPolynomial]:
        return [vector_to_polynomial(self.variety, self.degree, self.ambient, row) for row in self.basis]

    def contains(self, other: "GradedSubspace") -> bool:
        if other.degree != self.degree:
            raise DegreeMismatch("subspaces live in different degrees")
        return intlin.rank(list(self.basis) + list(other.basis)) == self.dim

    def same_as(self, other: "GradedSubspace") -> bool:
        return self.dim == other.dim and self.contains(other)


def subspace_from_rows(v: ToricVariety, beta: Sequence[int], rows: Iterable[Sequence],
                       session: Session | None = None) -> GradedSubspace:
    beta = tuple(beta)
    ambient = monomial_basis(v, beta, session)
    rows = [list(r) for r in rows]
    if any(len(r) != len(ambient) for r in rows):
        raise DegreeMismatch("row length does not match the graded piece")
    red, piv = intlin.rref(rows) if rows else ([], [])
    return GradedSubspace(v, beta, ambient, tuple(tuple(r) for r in red), tuple(piv))


def full_space(v: ToricVariety, beta: Sequence[int], session: Session | None = None) -> GradedSubspace:
    n = graded_dim(v, beta, session)
    return subspace_from_rows(v, beta, [[int(i == j) for j in range(n)] for i in range(n)], session)


def zero_space(v: ToricVariety, beta: Sequence[int], session: Session | None = None) -> GradedSubspace:
    return subspace_from_rows(v, beta, [], session)


def polynomial_to_vector(p: GradedPolynomial, ambient: Sequence[Monomial], index: dict | None = None) -> list[Fraction]:
    index = index if index is not None else {m: i for i, m in enumerate(ambient)}
    vec = [Fraction(0)] * len(ambient)
    for m, c in p.terms:
        vec[index[m]] = c
    return vec


def vector_to_polynomial(v: ToricVariety, beta, ambient, row) -> GradedPolynomial:
    return GradedPolynomial.from_dict(v, {m: c for m, c in zip(ambient, row) if c}, beta)


def span(v: ToricVariety, beta: Sequence[int], generators: Iterable[GradedPolynomial],
         session: Session | None = None) -> GradedSubspace:
    beta = tuple(beta)
    ambient = monomial_basis(v, beta, session)
    index = {m: i for i, m in enumerate(ambient)}
    rows = []
    for g in generators:
        if g.degree != beta:
            raise DegreeMismatch(f"generator of degree {g.degree} in span of degree {beta}")
        rows.append(polynomial_to_vector(g, ambient, index))
    return subspace_from_rows(v, beta, rows, session)


def codim(w: GradedSubspace) -> int:
    return w.ambient_dim - w.dim


def _sparse_rows(w: GradedSubspace):
    return [[(w.ambient[j], c) for j, c in enumerate(row) if c] for row in w.basis]


def product_rows(rows_sparse, step_basis, target_index, width):
    out = []
    for row in rows_sparse:
        for m in step_basis:
            vec = [0] * width
            for mono, c in row:
                vec[target_index[mono_mul(mono, m)]] = c
            out.append(vec)
    return out


def mult_image(w: GradedSubspace, step: Sequence[int], session: Session | None = None) -> GradedSubspace:
    """Image of ``w (x) S^step -> S^(deg w + step)``."""
    v = w.variety
    target = cls_add(w.degree, step)
    ambient = monomial_basis(v, target, session)
    index = {m: i for i, m in enumerate(ambient)}
    rows = product_rows(_sparse_rows(w), monomial_basis(v, step, session), index, len(ambient))
    return subspace_from_rows(v, target, rows, session)


def multiples(s: GradedPolynomial, beta: Sequence[int], session: Session | None = None) -> GradedSubspace:
    """The subspace ``s * S^(beta - deg s)`` of ``S^beta``."""
    v = s.variety
    beta = tuple(beta)
    rest = monomial_basis(v, cls_sub(beta, s.degree), session)
    ambient = monomial_basis(v, beta, session)
    index = {m: i for i, m in enumerate(ambient)}
    srow = [list(s.terms)]
    return subspace_from_rows(v, beta, product_rows(srow, rest, index, len(ambient)), session)


def intersection(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    """Intersection via the kernel of the stacked basis matrix."""
    if a.degree != b.degree:
        raise DegreeMismatch("subspaces live in different degrees")
    if not a.basis or not b.basis:
        return subspace_from_rows(a.variety, a.degree, [])
    stacked = list(a.basis) + list(b.basis)
    # x^T stacked = 0  <=>  sum_i x_i a_i = -sum_j y_j b_j
    kern = intlin.nullspace(intlin.transpose(stacked), len(stacked))
    rows = []
    for x in kern:
        coeffs = x[: a.dim]
        rows.append([sum((c * row[k] for c, row in zip(coeffs, a.basis)), Fraction(0)) for k in range(a.ambient_dim)])
    return subspace_from_rows(a.variety, a.degree, rows)


def restriction_data(w: GradedSubspace, s: GradedPolynomial, session: Session | None = None) -> dict:
    """Codimensions around restriction of ``w`` to the divisor ``{s = 0}``.

    ``c_D`` is the codim of the image of ``w`` in ``S^beta / s*S^(beta - deg s)``,
    computed from the sum ``w + s*S``.  ``codim_w_minus_d`` is the codim of
    ``w ∩ s*S`` inside ``s*S``, computed from the intersection.  The two routes
    are independent, so ``c == c_D + codim_w_minus_d`` is a genuine check.
    """
    if s.is_zero():
        raise ZeroSection("the section s is zero")
    sub = multiples(s, w.degree, session)
    total = subspace_from_rows(w.variety, w.degree, list(w.basis) + list(sub.basis), session)
    meet = intersection(w, sub)
    return {"c": codim(w), "c_D": codim(total), "codim_w_minus_d": sub.dim - meet.dim}


def restriction_codim(w: GradedSubspace, s: GradedPolynomial, session: Session | None = None) -> int:
    return restriction_data(w, s, session)["c_D"]
