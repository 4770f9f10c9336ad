"""Homogeneous ideals of the Cox ring, studied one graded piece at a time.

Everything reduces to exact linear algebra on graded pieces: no Groebner
bases are used.  Cox-Gorenstein structures are described by a socle
functional ``Lambda`` on ``S^N``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import intlin
from .coxring import (
    GradedPolynomial,
    GradedSubspace,
    Monomial,
    Session,
    codim,
    format_monomial,
    format_polynomial,
    mono_mul,
    monomial_basis,
    parse_monomial_alias,
    parse_polynomial,
    partial_derivative,
    product_rows,
    subspace_from_rows,
)
from .toric import (
    INFINITE,
    DivisorClass,
    NotAmpleEta,
    ToricVariety,
    cls_add,
    cls_scale,
    cls_sub,
    irrelevant_generators,
    is_ample,
    m_of,
)


class NotMonomial(ValueError):
    pass


class NoSolution(ValueError):
    pass


class NotNested(ValueError):
    pass


class LinkCheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class HomogeneousIdeal:
    variety: ToricVariety
    generators: tuple[GradedPolynomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(g for g in self.generators if not g.is_zero()))

    @classmethod
    def from_strings(cls, v: ToricVariety, gens: Iterable[str], aliases: dict[str, str] | None = None):
        return cls(v, tuple(parse_polynomial(g, v, aliases=aliases) for g in gens))

    @classmethod
    def from_monomials(cls, v: ToricVariety, monos: Iterable[Sequence[int]]):
        return cls(v, tuple(GradedPolynomial.monomial(v, m) for m in monos))

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def monomial_generators(self) -> list[Monomial]:
        if not self.is_monomial():
            raise NotMonomial("ideal has non-monomial generators")
        return [g.terms[0][0] for g in self.generators]


@dataclass(frozen=True)
class SocleFunctional:
    """Linear functional on ``S^N``: the monomial ``m`` is sent to ``coeffs[m]``."""

    variety: ToricVariety
    socle_degree: DivisorClass
    coeffs: tuple[tuple[Monomial, Fraction], ...]

    def __post_init__(self):
        if not any(c for _, c in self.coeffs):
            raise ValueError("socle functional is identically zero")

    @classmethod
    def dual_of(cls, p: GradedPolynomial) -> "SocleFunctional":
        """The functional reading off coefficients against ``p``'s monomials."""
        return cls(p.variety, p.degree, p.terms)

    def __call__(self, p: GradedPolynomial) -> Fraction:
        if p.degree != self.socle_degree:
            return Fraction(0)
        table = dict(self.coeffs)
        return sum((c * table.get(m, 0) for m, c in p.terms), Fraction(0))

    def on_monomial(self, m: Monomial) -> Fraction:
        return dict(self.coeffs).get(m, Fraction(0))


# ---------------------------------------------------------------------------
# graded pieces


def graded_piece(ideal: HomogeneousIdeal, beta: Sequence[int], session: Session | None = None) -> GradedSubspace:
    v = ideal.variety
    beta = tuple(beta)
    ambient = monomial_basis(v, beta, session)
    index = {m: i for i, m in enumerate(ambient)}
    rows = []
    for g in ideal.generators:
        rest = monomial_basis(v, cls_sub(beta, g.degree), session)
        if rest:
            rows.extend(product_rows([list(g.terms)], rest, index, len(ambient)))
    return subspace_from_rows(v, beta, rows, session)


def hilbert_codim(ideal: HomogeneousIdeal, beta: Sequence[int], session: Session | None = None) -> int:
    return codim(graded_piece(ideal, beta, session))


def is_artinian_monomial(ideal: HomogeneousIdeal, variables: Sequence[Monomial] | None = None) -> bool:
    """Every declared variable (a monomial, possibly an alias) has a pure power among the generators."""
    gens = ideal.monomial_generators()
    if variables is None:
        r = ideal.variety.nvars
        variables = [tuple(int(i == j) for j in range(r)) for i in range(r)]

    def pure_power(g, x):
        ratios = {gi // xi for gi, xi in zip(g, x) if xi}
        if len(ratios) != 1:
            return False
        (a,) = ratios
        return a > 0 and all(gi == a * xi for gi, xi in zip(g, x))

    return all(any(pure_power(g, x) for g in gens) for x in variables)


def annihilator_piece(lam: SocleFunctional, beta: Sequence[int], session: Session | None = None) -> GradedSubspace:
    """``{P in S^beta : Lambda(P Q) = 0 for all Q in S^(N - beta)}``."""
    v = lam.variety
    beta = tuple(beta)
    pbasis = monomial_basis(v, beta, session)
    qbasis = monomial_basis(v, cls_sub(lam.socle_degree, beta), session)
    if not qbasis:
        return subspace_from_rows(v, beta, [[int(i == j) for j in range(len(pbasis))] for i in range(len(pbasis))], session)
    table = dict(lam.coeffs)
    # columns indexed by P, rows by Q: kernel gives the P-coefficients
    pairing = [[table.get(mono_mul(p, q), 0) for p in pbasis] for q in qbasis]
    return subspace_from_rows(v, beta, intlin.nullspace(pairing, len(pbasis)), session)


@dataclass
class GorensteinRecord:
    beta: DivisorClass
    codim_ideal: int
    codim_annihilator: int
    equal: bool
    dual_beta: DivisorClass
    codim_dual: int | None
    dual_equal: bool | None

    def to_dict(self):
        return {
            "beta": list(self.beta),
            "codim_ideal": self.codim_ideal,
            "codim_annihilator": self.codim_annihilator,
            "equal": self.equal,
            "dual_beta": list(self.dual_beta),
            "codim_dual": self.codim_dual,
            "dual_equal": self.dual_equal,
        }


@dataclass
class GorensteinReport:
    socle_degree: DivisorClass
    records: list[GorensteinRecord] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(r.equal for r in self.records)

    @property
    def duality_holds(self) -> bool:
        return all(r.dual_equal is not False for r in self.records)

    def to_dict(self):
        return {
            "socle_degree": list(self.socle_degree),
            "records": [r.to_dict() for r in self.records],
            "verdict": self.verdict,
            "duality_holds": self.duality_holds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def verify_cox_gorenstein(ideal: HomogeneousIdeal, lam: SocleFunctional, degrees: Iterable[Sequence[int]],
                          session: Session | None = None) -> GorensteinReport:
    report = GorensteinReport(lam.socle_degree)
    v = ideal.variety
    for beta in degrees:
        beta = tuple(beta)
        piece = graded_piece(ideal, beta, session)
        ann = annihilator_piece(lam, beta, session)
        dual = cls_sub(lam.socle_degree, beta)
        if monomial_basis(v, dual, session):
            cd = hilbert_codim(ideal, dual, session)
            de = cd == codim(piece)
        else:
            cd, de = None, None
        report.records.append(GorensteinRecord(beta, codim(piece), codim(ann), piece.same_as(ann), dual, cd, de))
    return report


def effective_classes(v: ToricVariety, max_weight: int, session: Session | None = None) -> list[DivisorClass]:
    """Degrees of all monomials whose weight under the positive functional is at most ``max_weight``.

    Sorted by weight, then lexicographically.
    """
    from .coxring import DEFAULT_SESSION

    ell = (session or DEFAULT_SESSION).functional(v)
    weights = [sum(a * b for a, b in zip(ell, d)) for d in v.deg]
    found = {(0,) * v.cl_rank}
    frontier = [(0,) * v.cl_rank]
    while frontier:
        nxt = []
        for c in frontier:
            for d, w in zip(v.deg, weights):
                n = cls_add(c, d)
                if n not in found and sum(a * b for a, b in zip(ell, n)) <= max_weight:
                    found.add(n)
                    nxt.append(n)
        frontier = nxt
    return sorted(found, key=lambda c: (sum(a * b for a, b in zip(ell, c)), c))


def probe_degrees(v: ToricVariety, top: Sequence[int], session: Session | None = None,
                  ample_only: bool = True) -> list[DivisorClass]:
    """Classes of weight at most ``weight(top)`` (ample ones only by default)."""
    from .coxring import DEFAULT_SESSION

    ell = (session or DEFAULT_SESSION).functional(v)
    bound = sum(a * b for a, b in zip(ell, top))
    out = effective_classes(v, bound, session)
    return [c for c in out if is_ample(v, c)] if ample_only else out


# ---------------------------------------------------------------------------
# colon ideals and linkage


def _reduce_against(rows, piece: GradedSubspace):
    """Residues of rows modulo the RREF subspace ``piece``."""
    out = []
    for row in rows:
        row = list(row)
        for brow, pc in zip(piece.basis, piece.pivots):
            f = row[pc]
            if f:
                row = [x - f * y for x, y in zip(row, brow)]
        out.append(row)
    return out


def colon_piece(ideal: HomogeneousIdeal, f: GradedPolynomial, beta: Sequence[int],
                session: Session | None = None) -> GradedSubspace:
    """``{P in S^beta : P F in I^(beta + deg F)}``."""
    v = ideal.variety
    beta = tuple(beta)
    pbasis = monomial_basis(v, beta, session)
    target = cls_add(beta, f.degree)
    tbasis = monomial_basis(v, target, session)
    index = {m: i for i, m in enumerate(tbasis)}
    images = []
    for p in pbasis:
        vec = [Fraction(0)] * len(tbasis)
        for m, c in f.terms:
            vec[index[mono_mul(p, m)]] = c
        images.append(vec)
    residues = _reduce_against(images, graded_piece(ideal, target, session))
    kern = intlin.nullspace(intlin.transpose(residues), len(pbasis)) if residues else []
    return subspace_from_rows(v, beta, kern, session)


def ideal_contains_piece(big: HomogeneousIdeal, small: HomogeneousIdeal, beta, session=None) -> bool:
    return graded_piece(big, beta, session).contains(graded_piece(small, beta, session))


def find_link(ideal: HomogeneousIdeal, lam: SocleFunctional, ideal2: HomogeneousIdeal, lam2: SocleFunctional,
              probe: Iterable[Sequence[int]] | None = None, session: Session | None = None) -> GradedPolynomial:
    """Find ``F`` of degree ``N - N'`` with ``Lambda(Q F) = Lambda'(Q)`` for all ``Q in S^N'``.

    Nesting ``I ⊆ I'`` and the colon identity ``(I : F) = I'`` are checked on
    the probe degrees (default: every ample class of weight at most ``N'``).
    """
    v = ideal.variety
    n1, n2 = lam.socle_degree, lam2.socle_degree
    step = cls_sub(n1, n2)
    fbasis = monomial_basis(v, step, session)
    if not fbasis:
        raise NoSolution(f"S^(N - N') is empty for N - N' = {step}")
    probe = [tuple(b) for b in probe] if probe is not None else probe_degrees(v, n2, session)
    for beta in probe:
        if not ideal_contains_piece(ideal2, ideal, beta, session):
            raise NotNested(f"I is not contained in I' in degree {beta}")
    qbasis = monomial_basis(v, n2, session)
    table = dict(lam.coeffs)
    a = [[table.get(mono_mul(q, m), 0) for m in fbasis] for q in qbasis]
    b = [lam2.on_monomial(q) for q in qbasis]
    x = intlin.solve(a, b)
    if x is None:
        raise NoSolution("no F satisfies Lambda(QF) = Lambda'(Q)")
    f = GradedPolynomial.from_dict(v, {m: c for m, c in zip(fbasis, x) if c}, step)
    for beta in probe:
        if not colon_piece(ideal, f, beta, session).same_as(graded_piece(ideal2, beta, session)):
            raise LinkCheckFailed(f"(I : F) differs from I' in degree {beta}")
    return f


# ---------------------------------------------------------------------------
# Jacobian ideals and socle degrees


def jacobian(f: GradedPolynomial) -> HomogeneousIdeal:
    return HomogeneousIdeal(f.variety, tuple(partial_derivative(f, i) for i in range(f.variety.nvars)))


def socle_degree_formula(f: GradedPolynomial, convention: str = "literal") -> DivisorClass:
    """``deg(prod_i df/dx_i) - deg(prod_sigma x_sigma)``.

    ``convention="literal"`` takes ``x_sigma`` as the product of the variables
    of rays *in* the cone; ``"complement"`` uses the irrelevant generators
    (rays *not* in the cone).
    """
    v = f.variety
    total = (0,) * v.cl_rank
    for i in range(v.nvars):
        total = cls_add(total, cls_sub(f.degree, v.deg[i]))
    if convention == "literal":
        monos = [tuple(1 if i in c else 0 for i in range(v.nvars)) for c in v.fan.max_cones]
    elif convention == "complement":
        monos = [tuple(0 if i in c else 1 for i in range(v.nvars)) for c in v.fan.max_cones]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    for m in monos:
        total = cls_sub(total, v.degree_of(m))
    return total


def socle_degrees_bruteforce(ideal: HomogeneousIdeal, window: Iterable[Sequence[int]],
                             session: Session | None = None) -> list[DivisorClass]:
    """Maximal window degrees with nonzero quotient, above which the quotient vanishes."""
    v = ideal.variety
    window = [tuple(b) for b in window]
    nonzero = {b: hilbert_codim(ideal, b, session) > 0 for b in window}
    out = []
    for b in window:
        if not nonzero[b]:
            continue
        above = [c for c in window if c != b and monomial_basis(v, cls_sub(c, b), session)]
        if not any(nonzero[c] for c in above):
            out.append(b)
    return out


# ---------------------------------------------------------------------------
# base loci of monomial ideals


def _faces(v: ToricVariety):
    seen = set()
    for c in v.fan.max_cones:
        for k in range(len(c) + 1):
            for sub in itertools.combinations(c, k):
                if sub not in seen:
                    seen.add(sub)
                    yield sub


def dim_v_monomials(v: ToricVariety, monos: Sequence[Monomial]) -> int:
    """Dimension of the common zero locus (``-1`` when empty)."""
    if any(not any(m) for m in monos):
        return -1
    best = -1
    for cone in _faces(v):
        if all(any(m[i] for i in cone) for m in monos):
            best = max(best, v.dim - len(cone))
    return best


def dim_V_monomial(ideal: HomogeneousIdeal) -> int:
    return dim_v_monomials(ideal.variety, ideal.monomial_generators())


def _piece_monomials(ideal: HomogeneousIdeal, beta, session=None) -> list[Monomial]:
    out = set()
    v = ideal.variety
    for g in ideal.monomial_generators():
        for m in monomial_basis(v, cls_sub(beta, v.degree_of(g)), session):
            out.add(mono_mul(g, m))
    return sorted(out)


def l_index(ideal: HomogeneousIdeal, n: int, eta: Sequence[int], i: int, k: int,
            cutoff: int | None = None, beta: Sequence[int] | None = None, session: Session | None = None):
    """Smallest ``l >= 0`` with ``dim V(I^((n+l) eta)) <= 2k - i``, or ``INFINITE``.

    The default cutoff is ``4*m + 4`` where ``m = m_of(beta, eta)`` if
    ``beta`` is given, and otherwise ``m`` is the largest generator degree
    measured in multiples of ``eta`` (via the positive functional).
    """
    v = ideal.variety
    gens = ideal.monomial_generators()
    if not is_ample(v, eta):
        raise NotAmpleEta(f"eta={tuple(eta)} is not ample")
    if cutoff is None:
        if beta is not None:
            m = m_of(v, beta, eta)
        else:
            from .coxring import DEFAULT_SESSION

            ell = (session or DEFAULT_SESSION).functional(v)
            we = sum(a * b for a, b in zip(ell, eta))
            m = max((math.ceil(sum(a * b for a, b in zip(ell, v.degree_of(g))) / we) for g in gens), default=0)
        cutoff = 4 * m + 4
    if not gens:
        return INFINITE
    for l in range(cutoff + 1):
        monos = _piece_monomials(ideal, cls_scale(n + l, eta), session)
        if dim_v_monomials(v, monos) <= 2 * k - i:
            return l
    return INFINITE


# ---------------------------------------------------------------------------
# file format


def ideal_to_json(ideal: HomogeneousIdeal, aliases: dict[str, str] | None = None) -> str:
    return json.dumps({"aliases": aliases or {}, "generators": [format_polynomial(g) for g in ideal.generators]},
                      indent=2, sort_keys=True)


def ideal_from_json(text: str, v: ToricVariety) -> tuple[HomogeneousIdeal, dict[str, str]]:
    data = json.loads(text)
    aliases = data.get("aliases", {})
    return HomogeneousIdeal.from_strings(v, data.get("generators", []), aliases), aliases


def alias_monomials(v: ToricVariety, aliases: dict[str, str]) -> dict[str, Monomial]:
    return {k: parse_monomial_alias(s, v.nvars) for k, s in aliases.items()}


def hirzebruch_example(v: ToricVariety, exponents: Sequence[int] = (2, 2, 2, 2)):
    """Ideal ``<w^d1, x^d2, y^d3, z^d4>`` on ``F_r`` with ``w, x, y, z`` the irrelevant
    generators, and ``Lambda`` dual to ``w^(d1-1) x^(d2-1) y^(d3-1) z^(d4-1)``
    expanded as a single Cox monomial."""
    gens = irrelevant_generators(v)
    ideal = HomogeneousIdeal.from_monomials(v, [tuple(d * a for a in g) for g, d in zip(gens, exponents)])
    top = (0,) * v.nvars
    for g, d in zip(gens, exponents):
        top = mono_mul(top, tuple((d - 1) * a for a in g))
    lam = SocleFunctional.dual_of(GradedPolynomial.monomial(v, top))
    return ideal, lam, gens


__all__ = [
    "HomogeneousIdeal", "SocleFunctional", "GorensteinRecord", "GorensteinReport", "NotMonomial", "NoSolution",
    "NotNested", "LinkCheckFailed", "graded_piece", "hilbert_codim", "is_artinian_monomial", "annihilator_piece",
    "verify_cox_gorenstein", "effective_classes", "probe_degrees", "colon_piece", "find_link", "jacobian",
    "socle_degree_formula", "socle_degrees_bruteforce", "dim_V_monomial", "dim_v_monomials", "l_index",
    "ideal_to_json", "ideal_from_json", "alias_monomials", "hirzebruch_example", "format_monomial",
]
