"""Simplicial projective toric varieties given by fans.

The Cox ring of a variety with ``r`` rays is ``Q[x1, ..., xr]`` graded by the
class group ``Cl = Z^r / M``.  The grading is stored as one integer vector per
variable, canonicalised by a row Hermite normal form so that e.g. the
Hirzebruch surface ``F_r`` gets degrees ``(1,0), (0,1), (1,0), (r,1)``.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from . import intlin

DivisorClass = tuple[int, ...]

INFINITE = math.inf


class FanError(ValueError):
    """Malformed fan input (non-primitive or repeated rays, bad indices)."""


class NotSimplicial(FanError):
    pass


class NotComplete(FanError):
    pass


class TorsionClassGroup(FanError):
    def __init__(self, factors):
        self.factors = list(factors)
        super().__init__(f"class group has torsion; invariant factors {self.factors}")


class BadWeights(ValueError):
    pass


class NotAmpleEta(ValueError):
    pass


class NotNefClass(ValueError):
    """Raised by :func:`m_of` when no nonnegative multiple fits below the class."""


def cls_add(a: Sequence[int], b: Sequence[int]) -> DivisorClass:
    return tuple(x + y for x, y in zip(a, b))


def cls_sub(a: Sequence[int], b: Sequence[int]) -> DivisorClass:
    return tuple(x - y for x, y in zip(a, b))


def cls_scale(t: int, a: Sequence[int]) -> DivisorClass:
    return tuple(t * x for x in a)


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        seen = set()
        for u in self.rays:
            if len(u) != self.dim:
                raise FanError(f"ray {u} does not have length {self.dim}")
            g = 0
            for x in u:
                g = gcd(g, x)
            if g != 1:
                raise FanError(f"ray {u} is not primitive")
            if u in seen:
                raise FanError(f"ray {u} is repeated")
            seen.add(u)
        for c in self.max_cones:
            if len(set(c)) != len(c) or any(not 0 <= i < len(self.rays) for i in c):
                raise FanError(f"bad cone {c}")

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "rays": [list(u) for u in self.rays],
                           "max_cones": [list(c) for c in self.max_cones]})

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        data = json.loads(text)
        try:
            return cls(data["dim"], data["rays"], data["max_cones"])
        except KeyError as exc:
            raise FanError(f"fan file is missing key {exc}") from None


def load_fan(path) -> Fan:
    with open(path) as fh:
        return Fan.from_json(fh.read())


@dataclass(frozen=True)
class WallCurve:
    wall: tuple[int, ...]
    relation: tuple[int, ...]


@dataclass(frozen=True)
class ToricVariety:
    fan: Fan
    cl_rank: int
    deg: tuple[DivisorClass, ...]
    torsion_witness: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return self.fan.dim

    @property
    def nvars(self) -> int:
        return len(self.fan.rays)

    def degree_of(self, exponents: Sequence[int]) -> DivisorClass:
        out = [0] * self.cl_rank
        for a, d in zip(exponents, self.deg):
            if a:
                for j in range(self.cl_rank):
                    out[j] += a * d[j]
        return tuple(out)

    @cached_property
    def walls(self) -> tuple[WallCurve, ...]:
        return tuple(_wall_curves(self.fan))

    @cached_property
    def _wall_functionals(self) -> tuple[tuple[Fraction, ...], ...]:
        # phi with phi . Q = relation, i.e. phi = c Q^T (Q Q^T)^-1
        q = [list(row) for row in intlin.transpose(self.deg)]  # cl_rank x r
        qqt = intlin.matmul(q, intlin.transpose(q))
        out = []
        for w in self.walls:
            rhs = intlin.matmul([list(w.relation)], intlin.transpose(q))[0]
            phi = intlin.solve(intlin.transpose(qqt), rhs)
            out.append(tuple(phi))
        return tuple(out)

    def wall_pairings(self, c: Sequence[int]) -> list[Fraction]:
        """Intersection numbers (up to positive scaling) of ``c`` with each wall curve."""
        return [sum((f * x for f, x in zip(phi, c)), Fraction(0)) for phi in self._wall_functionals]


def _cone_coords(rays, cone, vec):
    """Coordinates of ``vec`` in the basis of the cone's rays, or None."""
    cols = [list(rays[i]) for i in cone]
    a = intlin.transpose(cols)
    return intlin.solve(a, list(vec))


def _wall_curves(fan: Fan) -> list[WallCurve]:
    walls: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for c in fan.max_cones:
        for drop in c:
            tau = tuple(i for i in c if i != drop)
            walls.setdefault(tau, []).append(c)
    out = []
    for tau in sorted(walls):
        cones = walls[tau]
        if len(cones) != 2:
            raise NotComplete(f"wall {list(tau)} lies in {len(cones)} maximal cones (expected 2)")
        sigma, sigma2 = cones
        (a,) = set(sigma) - set(tau)
        (b,) = set(sigma2) - set(tau)
        lam = _cone_coords(fan.rays, sigma, fan.rays[b])
        coeff = dict(zip(sigma, lam))
        if coeff[a] >= 0:
            raise NotComplete(f"cones {list(sigma)} and {list(sigma2)} lie on the same side of wall {list(tau)}")
        rel = [Fraction(0)] * len(fan.rays)
        rel[b] = Fraction(1)
        for i in sigma:
            rel[i] = -coeff[i]
        den = math.lcm(*(x.denominator for x in rel))
        ints = [int(x * den) for x in rel]
        g = 0
        for x in ints:
            g = gcd(g, x)
        out.append(WallCurve(tau, tuple(x // g for x in ints)))
    return out


def check_fan(fan: Fan, samples: int = 64) -> None:
    """Raise NotSimplicial/NotComplete if the fan is not complete and simplicial."""
    n = fan.dim
    if not fan.max_cones:
        raise NotComplete("fan has no maximal cones")
    for c in fan.max_cones:
        vecs = [fan.rays[i] for i in c]
        rk = intlin.rank(vecs)
        if rk < len(c):
            raise NotSimplicial(f"rays of cone {list(c)} are linearly dependent")
        if len(c) != n:
            raise NotComplete(f"cone {list(c)} is not full-dimensional")
    walls = _wall_curves(fan)  # raises NotComplete on irregular walls
    # adjacency connectivity
    adj: dict[tuple, set] = {c: set() for c in fan.max_cones}
    owner: dict[tuple, list] = {}
    for c in fan.max_cones:
        for drop in c:
            owner.setdefault(tuple(i for i in c if i != drop), []).append(c)
    for cs in owner.values():
        if len(cs) == 2:
            adj[cs[0]].add(cs[1])
            adj[cs[1]].add(cs[0])
    start = fan.max_cones[0]
    seen = {start}
    stack = [start]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(fan.max_cones):
        raise NotComplete("maximal cones are not connected through walls")
    # support covering, by sampling integer directions
    rng = random.Random(0)
    for _ in range(samples):
        v = [rng.randint(-50, 50) for _ in range(n)]
        if not any(v):
            continue
        if not any(all(x >= 0 for x in _cone_coords(fan.rays, c, v)) for c in fan.max_cones):
            raise NotComplete(f"direction {v} lies in no maximal cone")
    del walls


def build_variety(fan: Fan, name: str = "") -> ToricVariety:
    check_fan(fan)
    r = len(fan.rays)
    n = fan.dim
    ray_matrix = [list(u) for u in fan.rays]  # r x n, the map M -> Z^r
    s, u, _ = intlin.smith_normal_form(ray_matrix)
    diag = [s[i][i] for i in range(min(r, n))]
    rk = sum(1 for d in diag if d)
    if rk < n:
        raise NotComplete("rays do not span the lattice")
    torsion = tuple(d for d in diag if d > 1)
    if torsion:
        raise TorsionClassGroup(torsion)
    q = intlin.hermite_normal_form(u[rk:])
    deg = tuple(tuple(q[j][i] for j in range(len(q))) for i in range(r))
    return ToricVariety(fan, r - n, deg, tuple(d for d in diag), name)


# ---------------------------------------------------------------------------
# builders


def projective_space(n: int) -> ToricVariety:
    if n < 1:
        raise ValueError("n must be positive")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = list(itertools.combinations(range(n + 1), n))
    return build_variety(Fan(n, rays, cones), f"p:{n}")


def weighted_projective(*weights: int) -> ToricVariety:
    """Weighted projective space ``P(q0, ..., qk)``; ray ``i`` has degree ``qi``.

    When some weight equals 1 the remaining rays are the standard basis and
    the weight-1 ray is ``-sum q_i e_i``.
    """
    q = [int(w) for w in weights]
    k = len(q) - 1
    if k < 1 or any(w <= 0 for w in q):
        raise BadWeights("need at least two positive weights")
    if math.gcd(*q) != 1:
        raise BadWeights(f"weights {q} are not coprime")
    for sub in itertools.combinations(q, k):
        if math.gcd(*sub) != 1:
            raise BadWeights(f"weights {q} are not well-formed")
    if 1 in q:
        j = q.index(1)
        others = [i for i in range(k + 1) if i != j]
        rays: list[tuple[int, ...]] = [()] * (k + 1)
        for pos, i in enumerate(others):
            rays[i] = tuple(int(p == pos) for p in range(k))
        rays[j] = tuple(-q[i] for i in others)
    else:
        _, u, v = intlin.smith_normal_form([[w] for w in q])
        if v[0][0] < 0:
            u = [[-x for x in row] for row in u]
        rays = [tuple(u[row][i] for row in range(1, k + 1)) for i in range(k + 1)]
    cones = list(itertools.combinations(range(k + 1), k))
    name = "wp:" + ",".join(map(str, q))
    return build_variety(Fan(k, rays, cones), name)


def hirzebruch(r: int) -> ToricVariety:
    """``F_r`` with rays (-1,r), (0,1), (1,0), (0,-1)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    rays = [(-1, r), (0, 1), (1, 0), (0, -1)]
    cones = [(1, 2), (2, 3), (0, 3), (0, 1)]
    return build_variety(Fan(2, rays, cones), f"f:{r}")


def product_of_projective(a: int, b: int) -> ToricVariety:
    n = a + b
    rays = []
    for i in range(a):
        rays.append(tuple(int(j == i) for j in range(n)))
    rays.append(tuple([-1] * a + [0] * b))
    for i in range(b):
        rays.append(tuple(int(j == a + i) for j in range(n)))
    rays.append(tuple([0] * a + [-1] * b))
    cones = []
    for c1 in itertools.combinations(range(a + 1), a):
        for c2 in itertools.combinations(range(b + 1), b):
            cones.append(c1 + tuple(a + 1 + i for i in c2))
    return build_variety(Fan(n, rays, cones), f"pxp:{a},{b}")


def variety_from_spec(spec: str) -> ToricVariety:
    """Parse ``p:N``, ``wp:q0,q1,..``, ``f:r``, ``pxp:a,b`` or a fan file path."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "p" and arg:
            return projective_space(int(arg))
        if kind == "wp" and arg:
            return weighted_projective(*(int(x) for x in arg.split(",")))
        if kind == "f" and arg:
            return hirzebruch(int(arg))
        if kind == "pxp" and arg:
            a, b = (int(x) for x in arg.split(","))
            return product_of_projective(a, b)
    except ValueError as exc:
        if isinstance(exc, (FanError, BadWeights)):
            raise
        raise ValueError(f"bad variety spec {spec!r}") from None
    if not os.path.exists(spec):
        raise ValueError(f"bad variety spec {spec!r}: expected p:N, wp:q0,q1,.., f:r, pxp:a,b or a fan JSON file")
    return build_variety(load_fan(spec), spec)


# ---------------------------------------------------------------------------
# divisor classes


def irrelevant_generators(v: ToricVariety) -> list[tuple[int, ...]]:
    """One square-free monomial per maximal cone: the product of the variables
    whose rays are *not* in the cone.  Duplicates are dropped, order kept."""
    out = []
    for c in v.fan.max_cones:
        mono = tuple(0 if i in c else 1 for i in range(v.nvars))
        if mono not in out:
            out.append(mono)
    return out


def anticanonical(v: ToricVariety) -> DivisorClass:
    return v.degree_of([1] * v.nvars)


def is_nef(v: ToricVariety, c: Sequence[int]) -> bool:
    return all(p >= 0 for p in v.wall_pairings(c))


def is_ample(v: ToricVariety, c: Sequence[int]) -> bool:
    return all(p > 0 for p in v.wall_pairings(c))


def is_effective(v: ToricVariety, c: Sequence[int]) -> bool:
    from .coxring import monomial_basis

    return bool(monomial_basis(v, tuple(c)))


def strongly_fano(v: ToricVariety, d: Sequence[int], k: int | None = None) -> bool:
    k = v.dim if k is None else k
    if not is_ample(v, d):
        return False
    return is_ample(v, cls_sub(anticanonical(v), cls_scale(k - 1, d)))


def m_of(v: ToricVariety, beta: Sequence[int], eta: Sequence[int], mode: str = "nef"):
    """Largest ``i >= 0`` with ``beta - i*eta`` nef (or effective with ``mode="effective"``)."""
    if not is_ample(v, eta):
        raise NotAmpleEta(f"eta={tuple(eta)} is not ample")
    if mode == "effective":
        if not is_effective(v, beta):
            raise NotNefClass(f"{tuple(beta)} is not effective")
        i = 0
        while is_effective(v, cls_sub(beta, cls_scale(i + 1, eta))):
            i += 1
        return i
    if mode != "nef":
        raise ValueError(f"unknown mode {mode!r}")
    pb = v.wall_pairings(beta)
    pe = v.wall_pairings(eta)
    if not pb:
        return INFINITE
    m = min(math.floor(b / e) for b, e in zip(pb, pe))
    if m < 0:
        raise NotNefClass(f"{tuple(beta)} is not nef")
    return m


def find_ample_class(v: ToricVariety, bound: int = 8) -> DivisorClass | None:
    """Smallest max-norm ample class (lexicographic tie break), or None."""
    for b in range(1, bound + 1):
        for cand in itertools.product(range(-b, b + 1), repeat=v.cl_rank):
            if max(abs(x) for x in cand) == b and is_ample(v, cand):
                return cand
    return None


def cox_summary(v: ToricVariety) -> dict:
    """Grading data and irrelevant generators with their degrees."""
    from .coxring import format_monomial

    gens = irrelevant_generators(v)
    return {
        "degrees": [list(d) for d in v.deg],
        "irrelevant_generators": [format_monomial(m) for m in gens],
        "irrelevant_degrees": [list(v.degree_of(m)) for m in gens],
    }


def cox_summary_json(v: ToricVariety) -> str:
    """Canonical one-line JSON of :func:`cox_summary` (the golden-file format)."""
    return json.dumps(cox_summary(v), sort_keys=True) + "\n"
