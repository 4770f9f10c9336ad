"""Effective constants and codimension bounds.

Rational quantities are exact :class:`~fractions.Fraction` values.  Roots are
computed with :mod:`mpmath` at ``PREC`` bits and every strict inequality a
solver promises is re-checked with interval arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, floor
from typing import Sequence

import mpmath

from .toric import DivisorClass, cls_scale, cls_sub

PREC = 160


class BadTolerance(ValueError):
    pass


class XOutOfRange(ValueError):
    pass


class InfeasibleParameters(ValueError):
    pass


class NotMultiple(ValueError):
    pass


def _binom(a: int, b: int) -> int:
    # zero outside 0 <= b <= a
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def lemma41_bound(n: int, k: int, d: int) -> int:
    """``C(n+k+1, k+1) - C(n-d+k+1, k+1)``, checked against its sum form."""
    if n < 0 or k < 0 or d < 0:
        raise ValueError("need n, k, d >= 0")
    value = _binom(n + k + 1, k + 1) - _binom(n - d + k + 1, k + 1)
    if value != lemma41_sum_form(n, k, d):
        raise AssertionError(f"closed and sum forms disagree at n={n}, k={k}, d={d}")
    return value


def lemma41_sum_form(n: int, k: int, d: int) -> int:
    return sum(_binom(k + 1 + n - j, n - j + 1) for j in range(1, d + 1))


def corollary_bound(n: int, k: int, x, allow_out_of_range: bool = False) -> Fraction:
    """``x (n - x)^k / k!`` for ``0 <= x <= min(k, n)``."""
    x = Fraction(x)
    if not allow_out_of_range and not 0 <= x <= min(k, n):
        raise XOutOfRange(f"x={x} outside [0, min(k, n)] = [0, {min(k, n)}]")
    return x * (n - x) ** k / factorial(k)


# ---------------------------------------------------------------------------
# root solvers


def _to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (or pass-through for rationals)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * (Fraction(2) ** int(exp))


def root_upper(x: Fraction, p: int) -> Fraction:
    """Rational ``y`` with ``y**p >= x`` and ``y`` within a few ulps of ``x**(1/p)``."""
    return _root_bracket(Fraction(x), p, up=True)


def root_lower(x: Fraction, p: int) -> Fraction:
    return _root_bracket(Fraction(x), p, up=False)


def _root_bracket(x: Fraction, p: int, up: bool) -> Fraction:
    if x == 0:
        return Fraction(0)
    with mpmath.workprec(PREC):
        y = mpmath.root(_to_mpf(x), p)
        ulp = mpmath.mpf(2) ** (mpmath.mag(y) - PREC + 4)
        step = ulp if up else -ulp
        while True:
            q = _to_fraction(y)
            if (q ** p >= x) if up else (q ** p <= x):
                return q
            y += step


def _g_upper(delta: Fraction, k: int) -> Fraction:
    """Rigorous rational upper bound of ``3d + (4^k (k+1) d)^(1/(k+1))``."""
    delta = Fraction(delta)
    return 3 * delta + root_upper(4 ** k * (k + 1) * delta, k + 1)


def _g(delta, k: int):
    with mpmath.workprec(PREC):
        d = mpmath.mpf(delta.numerator) / delta.denominator if isinstance(delta, Fraction) else mpmath.mpf(delta)
        return 3 * d + mpmath.root(4 ** k * (k + 1) * d, k + 1)


def delta2_of(eps2, k: int, tol=Fraction(1, 10 ** 12)) -> Fraction:
    """Largest ``d`` (to within ``tol``) with ``3d + (4^k (k+1) d)^(1/(k+1)) <= min(1, eps2) - tol``."""
    eps2 = Fraction(eps2)
    tol = Fraction(tol)
    cap = min(Fraction(1), eps2)
    if eps2 <= 0:
        raise ValueError("eps2 must be positive")
    if tol <= 0 or tol >= cap:
        raise BadTolerance(f"tolerance {tol} must lie in (0, {cap})")
    target = cap - tol
    tgt = _to_mpf(target)
    hi = target / 3  # g(target/3) >= target
    lo = hi / 2
    while _g(lo, k) > tgt:  # g(0) = 0, so a positive feasible point exists
        lo, hi = lo / 2, lo
    # bisect to relative precision tol, which also meets the absolute tolerance
    while hi - lo > tol * lo:
        mid = (lo + hi) / 2
        if _g(mid, k) <= tgt:
            lo = mid
        else:
            hi = mid
    lo = _dyadic_floor(lo, tol * lo)
    if not _g_upper(lo, k) < cap:
        raise AssertionError("delta2 certificate failed")
    return lo


def _to_mpf(q: Fraction):
    with mpmath.workprec(PREC):
        return mpmath.mpf(q.numerator) / q.denominator


def _dyadic_floor(q: Fraction, tol: Fraction) -> Fraction:
    # round down to a multiple of 2^-e with 2^-e <= tol/4
    e = 2
    while Fraction(1, 2 ** e) > tol / 4:
        e += 1
    return Fraction(floor(q * 2 ** e), 2 ** e)


def delta2_closed_form_k1(eps2) -> mpmath.mpf:
    """Root of ``3d + sqrt(8d) = min(1, eps2)`` via the quadratic in ``sqrt(d)``."""
    e = min(Fraction(1), Fraction(eps2))
    with mpmath.workprec(PREC):
        e = _to_mpf(e)
        t = (-mpmath.sqrt(8) + mpmath.sqrt(8 + 12 * e)) / 6
        return t * t


def gamma_min(k: int, d) -> tuple[mpmath.mpf, int]:
    """Smallest ``gamma > 0`` with ``(2 + gamma)^k d`` an integer, returned with that integer."""
    if k < 1:
        raise ValueError("k must be >= 1")
    d = Fraction(d)
    if d <= 0:
        raise ValueError("d must be positive")
    j = floor(2 ** k * d) + 1
    with mpmath.workprec(PREC):
        gamma = mpmath.root(_to_mpf(Fraction(j) / d), k) - 2
        check = (2 + gamma) ** k * _to_mpf(d)
        if abs(check - j) > mpmath.mpf(2) ** (-PREC + 20) * j:
            raise AssertionError("gamma_min self-check failed")
    return gamma, j


def _delta1_denominator(k: int, gamma):
    t = 2 + gamma
    return t ** (k + 1) + t * k + t


def delta1_of(eps1, k: int, gamma, margin=Fraction(1, 10 ** 9)) -> Fraction:
    """``eps1 / ((2+g)^(k+1) + (2+g)k + (2+g))`` shrunk by ``(1 - margin)``, strictly certified."""
    eps1 = Fraction(eps1)
    if eps1 <= 0:
        raise ValueError("eps1 must be positive")
    with mpmath.workprec(PREC):
        g = mpmath.mpf(gamma) if not isinstance(gamma, Fraction) else _to_mpf(gamma)
        approx = _to_mpf(eps1) / _delta1_denominator(k, g) * (1 - _to_mpf(Fraction(margin)))
    out = _dyadic_floor(_to_fraction(approx), Fraction(margin) * _to_fraction(approx) if approx > 0 else Fraction(1))
    if not delta1_holds(out, eps1, k, gamma):
        raise AssertionError("delta1 certificate failed")
    return out


def delta1_holds(delta1, eps1, k: int, gamma) -> bool:
    """Exact check of the strict inequality, reading ``gamma`` as an exact value."""
    return _delta1_denominator(k, _to_fraction(gamma)) * Fraction(delta1) < Fraction(eps1)


# ---------------------------------------------------------------------------
# main certificate


@dataclass
class Constraint:
    text: str
    anchor: str
    satisfied: bool
    slack: str

    def to_dict(self):
        return {"text": self.text, "anchor": self.anchor, "satisfied": self.satisfied, "slack": self.slack}


@dataclass
class BoundCertificate:
    inputs: dict
    constants: dict
    constraints: list[Constraint] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    binding_cap: str = ""

    @property
    def verdict(self) -> bool:
        return all(c.satisfied for c in self.constraints)

    def to_dict(self):
        return {
            "inputs": self.inputs,
            "constants": self.constants,
            "constraints": [c.to_dict() for c in self.constraints],
            "notes": self.notes,
            "binding_cap": self.binding_cap,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _dec(q: Fraction) -> str:
    return mpmath.nstr(_to_mpf(q), 20)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return mpmath.nstr(x, 25)


def main_certificate(eps, k: int, r: int, m: int | None = None, d=None) -> BoundCertificate:
    """Choose the auxiliary constants for a target ``eps`` and check every inequality.

    ``eps1 = eps/2``; ``eps2`` is half the largest value allowed by
    ``(1+eps1)/(1-2 eps2 (r-j))^k <= 1+eps`` (``j = k+1``), capped at 1;
    ``delta`` is the smallest of the caps, shrunk by ``1 - 10^-9``.
    """
    eps = Fraction(eps)
    if k < 1 or eps <= 0:
        raise InfeasibleParameters("need k >= 1 and eps > 0")
    if r < 2 * k + 2:
        raise InfeasibleParameters(f"r={r} < 2k+2={2 * k + 2}: r-(k+1) >= k+1 fails")
    j = k + 1
    rj = r - j
    eps1 = eps / 2
    with mpmath.workprec(PREC):
        ratio = _to_mpf((1 + eps1) / (1 + eps))
        eps2_max = (1 - mpmath.root(ratio, k)) / (2 * rj)
    eps2 = min(Fraction(1), _dyadic_floor(_to_fraction(eps2_max) / 2, Fraction(1, 10 ** 15)))
    delta2 = delta2_of(eps2, k)
    claim_eps2 = Fraction(1, 2 * rj)
    caps = {
        "delta2 (l_i solver at eps2)": delta2,
        "eps2/2": eps2 / 2,
        "1/(4(r-(k+1)))": Fraction(1, 4 * rj),
        "1/(2(k+3))": Fraction(1, 2 * (k + 3)),
    }
    gamma = gamma_up = jd = delta1 = None
    if d is not None:
        gamma, jd = gamma_min(k, d)
        # rational upper bound of gamma; the delta1 denominator increases with gamma
        gamma_up = root_upper(Fraction(jd) / Fraction(d), k) - 2
        delta1 = delta1_of(eps1, k, gamma_up)
        caps["delta1 (codim solver at eps1)"] = delta1
    binding = min(caps, key=lambda name: caps[name])
    delta = caps[binding] * (1 - Fraction(1, 10 ** 9))

    cert = BoundCertificate(
        inputs={"eps": _fmt(eps), "k": k, "r": r, "m": m, "d": None if d is None else _fmt(Fraction(d))},
        constants={"j": j, "eps1": _fmt(eps1), "eps2": _fmt(eps2), "delta2": _fmt(delta2), "delta": _fmt(delta)},
        binding_cap=binding,
    )
    if gamma is not None:
        cert.constants.update({"gamma": _fmt(gamma), "gamma_integer": jd, "delta1": _fmt(delta1)})
    cert.notes.append("gamma integer read as (2+gamma)^k d - 1 terms (printed 'upsilon = (2+delta)^b t - 1')")
    cert.notes.append("the base-locus step uses eps2 = 1/(2(r-(k+1))) in the l_i bound; checked as a separate constraint")

    def add(text, anchor, lhs, rhs, strict=True):
        ok = lhs < rhs if strict else lhs <= rhs
        cert.constraints.append(Constraint(text, anchor, bool(ok), _dec(Fraction(rhs) - Fraction(lhs))))

    add("(1+eps1)/(1-2 eps2 (r-j))^k <= 1+eps", "main theorem degree bound",
        (1 + eps1) / (1 - 2 * eps2 * rj) ** k, 1 + eps, strict=False)
    add("0 < eps2", "l_i bound hypothesis", 0, eps2)
    add("eps2 <= 1", "l_i bound", eps2, 1, strict=False)
    add("3 delta2 + (4^k (k+1) delta2)^(1/(k+1)) < min{1, eps2}", "l_i bound",
        _g_upper(delta2, k), min(Fraction(1), eps2))
    add("3 delta + (4^k (k+1) delta)^(1/(k+1)) < min{1, 1/(2(r-(k+1)))}", "base-locus step, delta2 = delta",
        _g_upper(delta, k), min(Fraction(1), claim_eps2))
    add("delta <= delta2", "base-locus step, delta2 = delta", delta, delta2, strict=False)
    add("delta < eps2/2", "degree of V", delta, eps2 / 2)
    add("delta < 1/(4(r-(k+1)))", "base-locus step", delta, caps["1/(4(r-(k+1)))"])
    add("delta < 1/(2(k+3))", "codimension step", delta, caps["1/(2(k+3))"])
    add("r-(k+1) >= k+1", "base-locus step", k + 1, rj, strict=False)
    if delta1 is not None:
        add("((2+gamma)^(k+1)+(2+gamma)k+(2+gamma)) delta1 < eps1", "codim I^(beta-i eta)",
            _delta1_denominator(k, gamma_up) * delta1, eps1)
        add("delta <= delta1", "codim I^(beta-i eta)", delta, delta1, strict=False)
    if m is not None:
        add("m >= 1/delta", "main theorem hypothesis", 1 / delta, m, strict=False)
    if m is not None and d is not None:
        add("1 <= d", "main theorem hypothesis", 1, Fraction(d), strict=False)
        add("d <= delta m", "main theorem hypothesis", Fraction(d), delta * m, strict=False)
    return cert


# ---------------------------------------------------------------------------
# socle degree bookkeeping


def socle_degree_nl(k: int, beta: Sequence[int], beta0: Sequence[int]) -> DivisorClass:
    """``(k+1) beta - beta0``."""
    return cls_sub(cls_scale(k + 1, beta), beta0)


def nl_condition(k: int, beta: Sequence[int], beta0: Sequence[int], eta: Sequence[int]) -> int:
    """The integer ``n`` with ``k beta - beta0 = n eta``."""
    target = cls_sub(cls_scale(k, beta), beta0)
    ratios = set()
    for t, e in zip(target, eta):
        if e == 0:
            if t != 0:
                raise NotMultiple(f"{target} is not a multiple of {tuple(eta)}")
            continue
        if t % e:
            raise NotMultiple(f"{target} is not a multiple of {tuple(eta)}")
        ratios.add(t // e)
    if len(ratios) > 1:
        raise NotMultiple(f"{target} is not a multiple of {tuple(eta)}")
    if not ratios:
        if any(target):
            raise NotMultiple(f"{target} is not a multiple of {tuple(eta)}")
        return 0
    return ratios.pop()
