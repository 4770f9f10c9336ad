"""Seeded verification campaigns for the restriction and multiplication bounds.

Randomness comes from a fixed, portable generator so that a seed reproduces
the same trials in any implementation:

* seeding: ``state = splitmix64(seed)``; a zero state is replaced by
  ``0x9E3779B97F4A7C15``;
* stepping: xorshift64* (shifts 12, 25, 27; multiplier ``0x2545F4914F6CDD1D``);
* trial ``i`` uses the substream seeded with
  ``splitmix64((seed * 0x9E3779B97F4A7C15 + i) mod 2**64)``;
* an integer in ``[a, b]`` is ``a + (x >> 32) % (b - a + 1)`` for one draw ``x``;
* a rational coefficient uses two draws: numerator ``(x >> 32) % 19 - 9``,
  then denominator ``(y >> 32) % 9 + 1``;
* a restriction section draws one coefficient per monomial of ``S^D`` in basis
  order, redrawing zero values.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import __version__, intlin
from .coxring import (
    GradedPolynomial,
    codim,
    format_polynomial,
    graded_dim,
    monomial_basis,
    mult_image,
    restriction_data,
    subspace_from_rows,
)
from .ideals import HomogeneousIdeal, graded_piece
from .macaulay import lower, upper
from .toric import cls_scale, is_ample, strongly_fano, variety_from_spec

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SAMPLERS = ("random-rational", "monomial", "ideal-piece")
THREADS_ENV = "COXLAB_THREADS"


class HypothesisFailed(ValueError):
    """The pair (Y, D) is not strongly Fano."""


def splitmix64(x: int) -> int:
    x = (x + GOLDEN) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK) or GOLDEN

    @classmethod
    def substream(cls, seed: int, index: int) -> "XorShift64Star":
        return cls(splitmix64((seed * GOLDEN + index) & MASK))

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def integer(self, a: int, b: int) -> int:
        return a + (self.next() >> 32) % (b - a + 1)

    def rational(self) -> Fraction:
        num = (self.next() >> 32) % 19 - 9
        den = (self.next() >> 32) % 9 + 1
        return Fraction(num, den)

    def sample(self, items: Sequence, k: int) -> list:
        """``k`` distinct items by a partial Fisher-Yates shuffle, in draw order."""
        pool = list(items)
        for i in range(k):
            j = self.integer(i, len(pool) - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class CampaignConfig:
    variety: str
    divisor: tuple[int, ...]
    ns: tuple[int, ...] = (1, 2, 3, 4)
    trials: int = 200
    seed: int = 0
    sampler: str = "random-rational"
    max_codim: int = 10
    codims: tuple[int, ...] | None = None
    force: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}; choose from {', '.join(SAMPLERS)}")
        if not self.ns or min(self.ns) < 1:
            raise ValueError("n values must be >= 1")
        if self.max_codim < 0:
            raise ValueError("max_codim must be >= 0")

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "divisor": list(self.divisor),
            "ns": list(self.ns),
            "trials": self.trials,
            "seed": self.seed,
            "sampler": self.sampler,
            "max_codim": self.max_codim,
            "codims": None if self.codims is None else list(self.codims),
            "force": self.force,
        }


@dataclass
class CampaignReport:
    kind: str
    config: CampaignConfig
    exploratory: bool
    records: list[dict] = field(default_factory=list)
    identity_failures: int = 0
    lemma_failures: int = 0
    witnesses: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(1 for r in self.records if not r["pass"])

    @property
    def verdict(self) -> bool:
        return self.violations == 0 and self.identity_failures == 0 and self.lemma_failures == 0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config.to_dict(),
            "exploratory": self.exploratory,
            "fingerprint": {"version": __version__, "seed": self.config.seed, "prng": "xorshift64*/splitmix64"},
            "records": self.records,
            "violations": self.violations,
            "identity_failures": self.identity_failures,
            "lemma_failures": self.lemma_failures,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# samplers


def _target_codim(rng: XorShift64Star, cfg: CampaignConfig, dim: int) -> int:
    if cfg.codims:
        choices = [c for c in cfg.codims if 0 <= c <= dim] or [min(cfg.codims[0], dim)]
        return choices[rng.integer(0, len(choices) - 1)]
    return rng.integer(0, min(cfg.max_codim, dim))


def sample_subspace(v, beta, rng: XorShift64Star, cfg: CampaignConfig, session=None):
    basis = monomial_basis(v, beta, session)
    dim = len(basis)
    if cfg.sampler == "ideal-piece":
        # a random monomial ideal, cut to degree beta
        gens = rng.sample(basis, rng.integer(1, min(3, dim)))
        ideal = HomogeneousIdeal.from_monomials(v, gens)
        return graded_piece(ideal, beta, session)
    c = _target_codim(rng, cfg, dim)
    if cfg.sampler == "monomial":
        chosen = set(rng.sample(range(dim), dim - c))
        rows = [[int(j == i) for j in range(dim)] for i in sorted(chosen)]
        return subspace_from_rows(v, beta, rows, session)
    while True:
        rows = [[rng.rational() for _ in range(dim)] for _ in range(dim - c)]
        if intlin.rank(rows) == dim - c:
            return subspace_from_rows(v, beta, rows, session)


def sample_section(v, beta, rng: XorShift64Star, session=None) -> GradedPolynomial:
    """Random section with full monomial support; zero draws are redrawn so that
    ``s`` avoids the coordinate hyperplanes of the coefficient space."""
    terms = {}
    for m in monomial_basis(v, beta, session):
        q = rng.rational()
        while q == 0:
            q = rng.rational()
        terms[m] = q
    return GradedPolynomial.from_dict(v, terms, beta)


# ---------------------------------------------------------------------------
# trials


def _witness(kind, cfg, n, w, s, record) -> dict:
    return {
        "kind": kind,
        "variety": cfg.variety,
        "divisor": list(cfg.divisor),
        "n": n,
        "degree": list(w.degree),
        "W_basis": [format_polynomial(p) for p in w.polynomials()],
        "s": None if s is None else format_polynomial(s),
        "record": record,
    }


@lru_cache(maxsize=None)
def _variety(spec: str):
    return variety_from_spec(spec)


def _plan(cfg: CampaignConfig) -> list[tuple[int, int]]:
    return [(n, t) for n in cfg.ns for t in range(cfg.trials)]


def _macaulay_trial(cfg: CampaignConfig, index: int, n: int):
    v = _variety(cfg.variety)
    rng = XorShift64Star.substream(cfg.seed, index)
    beta = cls_scale(n, cfg.divisor)
    w = sample_subspace(v, beta, rng, cfg)
    c = codim(w)
    c1 = codim(mult_image(w, cfg.divisor))
    bound = upper(c, n)
    rec = {"trial": index, "n": n, "dim": graded_dim(v, beta), "c": c, "observed": c1, "bound": bound,
           "pass": c1 <= bound}
    return rec, None if rec["pass"] else _witness("macaulay", cfg, n, w, None, rec)


def _restriction_trial(cfg: CampaignConfig, index: int, n: int):
    v = _variety(cfg.variety)
    rng = XorShift64Star.substream(cfg.seed, index)
    beta = cls_scale(n, cfg.divisor)
    w = sample_subspace(v, beta, rng, cfg)
    s = sample_section(v, tuple(cfg.divisor), rng)
    data = restriction_data(w, s)
    c, cd = data["c"], data["c_D"]
    bound = lower(c, n)
    rec = {
        "trial": index,
        "n": n,
        "dim": graded_dim(v, beta),
        "c": c,
        "observed": cd,
        "bound": bound,
        "codim_w_minus_d": data["codim_w_minus_d"],
        "identity": c == cd + data["codim_w_minus_d"],
        "pass": cd <= bound,
    }
    if n == 1 and c >= 1:
        rec["lemma_bound"] = c - 1
    bad = not rec["pass"] or not rec["identity"] or cd > rec.get("lemma_bound", cd)
    return rec, _witness("restriction", cfg, n, w, s, rec) if bad else None


def _run_one(args):
    kind, cfg, index, n = args
    fn = _macaulay_trial if kind == "macaulay" else _restriction_trial
    return fn(cfg, index, n)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _run(kind: str, cfg: CampaignConfig, workers: int | None) -> CampaignReport:
    v = variety_from_spec(cfg.variety)
    if len(cfg.divisor) != v.cl_rank:
        raise ValueError(f"divisor class must have {v.cl_rank} entries")
    fano = is_ample(v, cfg.divisor) and strongly_fano(v, cfg.divisor)
    if not fano and not cfg.force:
        raise HypothesisFailed(f"({cfg.variety}, D={tuple(cfg.divisor)}) is not strongly Fano; use force to explore")
    jobs = [(kind, cfg, i, n) for i, (n, _) in enumerate(_plan(cfg))]
    workers = default_workers() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=8))
    else:
        results = [_run_one(j) for j in jobs]
    report = CampaignReport(kind, cfg, exploratory=not fano)
    for rec, wit in results:
        report.records.append(rec)
        if not rec.get("identity", True):
            report.identity_failures += 1
        if "lemma_bound" in rec and rec["observed"] > rec["lemma_bound"]:
            report.lemma_failures += 1
        if wit is not None:
            report.witnesses.append(wit)
    return report


def run_macaulay_campaign(cfg: CampaignConfig, workers: int | None = None) -> CampaignReport:
    """Check ``codim(W * S^D) <= upper(codim W, n)`` on sampled ``W`` in ``S^(nD)``."""
    return _run("macaulay", cfg, workers)


def run_restriction_campaign(cfg: CampaignConfig, workers: int | None = None) -> CampaignReport:
    """Check ``c_D <= lower(c, n)`` (and ``c_D <= c - 1`` for ``n = 1``) on sampled ``W``
    with a random section ``s`` of ``D``; also checks ``c = c_D + codim W(-D)``."""
    return _run("restriction", cfg, workers)
