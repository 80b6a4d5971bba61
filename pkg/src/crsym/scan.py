"""Enumeration and batch analysis of monomial PQR models."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import GaussRational, monomials_of_degree
from .grading import full_algebra, weight_label
from .model import PQRSpec, build_from_pqr, exponent_matrix_det
from .structure import annotate

__all__ = ["ScanConfig", "enumerate_triples", "enumerate_specs", "analyze_spec", "run_scan"]


@dataclass(frozen=True)
class ScanConfig:
    degree_bound: int
    dedupe: bool = True
    jobs: int = 1
    random_coefficients: bool = False
    seed: int = 0
    closure: bool = False

    def __post_init__(self):
        if self.degree_bound < 2:
            raise ValueError("degree bound must be at least 2")
        if self.jobs < 1:
            raise ValueError("need at least one worker")


def enumerate_triples(degree_bound: int) -> Iterator[tuple]:
    """All ``(alpha, beta, gamma)`` with ``|alpha| + |beta| = 2|gamma| <= bound`` and ``alpha, beta != 0``."""
    for d in range(2, degree_bound + 1, 2):
        gammas = monomials_of_degree(3, d // 2)
        for a in range(1, d):
            for alpha in monomials_of_degree(3, a):
                for beta in monomials_of_degree(3, d - a):
                    for gamma in gammas:
                        yield alpha, beta, gamma


def _random_coefficient(rng: random.Random) -> GaussRational:
    while True:
        c = GaussRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        if not c.is_zero():
            return c


def enumerate_specs(cfg: ScanConfig) -> list[PQRSpec]:
    """Nondegenerate specs in a fixed order, optionally one per symmetry class."""
    rng = random.Random(cfg.seed)
    seen = set()
    out = []
    for alpha, beta, gamma in enumerate_triples(cfg.degree_bound):
        spec = PQRSpec(alpha, beta, gamma)
        if exponent_matrix_det(spec) == 0:
            continue
        if cfg.dedupe:
            key = spec.canonical_key()
            if key in seen:
                continue
            seen.add(key)
        if cfg.random_coefficients:
            spec = PQRSpec(alpha, beta, gamma, *(_random_coefficient(rng) for _ in range(3)))
        out.append(spec)
    return out


def analyze_spec(spec: PQRSpec, closure: bool = False) -> dict:
    """Solve one model and return a flat record for the atlas."""
    model = build_from_pqr(spec)
    report = full_algebra(model, check_closure=closure)
    annotate(report)
    d = model.d
    st = report.structure
    return {
        "spec": spec.to_json(),
        "d": d,
        "dims": {weight_label(c.weight): c.dimension for c in report.components if c.dimension},
        "gc": report.gc_dimension(),
        "g_minus": report.dim(Fraction(-1, d)),
        "g_dual": report.dim(1 - Fraction(1, d)),
        "g0": report.dim(0),
        "g1": report.dim(1),
        "total": report.total_dimension,
        "normal_form": st["normal_form"]["family"],
        "rotation_parameters": st["rotation_parameters"],
        "flags": st["flags"],
        "gc_predicted": st["gc_predicted"]["dim"],
        "g_minus_predicted": st["g_minus_predicted"],
        "decompositions_ok": all(x.get("ok", False) for x in st["rotation_decomposition"]),
        "discrepancies": st["discrepancies"],
    }


def _analyze_packed(args):
    spec, closure = args
    return analyze_spec(spec, closure)


THEOREM_CHECKS = {
    "gc_bound": lambda r: 0 <= r["gc"] <= 3,
    "gc_prediction": lambda r: r["gc"] == r["gc_predicted"],
    "g_minus_prediction": lambda r: r["g_minus"] == r["g_minus_predicted"],
    "g1_is_one": lambda r: r["g1"] == 1,
    "duality": lambda r: (r["g_minus"] > 0) == (r["g_dual"] > 0),
    "rotation_decomposition": lambda r: r["decompositions_ok"],
    "no_imaginary_diagonal_implies_g1_zero": lambda r: r["flags"]["imaginary_diagonal"] or r["g1"] == 0,
    "g1_and_no_real_diagonal_implies_gc_zero": lambda r: not (r["g1"] and not r["flags"]["real_diagonal"]) or r["gc"] == 0,
}


def summarize(records: list[dict]) -> dict:
    ranges: dict = {}
    for r in records:
        for key in ("gc", "g_minus", "g_dual", "g0", "g1", "total"):
            lo, hi = ranges.get(key, (r[key], r[key]))
            ranges[key] = (min(lo, r[key]), max(hi, r[key]))
    checks = {name: sum(1 for r in records if f(r)) for name, f in THEOREM_CHECKS.items()}
    discrepancies = [
        {"spec": r["spec"], **dsc} for r in records for dsc in r["discrepancies"]
    ]
    return {
        "models": len(records),
        "ranges": {k: {"min": lo, "max": hi} for k, (lo, hi) in sorted(ranges.items())},
        "checks_passed": checks,
        "discrepancies": discrepancies,
    }


def run_scan(cfg: ScanConfig, progress=None) -> dict:
    specs = enumerate_specs(cfg)
    work = [(s, cfg.closure) for s in specs]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            records = list(pool.map(_analyze_packed, work, chunksize=8))
    else:
        records = []
        for i, item in enumerate(work):
            records.append(_analyze_packed(item))
            if progress:
                progress(i + 1, len(work))
    return {
        "config": {
            "degree_bound": cfg.degree_bound,
            "dedupe": cfg.dedupe,
            "random_coefficients": cfg.random_coefficients,
            "seed": cfg.seed,
        },
        "summary": summarize(records),
        "models": records,
    }
