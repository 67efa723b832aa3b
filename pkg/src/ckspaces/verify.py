"""Invariant checks run by ``ckspaces verify``.

Every suite returns a list of :class:`Check` records with the largest
residual seen and the threshold it was compared against.  Thresholds can be
overridden globally with ``CK_TOLERANCE``.  All randomness flows from the
base seed, so two runs with the same arguments give identical results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import OmegaSignature, bracket, canonical_signatures, generators, tolerance
from .killing import killing_closed_form, killing_matrix
from .rank_one import (
    beltrami_to_weierstrass,
    is_metric_degenerate_rank1,
    origin,
    sectional_curvature_rank1,
    sphere_residual,
)
from .rank_two import (
    bivector_group_element,
    invariant_form_rank2,
    is_metric_degenerate_rank2,
    origin_rank2,
    pluecker_residuals,
    rank2_sphere_residual,
    sectional_curvature_rank2_origin,
    tangent_vector,
)
from .vector_rep import invariant_form_rank1, random_group_element, vector_generator

SUITES = ("brackets", "killing", "isometry", "pluecker", "curvature")
WORD_LENGTH = 12
WORDS_PER_SIGNATURE = 5


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    max_residual: float
    threshold: float
    cases: int
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "threshold": self.threshold,
            "cases": self.cases,
            "detail": self.detail,
        }


def _check(name: str, residuals, threshold: float, detail: str = "") -> Check:
    residuals = list(residuals)
    worst = max(residuals) if residuals else 0.0
    return Check(name, bool(worst <= threshold), float(worst), threshold, len(residuals), detail)


def check_brackets(n: int) -> list[Check]:
    """Matrix commutators against the structure constants, and the Jacobi identity."""
    gens = generators(n)
    comm_res, jacobi_res = [], []
    for sig in canonical_signatures(n):
        mats = {g: vector_generator(sig, g) for g in gens}
        for g1, g2 in itertools.combinations(gens, 2):
            lhs = mats[g1] @ mats[g2] - mats[g2] @ mats[g1]
            rhs = sum(
                (c * mats[g] for c, g in bracket(sig, g1, g2).terms), np.zeros_like(lhs)
            )
            comm_res.append(float(np.max(np.abs(lhs - rhs))))
        for g1, g2, g3 in itertools.combinations(gens, 3):
            x, y, z = mats[g1], mats[g2], mats[g3]
            jac = _comm(x, _comm(y, z)) + _comm(y, _comm(z, x)) + _comm(z, _comm(x, y))
            jacobi_res.append(float(np.max(np.abs(jac))))
    tol = tolerance(0.0)
    return [
        _check("commutators", comm_res, tol, f"all 3^{n} canonical signatures"),
        _check("jacobi", jacobi_res, tol, f"all 3^{n} canonical signatures"),
    ]


def _comm(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def check_killing(n: int) -> list[Check]:
    res = [
        float(np.max(np.abs(killing_matrix(sig) - killing_closed_form(sig))))
        for sig in canonical_signatures(n)
    ]
    return [_check("killing_diagonal", res, tolerance(0.0), f"all 3^{n} canonical signatures")]


def _sample_signatures(n: int, seed: int, count: int) -> list[OmegaSignature]:
    """Canonical signatures plus a few with random magnitudes."""
    rng = np.random.default_rng(seed)
    out = list(canonical_signatures(n))
    for _ in range(count):
        out.append(OmegaSignature([float(v) for v in rng.choice([-1, 1], n) * rng.uniform(0.3, 2.0, n)]))
    return out


def check_isometry(n: int, seed: int = 0) -> list[Check]:
    form1, sphere1, form2, sphere2 = [], [], [], []
    for k, sig in enumerate(_sample_signatures(n, seed, 4)):
        lam1 = invariant_form_rank1(sig)
        lam2 = invariant_form_rank2(sig) if n >= 3 else None
        for w in range(WORDS_PER_SIGNATURE):
            g = random_group_element(sig, seed + 1000 * k + w, WORD_LENGTH, scale=0.7)
            m = g.matrix
            form1.append(float(np.max(np.abs(m.T @ lam1 @ m - lam1))))
            sphere1.append(abs(sphere_residual(sig, m @ origin(n))))
            if lam2 is not None:
                b = bivector_group_element(g)
                form2.append(float(np.max(np.abs(b.T @ lam2 @ b - lam2))))
                sphere2.append(abs(rank2_sphere_residual(sig, b @ origin_rank2(n))))
    checks = [
        _check("rank1_form", form1, tolerance(1e-9)),
        _check("rank1_sphere", sphere1, tolerance(1e-10)),
    ]
    if n >= 3:
        checks += [
            _check("rank2_form", form2, tolerance(1e-9)),
            _check("rank2_sphere", sphere2, tolerance(1e-10)),
        ]
    return checks


def check_pluecker(n: int, seed: int = 0) -> list[Check]:
    if n < 3:
        return [Check("pluecker_relations", True, 0.0, tolerance(1e-9), 0, "needs N >= 3")]
    res = []
    for k, sig in enumerate(_sample_signatures(n, seed, 4)):
        for w in range(WORDS_PER_SIGNATURE):
            g = random_group_element(sig, seed + 1000 * k + w, WORD_LENGTH, scale=0.7)
            x = bivector_group_element(g) @ origin_rank2(n)
            res.append(float(np.max(np.abs(pluecker_residuals(x)))))
    return [_check("pluecker_relations", res, tolerance(1e-9))]


def check_curvature(n: int, seed: int = 0, points: int = 3, planes: int = 2) -> list[Check]:
    rng = np.random.default_rng(seed)
    rank1 = []
    for sig in canonical_signatures(n):
        if is_metric_degenerate_rank1(sig):
            continue
        for _ in range(points):
            eta = _chart_point(sig, rng)
            for _ in range(planes):
                u, v = rng.normal(size=(2, n))
                rank1.append(abs(sectional_curvature_rank1(sig, eta, u, v) - sig[1]))
    checks = [_check("rank1_sectional", rank1, tolerance(1e-4), "theory: w1")]
    if n >= 3:
        same, disjoint = [], []
        for sig in canonical_signatures(n):
            if is_metric_degenerate_rank2(sig):
                continue
            for i in range(1, n):
                u = tangent_vector(n, f"P_(1){i}")
                same.append(abs(sectional_curvature_rank2_origin(sig, u, tangent_vector(n, f"P_(2){i}")) - sig[2]))
                for j in range(1, n):
                    if j != i:
                        k = sectional_curvature_rank2_origin(sig, u, tangent_vector(n, f"P_(2){j}"))
                        disjoint.append(abs(k))
        checks += [
            _check("rank2_same_index", same, tolerance(1e-4), "theory: w2"),
            _check("rank2_disjoint_index", disjoint, tolerance(1e-4), "theory: 0"),
        ]
    return checks


def _chart_point(sig: OmegaSignature, rng: np.random.Generator) -> np.ndarray:
    """Random Beltrami point well inside the x^0 > 0 patch."""
    while True:
        eta = rng.uniform(-0.4, 0.4, sig.n)
        try:
            beltrami_to_weierstrass(sig, eta)
        except ValueError:
            continue
        return eta


def run_suite(suite: str, n: int, seed: int = 0) -> list[Check]:
    if suite == "brackets":
        return check_brackets(n)
    if suite == "killing":
        return check_killing(n)
    if suite == "isometry":
        return check_isometry(n, seed)
    if suite == "pluecker":
        return check_pluecker(n, seed)
    if suite == "curvature":
        return check_curvature(n, seed)
    raise ValueError(f"unknown suite {suite!r}")


def run_suites(suites, n: int, seed: int = 0) -> dict[str, list[Check]]:
    """Run several suites; the result is keyed and ordered by suite name."""
    return {s: run_suite(s, n, seed) for s in sorted(suites)}


__all__ = ["Check", "SUITES", "run_suite", "run_suites"]
