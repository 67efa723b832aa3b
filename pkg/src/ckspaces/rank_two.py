"""The rank-two CK space S^(2): the space of lines of S^(1).

Rank-adapted notation (N >= 3)::

    w1, w2, w3, ..., wN   ==   k(2), k1, k2, ..., k(N-1)

    Omega_01   = -J_(1)(2)
    Omega_0j+1 =  P_(2)j        j = 1..N-1
    Omega_1j+1 =  P_(1)j
    Omega_i+1j+1 = J_ij         1 <= i < j <= N-1

so that k_ij = w_{i+1,j+1} and k_0j = w_{1,j+1}. Ambient points are Pluecker
vectors ``x[ij]`` (i < j) stored in lexicographic pair order; the Beltrami
chart is ``eta^i = x^{0,i+1}/x^{01}`` (momentum-like) and
``xi^i = x^{1,i+1}/x^{01}`` (position-like). Chart tangent vectors are
ordered ``(d eta^1..d eta^{N-1}, d xi^1..d xi^{N-1})``, which at the origin
matches the generator basis ``(P_(1)1..P_(1)N-1, P_(2)1..P_(2)N-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import GeneratorIndex, OmegaSignature, generator_position, generators, omega_product
from .errors import (
    ChartDomainError,
    DegenerateLineError,
    DegenerateMetricError,
    SingularLocusError,
    UnsupportedDimensionError,
)
from .numerics import numerical_jacobian, sectional_curvature
from .rank_one import CHART_TOLERANCE, FoliationReport, Leaf, MetricAtPoint, sphere_residual
from .vector_rep import GroupElement

KINDS = ("J12", "P1", "P2", "J")


@dataclass(frozen=True)
class RankTwoGenerator:
    """A rank-adapted generator.

    ``kind`` is ``"J12"`` for J_(1)(2), ``"P1"``/``"P2"`` for P_(1)i/P_(2)i
    (index ``i``), and ``"J"`` for J_ij (indices ``i < j``).
    """

    kind: str
    i: int = 0
    j: int = 0

    def label(self) -> str:
        if self.kind == "J12":
            return "J_(1)(2)"
        if self.kind == "P1":
            return f"P_(1){self.i}"
        if self.kind == "P2":
            return f"P_(2){self.i}"
        return f"J_{self.i}{self.j}"

    def to_index(self) -> tuple[int, GeneratorIndex]:
        """(sign, Omega index) with this generator = sign * Omega."""
        if self.kind == "J12":
            return -1, GeneratorIndex(0, 1)
        if self.kind == "P1":
            return 1, GeneratorIndex(1, self.i + 1)
        if self.kind == "P2":
            return 1, GeneratorIndex(0, self.i + 1)
        if self.kind == "J":
            return 1, GeneratorIndex(self.i + 1, self.j + 1)
        raise ValueError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def from_index(cls, g: GeneratorIndex) -> RankTwoGenerator:
        a, b = g
        if (a, b) == (0, 1):
            return cls("J12")
        if a == 0:
            return cls("P2", b - 1)
        if a == 1:
            return cls("P1", b - 1)
        return cls("J", a - 1, b - 1)


def rank_two_generators(n: int) -> list[RankTwoGenerator]:
    return [RankTwoGenerator.from_index(g) for g in generators(n)]


class RankTwoBeltrami(NamedTuple):
    eta: np.ndarray
    xi: np.ndarray

    def flat(self) -> np.ndarray:
        return np.concatenate([self.eta, self.xi])


def _require_rank_two(sig: OmegaSignature) -> None:
    if sig.n < 3:
        raise UnsupportedDimensionError("rank-two spaces need N >= 3 (N = 2 has rank one)")


def kappa(sig: OmegaSignature, i: int, j: int) -> float:
    """Rank-two two-index constant k_ij (0 <= i <= j <= N-1)."""
    return omega_product(sig, i + 1, j + 1)


def pairs(n: int) -> list[tuple[int, int]]:
    return [tuple(g) for g in generators(n)]


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {tuple(g): k for g, k in generator_position(n).items()}


def bivector_generator(sig: OmegaSignature, g: RankTwoGenerator) -> np.ndarray:
    """Bivector-representation matrix of a rank-adapted generator.

    Built term by term from the e_{ij,kl} expansion of each generator type
    (row pair ij, column pair kl).
    """
    _require_rank_two(sig)
    n = sig.n
    idx = _pair_index(n)
    m = np.zeros((len(idx), len(idx)))
    k2 = sig[1]

    def e(row, col, coef):
        m[idx[row], idx[col]] += coef

    if g.kind == "J":
        i, j = g.i, g.j
        if not 1 <= i < j <= n - 1:
            raise IndexError(f"J_{i}{j} invalid for N={n}")
        kij = kappa(sig, i, j)
        for s in range(j + 2, n + 1):
            e((i + 1, s), (j + 1, s), -kij)
            e((j + 1, s), (i + 1, s), 1)
        for s in range(0, i + 1):
            e((s, i + 1), (s, j + 1), -kij)
            e((s, j + 1), (s, i + 1), 1)
        for s in range(i + 2, j + 1):
            e((i + 1, s), (s, j + 1), kij)
            e((s, j + 1), (i + 1, s), -1)
    elif g.kind == "J12":
        for s in range(2, n + 1):
            e((0, s), (1, s), k2)
            e((1, s), (0, s), -1)
    elif g.kind == "P1":
        j = g.i
        if not 1 <= j <= n - 1:
            raise IndexError(f"P_(1){j} invalid for N={n}")
        k0j = kappa(sig, 0, j)
        for s in range(j + 2, n + 1):
            e((1, s), (j + 1, s), -k0j)
            e((j + 1, s), (1, s), 1)
        e((0, 1), (0, j + 1), -k0j)
        e((0, j + 1), (0, 1), 1)
        for s in range(2, j + 1):
            e((1, s), (s, j + 1), k0j)
            e((s, j + 1), (1, s), -1)
    elif g.kind == "P2":
        j = g.i
        if not 1 <= j <= n - 1:
            raise IndexError(f"P_(2){j} invalid for N={n}")
        c = k2 * kappa(sig, 0, j)
        for s in range(j + 2, n + 1):
            e((0, s), (j + 1, s), -c)
            e((j + 1, s), (0, s), 1)
        for s in range(1, j + 1):
            e((0, s), (s, j + 1), c)
            e((s, j + 1), (0, s), -1)
    else:
        raise ValueError(f"unknown generator kind {g.kind!r}")
    return m


def invariant_form_rank2(sig: OmegaSignature) -> np.ndarray:
    """Diagonal form Lambda_0^(2) on bivector space."""
    _require_rank_two(sig)
    return np.diag(_lambda0_diag(sig))


def _lambda0_diag(sig: OmegaSignature) -> np.ndarray:
    n = sig.n
    k2 = sig[1]
    out = []
    for a, b in pairs(n):
        if (a, b) == (0, 1):
            out.append(1.0)
        elif a == 0:
            out.append(kappa(sig, 0, b - 1))
        elif a == 1:
            out.append(k2 * kappa(sig, 0, b - 1))
        else:
            out.append(k2 * kappa(sig, 0, a - 1) * kappa(sig, 0, b - 1))
    return np.array(out, dtype=float)


def ambient_metric_rank2(sig: OmegaSignature) -> np.ndarray:
    """Flat bivector ambient metric written with k1 k_1i prefactors.

    Term by term this is (dx^01)^2 + k1 sum k_1i (dx^0i+1)^2
    + k1 k(2) sum k_1i (dx^1i+1)^2 + k1 k(2) sum_{i<j} k_1i k_0j (dx^i+1j+1)^2.
    """
    _require_rank_two(sig)
    n = sig.n
    k1, k2 = sig[2], sig[1]
    out = []
    for a, b in pairs(n):
        if (a, b) == (0, 1):
            out.append(1.0)
        elif a == 0:
            out.append(k1 * kappa(sig, 1, b - 1))
        elif a == 1:
            out.append(k1 * k2 * kappa(sig, 1, b - 1))
        else:
            out.append(k1 * k2 * kappa(sig, 1, a - 1) * kappa(sig, 0, b - 1))
    return np.diag(out)


def compound_matrix(m: np.ndarray) -> np.ndarray:
    """Second compound: action of a vector-representation matrix on bivectors."""
    n = m.shape[0] - 1
    ps = pairs(n)
    out = np.empty((len(ps), len(ps)))
    for r, (i, j) in enumerate(ps):
        for c, (k, l) in enumerate(ps):
            out[r, c] = m[i, k] * m[j, l] - m[i, l] * m[j, k]
    return out


def bivector_group_element(g: GroupElement) -> np.ndarray:
    return compound_matrix(g.matrix)


def wedge(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return np.array([p[i] * q[j] - p[j] * q[i] for i, j in pairs(p.size - 1)])


def rank2_sphere_residual(sig: OmegaSignature, x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(_lambda0_diag(sig) * x * x) - 1.0)


def pluecker_from_line(p, q, sig: OmegaSignature, tol: float = 1e-12) -> np.ndarray:
    """Pluecker point of the line through two points of S^(1)."""
    _require_rank_two(sig)
    for pt in (p, q):
        if abs(sphere_residual(sig, pt)) > 1e-8:
            raise DegenerateLineError("line endpoints must lie on the rank-one sphere")
    x = wedge(p, q)
    if np.max(np.abs(x)) <= tol:
        raise DegenerateLineError("points are parallel; they do not span a line")
    norm2 = float(np.sum(_lambda0_diag(sig) * x * x))
    if norm2 <= tol:
        raise DegenerateLineError(f"bivector has non-positive norm {norm2:.3e}; not normalisable")
    x = x / np.sqrt(norm2)
    if x[0] < 0:
        x = -x
    return x


def pluecker_quadruples(n: int) -> list[tuple[int, int, int, int]]:
    return list(itertools.combinations(range(n + 1), 4))


def pluecker_residuals(x) -> np.ndarray:
    """x^ij x^kl - x^ik x^jl + x^il x^jk for every i < j < k < l."""
    x = np.asarray(x, dtype=float)
    d = x.size
    n = int(round((np.sqrt(8 * d + 1) - 1) / 2))
    if n * (n + 1) // 2 != d:
        raise ValueError(f"length {d} is not N(N+1)/2")
    idx = _pair_index(n)
    out = []
    for i, j, k, l in pluecker_quadruples(n):
        out.append(
            x[idx[i, j]] * x[idx[k, l]] - x[idx[i, k]] * x[idx[j, l]] + x[idx[i, l]] * x[idx[j, k]]
        )
    return np.array(out)


def grassmann_invariant_n3(x) -> float:
    """x^01 x^23 - x^02 x^13 + x^03 x^12 (only defined for N = 3)."""
    x = np.asarray(x, dtype=float)
    if x.size != 6:
        raise UnsupportedDimensionError("the quadratic Grassmann invariant exists only for N = 3")
    return float(x[0] * x[5] - x[1] * x[4] + x[2] * x[3])


def eliminate_inessential(sig: OmegaSignature, x0j, x1j) -> np.ndarray:
    """Complete the essential coordinates x^{0j}, x^{1j} (j = 2..N) to a Pluecker point.

    The inessential x^{kl} (k, l >= 2) follow from the 01kl relations and x^{01}
    from the sphere equation, taking the root continuous with the origin.
    """
    _require_rank_two(sig)
    n = sig.n
    x0j = np.asarray(x0j, dtype=float)
    x1j = np.asarray(x1j, dtype=float)
    if x0j.shape != (n - 1,) or x1j.shape != (n - 1,):
        raise ValueError(f"expected {n - 1} values for each of x^0j and x^1j")
    lam = _lambda0_diag(sig)
    idx = _pair_index(n)
    lin = 0.0
    quad = 0.0
    for j in range(2, n + 1):
        lin += lam[idx[0, j]] * x0j[j - 2] ** 2 + lam[idx[1, j]] * x1j[j - 2] ** 2
    for k, l in itertools.combinations(range(2, n + 1), 2):
        c = x0j[k - 2] * x1j[l - 2] - x0j[l - 2] * x1j[k - 2]
        quad += lam[idx[k, l]] * c * c
    # u = (x^01)^2 solves u^2 - (1 - lin) u + quad = 0
    disc = (1.0 - lin) ** 2 - 4.0 * quad
    if disc < 0:
        raise ChartDomainError("no real x^01: essential coordinates outside the chart")
    u = 0.5 * ((1.0 - lin) + np.sqrt(disc))
    if u <= CHART_TOLERANCE**2:
        raise ChartDomainError("x^01 would not be positive: outside the chart")
    x01 = np.sqrt(u)
    x = np.zeros(len(idx))
    x[idx[0, 1]] = x01
    for j in range(2, n + 1):
        x[idx[0, j]] = x0j[j - 2]
        x[idx[1, j]] = x1j[j - 2]
    for k, l in itertools.combinations(range(2, n + 1), 2):
        x[idx[k, l]] = (x0j[k - 2] * x1j[l - 2] - x0j[l - 2] * x1j[k - 2]) / x01
    return x


def rank2_beltrami(x, tol: float = CHART_TOLERANCE) -> RankTwoBeltrami:
    x = np.asarray(x, dtype=float)
    d = x.size
    n = int(round((np.sqrt(8 * d + 1) - 1) / 2))
    if x[0] <= tol:
        raise ChartDomainError("rank-two Beltrami chart needs x^01 > 0")
    idx = _pair_index(n)
    eta = np.array([x[idx[0, i + 1]] for i in range(1, n)]) / x[0]
    xi = np.array([x[idx[1, i + 1]] for i in range(1, n)]) / x[0]
    return RankTwoBeltrami(eta, xi)


def _split(sig: OmegaSignature, eta, xi=None) -> tuple[np.ndarray, np.ndarray]:
    if xi is None:
        v = np.asarray(eta, dtype=float)
        m = sig.n - 1
        if v.shape != (2 * m,):
            raise ValueError(f"expected {2 * m} chart coordinates")
        return v[:m], v[m:]
    eta = np.asarray(eta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if eta.shape != (sig.n - 1,) or xi.shape != (sig.n - 1,):
        raise ValueError(f"expected {sig.n - 1} values for each of eta and xi")
    return eta, xi


def _norm_parts(sig: OmegaSignature, eta, xi):
    """Pieces of |(eta, xi)|^2_k: the quadratic form A and gradient b.

    |(d eta, d xi)|^2 = dv^T A dv and <(eta, xi)|(d eta, d xi)> = b . dv, with
    the cross terms c_ij = eta^i xi^j - eta^j xi^i differentiated by the product
    rule.
    """
    m = sig.n - 1
    k2 = sig[1]
    w = np.array([kappa(sig, 1, i) for i in range(1, m + 1)], dtype=float)
    diag = np.concatenate([w, k2 * w])
    a = np.diag(diag)
    v = np.concatenate([eta, xi])
    b = diag * v
    norm2 = float(np.sum(diag * v * v))
    for i, j in itertools.combinations(range(1, m + 1), 2):
        wij = k2 * kappa(sig, 1, i) * kappa(sig, 0, j)
        if wij == 0:
            continue
        c = eta[i - 1] * xi[j - 1] - eta[j - 1] * xi[i - 1]
        grad = np.zeros(2 * m)
        grad[i - 1] += xi[j - 1]
        grad[j - 1] -= xi[i - 1]
        grad[m + j - 1] += eta[i - 1]
        grad[m + i - 1] -= eta[j - 1]
        a += wij * np.outer(grad, grad)
        b += wij * c * grad
        norm2 += wij * c * c
    return norm2, a, b


def beltrami_norm2_rank2(sig: OmegaSignature, eta, xi=None) -> float:
    _require_rank_two(sig)
    eta, xi = _split(sig, eta, xi)
    return _norm_parts(sig, eta, xi)[0]


def beltrami_to_pluecker(sig: OmegaSignature, eta, xi=None) -> np.ndarray:
    """Inverse of the rank-two Beltrami chart (x^01 > 0 patch)."""
    _require_rank_two(sig)
    eta, xi = _split(sig, eta, xi)
    s = 1.0 + sig[2] * _norm_parts(sig, eta, xi)[0]
    if s <= CHART_TOLERANCE:
        raise ChartDomainError("1 + k1 |(eta, xi)|^2 must be positive on the chart")
    x01 = 1.0 / np.sqrt(s)
    n = sig.n
    idx = _pair_index(n)
    x = np.zeros(len(idx))
    x[idx[0, 1]] = x01
    for i in range(1, n):
        x[idx[0, i + 1]] = x01 * eta[i - 1]
        x[idx[1, i + 1]] = x01 * xi[i - 1]
    for k, l in itertools.combinations(range(2, n + 1), 2):
        x[idx[k, l]] = x01 * (eta[k - 2] * xi[l - 2] - eta[l - 2] * xi[k - 2])
    return x


def transform_rank2(b: np.ndarray, eta, xi=None, sig: OmegaSignature | None = None, tol=CHART_TOLERANCE):
    """Image of a chart point under a bivector group matrix ``b``.

    The map is projective, so the chart point is lifted with x^01 = 1 and the
    image renormalised by its x^01 component.
    """
    if xi is None:
        v = np.asarray(eta, dtype=float)
        m = v.size // 2
        eta, xi = v[:m], v[m:]
    eta = np.asarray(eta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    n = eta.size + 1
    idx = _pair_index(n)
    lift = np.zeros(len(idx))
    lift[0] = 1.0
    for i in range(1, n):
        lift[idx[0, i + 1]] = eta[i - 1]
        lift[idx[1, i + 1]] = xi[i - 1]
    for k, l in itertools.combinations(range(2, n + 1), 2):
        lift[idx[k, l]] = eta[k - 2] * xi[l - 2] - eta[l - 2] * xi[k - 2]
    y = b @ lift
    if abs(y[0]) <= tol:
        raise ChartDomainError("image leaves the rank-two Beltrami chart")
    out = np.concatenate(
        [[y[idx[0, i + 1]] for i in range(1, n)], [y[idx[1, i + 1]] for i in range(1, n)]]
    )
    return out / y[0]


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"P_(1){i}" for i in range(1, n)) + tuple(f"P_(2){i}" for i in range(1, n))


def metric_at_origin_rank2(sig: OmegaSignature) -> MetricAtPoint:
    """Lambda^(2) = diag(Pi, k(2) Pi), Pi = diag(1, k_12, ..., k_1,N-1)."""
    _require_rank_two(sig)
    pi = [kappa(sig, 1, i) for i in range(1, sig.n)]
    diag = [float(p) for p in pi] + [float(sig[1] * p) for p in pi]
    return MetricAtPoint(np.diag(diag), "origin", _labels(sig.n))


def rank2_metric_matrix(sig: OmegaSignature, v) -> np.ndarray:
    eta, xi = _split(sig, v)
    k1 = sig[2]
    norm2, a, b = _norm_parts(sig, eta, xi)
    s = 1.0 + k1 * norm2
    if abs(s) <= CHART_TOLERANCE:
        raise SingularLocusError("1 + k1 |(eta, xi)|^2 vanishes")
    return (s * a - k1 * np.outer(b, b)) / s**2


def rank2_metric(sig: OmegaSignature, eta, xi=None) -> MetricAtPoint:
    """Main metric of S^(2) in rank-two Beltrami coordinates."""
    _require_rank_two(sig)
    eta, xi = _split(sig, eta, xi)
    m = sig.n - 1
    labels = tuple(f"eta^{i}" for i in range(1, m + 1)) + tuple(f"xi^{i}" for i in range(1, m + 1))
    return MetricAtPoint(rank2_metric_matrix(sig, np.concatenate([eta, xi])), "beltrami", labels)


def ambient_pullback_rank2(sig: OmegaSignature, eta, xi=None, h: float = 1e-5) -> np.ndarray:
    """Pullback of the flat bivector metric to the chart, J^T Lambda_0 J."""
    _require_rank_two(sig)
    eta, xi = _split(sig, eta, xi)
    v = np.concatenate([eta, xi])
    jac = numerical_jacobian(lambda t: beltrami_to_pluecker(sig, t), v, h)
    return jac.T @ ambient_metric_rank2(sig) @ jac


def subsidiary_metric_rank2(sig: OmegaSignature, which) -> MetricAtPoint:
    """Subsidiary metric on a fiber of the tangent space at the origin.

    ``which="(2)"`` selects g_(2) on (P_(2)1..P_(2)N-1); an integer ``a`` in
    2..N-1 selects g_a on (P_(1)a..P_(1)N-1, P_(2)a..P_(2)N-1).
    """
    _require_rank_two(sig)
    n = sig.n
    if which == "(2)":
        diag = [float(kappa(sig, 1, i)) for i in range(1, n)]
        return MetricAtPoint(np.diag(diag), "fiber_(2)", tuple(f"P_(2){i}" for i in range(1, n)))
    if isinstance(which, str):
        try:
            which = int(which)
        except ValueError:
            raise ValueError(f"invalid subsidiary selector {which!r}") from None
    a = which
    if not (isinstance(a, (int, np.integer)) and 2 <= a <= n - 1):
        raise ValueError(f"invalid subsidiary selector {which!r}; use '(2)' or 2..{n - 1}")
    kai = [kappa(sig, a, i) for i in range(a, n)]
    diag = [float(k) for k in kai] + [float(sig[1] * k) for k in kai]
    labels = tuple(f"P_(1){i}" for i in range(a, n)) + tuple(f"P_(2){i}" for i in range(a, n))
    return MetricAtPoint(np.diag(diag), f"fiber_{a}", labels)


def foliation_report_rank2(sig: OmegaSignature) -> FoliationReport:
    """Invariant foliations from k(2) = 0 and from each k_a = 0, a = 2..N-1."""
    _require_rank_two(sig)
    n = sig.n
    w = sig.omegas
    leaves = []
    if sig[1] == 0:
        # base: rank-one S^[k1]k2..k(N-1); fiber: rank-one S^[0]k2..k(N-1)
        leaves.append(
            Leaf("(2)", tuple(w[1:]), (0,) + tuple(w[2:]), 1, 1, n - 1, n - 1)
        )
    for a in range(2, n):
        if sig[a + 1] == 0:
            # base: rank-two S^{k(2)[k1]k2..k(a-1)}; fiber: S^{k(2)[k1]k(a+1)..k(N-1)}
            base = tuple(w[:a])
            fiber = (w[0], w[1]) + tuple(w[a + 1:])
            leaves.append(Leaf(str(a), base, fiber, 2, 2, 2 * (a - 1), 2 * (n - a)))
    return FoliationReport(tuple(leaves))


def is_metric_degenerate_rank2(sig: OmegaSignature) -> bool:
    return sig[1] == 0 or any(sig[a] == 0 for a in range(3, sig.n + 1))


def sectional_curvature_rank2(sig: OmegaSignature, v, t1, t2, h: float = 1e-4) -> float:
    """Sectional curvature of the main metric at chart point ``v = (eta, xi)``."""
    _require_rank_two(sig)
    if is_metric_degenerate_rank2(sig):
        raise DegenerateMetricError("main metric of S^(2) is degenerate for this signature")
    v = np.asarray(v, dtype=float)
    return sectional_curvature(lambda p: rank2_metric_matrix(sig, p), v, t1, t2, h)


def sectional_curvature_rank2_origin(sig: OmegaSignature, u, v, h: float = 1e-4) -> float:
    _require_rank_two(sig)
    return sectional_curvature_rank2(sig, np.zeros(2 * (sig.n - 1)), u, v, h)


def tangent_vector(n: int, label: str) -> np.ndarray:
    """Chart tangent vector at the origin for ``P_(1)i`` or ``P_(2)i``."""
    labels = _labels(n)
    if label not in labels:
        raise ValueError(f"unknown translation generator {label!r}")
    out = np.zeros(len(labels))
    out[labels.index(label)] = 1.0
    return out


def origin_rank2(n: int) -> np.ndarray:
    x = np.zeros(n * (n + 1) // 2)
    x[0] = 1.0
    return x
