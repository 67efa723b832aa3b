"""The rank-one CK space S^(1) = SO_{w1..wN}(N+1) / SO_{w2..wN}(N).

Rank-adapted constants: kappa_i = w_i and kappa_ij = w_ij, so kappa_1 is the
curvature and kappa_2, ..., kappa_N fix the signature of the main metric.
Points are plain numpy arrays:

* Weierstrass coordinates ``x = (x^0, ..., x^N)`` on the sphere
  ``(x^0)^2 + sum_l kappa_0l (x^l)^2 = 1``;
* Beltrami coordinates ``eta^i = x^i / x^0`` (patch ``x^0 > 0``);
* geodesic parallel coordinates ``a = (a^1, ..., a^N)``;
* geodesic polar coordinates ``theta = (theta^1, ..., theta^N)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import GeneratorIndex, OmegaSignature, ck_cosine, ck_sine, omega_product
from .errors import ChartDomainError, ConstraintViolation, DegenerateMetricError, SingularLocusError
from .numerics import numerical_jacobian, sectional_curvature
from .vector_rep import GroupElement, invariant_form_rank1, one_param_subgroup

CHART_TOLERANCE = 1e-10
SPHERE_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class MetricAtPoint:
    matrix: np.ndarray
    chart: str
    labels: tuple[str, ...] = ()

    def is_degenerate(self, tol: float = 1e-12) -> bool:
        return bool(np.min(np.abs(np.linalg.eigvalsh(self.matrix))) <= tol)


@dataclass(frozen=True)
class Leaf:
    """One invariant foliation: where it comes from and the CK spaces it relates."""

    zero_position: str
    base_signature: tuple[float, ...]
    fiber_signature: tuple[float, ...]
    base_rank: int = 1
    fiber_rank: int = 1
    base_dimension: int = 0
    fiber_dimension: int = 0


@dataclass(frozen=True)
class FoliationReport:
    leaves: tuple[Leaf, ...] = field(default_factory=tuple)

    @property
    def zero_positions(self) -> list[str]:
        return [leaf.zero_position for leaf in self.leaves]

    def __bool__(self) -> bool:
        return bool(self.leaves)


def _kappa_weights(sig: OmegaSignature) -> np.ndarray:
    """(1, kappa_12, ..., kappa_1N): the diagonal of Lambda^(1)."""
    return np.array([float(omega_product(sig, 1, i)) for i in range(1, sig.n + 1)])


def origin(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    x = np.zeros(n + 1)
    x[0] = 1.0
    return x


def sphere_residual(sig: OmegaSignature, x) -> float:
    x = np.asarray(x, dtype=float)
    lam = np.diag(invariant_form_rank1(sig))
    return float(np.sum(lam * x * x) - 1.0)


def act(g: GroupElement, p, tol: float = SPHERE_TOLERANCE) -> np.ndarray:
    """Linear action on Weierstrass coordinates."""
    p = np.asarray(p, dtype=float)
    if p.shape != (g.signature.n + 1,):
        raise ValueError(f"point of shape {p.shape} does not match N={g.signature.n}")
    if abs(sphere_residual(g.signature, p)) > tol:
        raise ConstraintViolation("point is not on the CK sphere")
    return g.matrix @ p


def parallel_to_weierstrass(sig: OmegaSignature, a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n = sig.n
    if a.shape != (n,):
        raise ValueError(f"expected {n} parallel coordinates")
    k0 = [omega_product(sig, 0, l) for l in range(n + 1)]
    ck = [1.0] + [ck_cosine(k0[l], a[l - 1]) for l in range(1, n + 1)]
    x = np.empty(n + 1)
    x[0] = np.prod(ck[1:])
    for i in range(1, n + 1):
        x[i] = ck_sine(k0[i], a[i - 1]) * np.prod(ck[i + 1:])
    return x


def parallel_to_weierstrass_by_products(sig: OmegaSignature, a) -> np.ndarray:
    """exp(a^1 P_1) ... exp(a^N P_N) O evaluated with group matrices."""
    m = np.eye(sig.n + 1)
    for i, ai in enumerate(a, start=1):
        m = m @ one_param_subgroup(sig, GeneratorIndex(0, i), float(ai)).matrix
    return m @ origin(sig.n)


def polar_to_weierstrass(sig: OmegaSignature, theta) -> np.ndarray:
    """exp(th^N J_{N-1,N}) ... exp(th^2 J_12) exp(th^1 P_1) O."""
    theta = np.asarray(theta, dtype=float)
    n = sig.n
    if theta.shape != (n,):
        raise ValueError(f"expected {n} polar coordinates")
    x = one_param_subgroup(sig, GeneratorIndex(0, 1), theta[0]).matrix @ origin(n)
    for k in range(2, n + 1):
        x = one_param_subgroup(sig, GeneratorIndex(k - 1, k), theta[k - 1]).matrix @ x
    return x


def weierstrass_to_beltrami(p, tol: float = CHART_TOLERANCE) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if abs(p[0]) <= tol:
        raise ChartDomainError("Beltrami chart needs x^0 != 0")
    return p[1:] / p[0]


def beltrami_norm2(sig: OmegaSignature, eta) -> float:
    eta = np.asarray(eta, dtype=float)
    return float(np.sum(_kappa_weights(sig) * eta * eta))


def beltrami_to_weierstrass(sig: OmegaSignature, eta) -> np.ndarray:
    """Inverse of the Beltrami chart on the ``x^0 > 0`` patch."""
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (sig.n,):
        raise ValueError(f"expected {sig.n} Beltrami coordinates")
    s = 1.0 + sig[1] * beltrami_norm2(sig, eta)
    if s <= CHART_TOLERANCE:
        raise ChartDomainError("point is not on the x^0 > 0 patch of the sphere")
    x0 = 1.0 / np.sqrt(s)
    return np.concatenate([[x0], x0 * eta])


def transform_beltrami(g: GroupElement, eta, tol: float = CHART_TOLERANCE) -> np.ndarray:
    """Group action in Beltrami coordinates (a fractional-linear map)."""
    y = g.matrix @ np.concatenate([[1.0], np.asarray(eta, dtype=float)])
    if abs(y[0]) <= tol:
        raise ChartDomainError("image leaves the Beltrami chart")
    return y[1:] / y[0]


def metric_at_origin_rank1(sig: OmegaSignature) -> MetricAtPoint:
    """Lambda^(1) = diag(1, kappa_12, ..., kappa_1N) in the basis (P_1, ..., P_N)."""
    labels = tuple(f"P_{i}" for i in range(1, sig.n + 1))
    return MetricAtPoint(np.diag(_kappa_weights(sig)), "origin", labels)


def beltrami_metric_matrix(sig: OmegaSignature, eta) -> np.ndarray:
    eta = np.asarray(eta, dtype=float)
    w = _kappa_weights(sig)
    k1 = sig[1]
    s = 1.0 + k1 * float(np.sum(w * eta * eta))
    if abs(s) <= CHART_TOLERANCE:
        raise SingularLocusError("1 + kappa_1 |eta|^2 vanishes")
    weta = w * eta
    return (s * np.diag(w) - k1 * np.outer(weta, weta)) / s**2


def beltrami_metric(sig: OmegaSignature, eta) -> MetricAtPoint:
    """Main metric in Beltrami coordinates.

    ds^2 = [(1 + k1 |eta|^2) |d eta|^2 - k1 <eta|d eta>^2] / (1 + k1 |eta|^2)^2
    """
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (sig.n,):
        raise ValueError(f"expected {sig.n} Beltrami coordinates")
    labels = tuple(f"eta^{i}" for i in range(1, sig.n + 1))
    return MetricAtPoint(beltrami_metric_matrix(sig, eta), "beltrami", labels)


def parallel_metric(sig: OmegaSignature, a) -> MetricAtPoint:
    """Main metric in geodesic parallel coordinates (diagonal)."""
    a = np.asarray(a, dtype=float)
    n = sig.n
    if a.shape != (n,):
        raise ValueError(f"expected {n} parallel coordinates")
    ck2 = [ck_cosine(omega_product(sig, 0, l), a[l - 1]) ** 2 for l in range(1, n + 1)]
    diag = [omega_product(sig, 1, i) * float(np.prod(ck2[i:])) for i in range(1, n + 1)]
    labels = tuple(f"a^{i}" for i in range(1, n + 1))
    return MetricAtPoint(np.diag(diag), "parallel", labels)


def polar_metric(sig: OmegaSignature, theta, h: float = 1e-5) -> MetricAtPoint:
    """Main metric in geodesic polar coordinates, by numerical pullback.

    Obtained as J^T G J with G the parallel-chart metric and J the numerical
    Jacobian of polar -> parallel coordinates; valid wherever that transition
    is locally invertible near the given point.
    """
    theta = np.asarray(theta, dtype=float)
    jac = numerical_jacobian(lambda t: _weierstrass_to_parallel(sig, polar_to_weierstrass(sig, t)), theta, h)
    a = _weierstrass_to_parallel(sig, polar_to_weierstrass(sig, theta))
    g = parallel_metric(sig, a).matrix
    labels = tuple(f"theta^{i}" for i in range(1, sig.n + 1))
    return MetricAtPoint(jac.T @ g @ jac, "polar", labels)


def _weierstrass_to_parallel(sig: OmegaSignature, x) -> np.ndarray:
    """Local inverse of the parallel chart near the origin."""
    x = np.array(x, dtype=float)
    n = sig.n
    a = np.zeros(n)
    for i in range(1, n + 1):
        k = omega_product(sig, 0, i)
        # peel the leftmost factor exp(a^i P_i): (x^0, x^i) is proportional to (C_k, S_k)
        c, s = x[0], x[i]
        a[i - 1] = _ck_angle(k, c, s)
        cc, ss = ck_cosine(k, a[i - 1]), ck_sine(k, a[i - 1])
        x[0], x[i] = cc * c + k * ss * s, -ss * c + cc * s
    return a


def _ck_angle(k: float, c: float, s: float) -> float:
    """Angle t with (C_k(t), S_k(t)) proportional to (c, s), c > 0 branch."""
    if k > 0:
        r = np.sqrt(k)
        return float(np.arctan2(r * s, c) / r)
    if k < 0:
        r = np.sqrt(-k)
        return float(np.arctanh(r * s / c) / r)
    return float(s / c)


def subsidiary_metric_rank1(sig: OmegaSignature, a: int) -> MetricAtPoint:
    """g_a^(1) on the fiber directions (P_a, ..., P_N): diag(kappa_aa, ..., kappa_aN)."""
    if not 2 <= a <= sig.n:
        raise ValueError(f"fiber index a={a} outside 2..{sig.n}")
    diag = [float(omega_product(sig, a, i)) for i in range(a, sig.n + 1)]
    labels = tuple(f"P_{i}" for i in range(a, sig.n + 1))
    return MetricAtPoint(np.diag(diag), f"fiber_{a}", labels)


def foliation_report_rank1(sig: OmegaSignature) -> FoliationReport:
    """One leaf entry per vanishing kappa_a, a = 2..N, in increasing a (nested)."""
    n = sig.n
    leaves = []
    for a in range(2, n + 1):
        if sig[a] == 0:
            base = tuple(sig.omegas[: a - 1])
            fiber = (0,) + tuple(sig.omegas[a:])
            leaves.append(
                Leaf(str(a), base, fiber, base_dimension=a - 1, fiber_dimension=n - a + 1)
            )
    return FoliationReport(tuple(leaves))


def is_metric_degenerate_rank1(sig: OmegaSignature) -> bool:
    return any(sig[a] == 0 for a in range(2, sig.n + 1))


def sectional_curvature_rank1(sig: OmegaSignature, eta, u, v, h: float = 1e-4) -> float:
    """Sectional curvature of the Beltrami-chart main metric along span(u, v)."""
    if is_metric_degenerate_rank1(sig):
        raise DegenerateMetricError("main metric is degenerate: some kappa_a = 0, a >= 2")
    eta = np.asarray(eta, dtype=float)
    return sectional_curvature(lambda e: beltrami_metric_matrix(sig, e), eta, u, v, h)


def ambient_pullback_check_rank1(sig: OmegaSignature, a, h: float = 1e-5) -> float:
    """max |J^T Lambda_0 J - kappa_1 G_parallel| at parallel coordinates ``a``."""
    a = np.asarray(a, dtype=float)
    jac = numerical_jacobian(lambda t: parallel_to_weierstrass(sig, t), a, h)
    lam0 = invariant_form_rank1(sig)
    diff = jac.T @ lam0 @ jac - sig[1] * parallel_metric(sig, a).matrix
    return float(np.max(np.abs(diff)))
