"""Finite-difference machinery shared by the rank-one and rank-two charts.

Curvature is obtained from the metric alone: first and second derivatives of
the metric components by central differences (one Richardson step), then the
Christoffel symbols and the fully covariant Riemann tensor.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import DegenerateMetricError, DegeneratePlaneError

MetricFn = Callable[[np.ndarray], np.ndarray]


def _richardson(d_h: np.ndarray, d_h2: np.ndarray) -> np.ndarray:
    return (4.0 * d_h2 - d_h) / 3.0


def numerical_jacobian(f: Callable[[np.ndarray], np.ndarray], x, h: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian ``J[i, j] = d f_i / d x_j`` with one Richardson step."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x), dtype=float)
    jac = np.empty((f0.size, x.size))

    def central(step):
        cols = []
        for j in range(x.size):
            e = np.zeros_like(x)
            e[j] = step
            cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * step))
        return np.stack(cols, axis=-1)

    jac[:] = _richardson(central(h), central(h / 2)).reshape(f0.size, x.size)
    return jac


def pullback(metric_at_image: np.ndarray, jac: np.ndarray) -> np.ndarray:
    return jac.T @ metric_at_image @ jac


def metric_derivatives(metric: MetricFn, x, h: float = 1e-4):
    """First and second partial derivatives of a metric field.

    Returns ``(g, dg, ddg)`` with ``dg[c, a, b] = d_c g_ab`` and
    ``ddg[c, d, a, b] = d_c d_d g_ab``.
    """
    x = np.asarray(x, dtype=float)
    dim = x.size
    g0 = np.asarray(metric(x), dtype=float)
    eye = np.eye(dim)

    def first(step):
        return np.stack(
            [(metric(x + step * eye[c]) - metric(x - step * eye[c])) / (2 * step) for c in range(dim)]
        )

    def second(step):
        out = np.empty((dim, dim, dim, dim))
        for c in range(dim):
            ec = step * eye[c]
            out[c, c] = (metric(x + ec) - 2 * g0 + metric(x - ec)) / step**2
            for d in range(c + 1, dim):
                ed = step * eye[d]
                val = (
                    metric(x + ec + ed) - metric(x + ec - ed) - metric(x - ec + ed) + metric(x - ec - ed)
                ) / (4 * step**2)
                out[c, d] = out[d, c] = val
        return out

    dg = _richardson(first(h), first(h / 2))
    ddg = _richardson(second(h), second(h / 2))
    return g0, dg, ddg


def riemann_tensor(metric: MetricFn, x, h: float = 1e-4) -> tuple[np.ndarray, np.ndarray]:
    """Covariant Riemann tensor ``R_abcd`` and the metric at ``x``.

    Convention: R_abcd = g(R(d_c, d_d) d_b, d_a), so that a round unit sphere
    has R_abcd = g_ac g_bd - g_ad g_bc.
    """
    g, dg, ddg = metric_derivatives(metric, x, h)
    eig = np.abs(np.linalg.eigvalsh(0.5 * (g + g.T)))
    if eig.min() <= 1e-12 * max(1.0, eig.max()):
        raise DegenerateMetricError("metric is degenerate at this point")
    ginv = np.linalg.inv(g)
    # Christoffel symbols of the first kind: gam1[k, i, j] = Gamma_{k,ij}
    gam1 = 0.5 * (
        np.einsum("ijk->kij", dg) + np.einsum("jik->kij", dg) - dg
    )
    gam = np.einsum("lk,kij->lij", ginv, gam1)
    # second-derivative part: 1/2 (g_ad,bc + g_bc,ad - g_ac,bd - g_bd,ac)
    sec = 0.5 * (
        np.einsum("bcad->abcd", ddg)
        + np.einsum("adbc->abcd", ddg)
        - np.einsum("bdac->abcd", ddg)
        - np.einsum("acbd->abcd", ddg)
    )
    quad = np.einsum("ef,ebc,fad->abcd", g, gam, gam) - np.einsum("ef,ebd,fac->abcd", g, gam, gam)
    return sec + quad, g


def sectional_curvature(metric: MetricFn, x, u, v, h: float = 1e-4, plane_tol: float = 1e-10) -> float:
    """Sectional curvature of the plane spanned by chart vectors ``u`` and ``v`` at ``x``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    riem, g = riemann_tensor(metric, x, h)
    area = (u @ g @ u) * (v @ g @ v) - (u @ g @ v) ** 2
    if abs(area) <= plane_tol:
        raise DegeneratePlaneError("the plane is null or degenerate for this metric")
    return float(np.einsum("abcd,a,b,c,d->", riem, u, v, u, v) / area)
