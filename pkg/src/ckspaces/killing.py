"""Killing-Cartan form of the CK algebras, computed from adjoint traces."""

from __future__ import annotations

import numpy as np

from .core import GeneratorIndex, OmegaSignature, bracket, generators, omega_product


def adjoint_matrix(sig: OmegaSignature, g: GeneratorIndex) -> np.ndarray:
    """Matrix of ad(Omega_g) in the lexicographic generator basis.

    Column ``k`` holds the coefficients of ``[Omega_g, Omega_k]``.
    """
    basis = generators(sig.n)
    ad = np.zeros((len(basis), len(basis)))
    for k, h in enumerate(basis):
        ad[:, k] = bracket(sig, g, h).coefficients(sig.n)
    return ad


def killing_form(sig: OmegaSignature, g1: GeneratorIndex, g2: GeneratorIndex) -> float:
    return float(np.trace(adjoint_matrix(sig, g1) @ adjoint_matrix(sig, g2)))


def killing_matrix(sig: OmegaSignature) -> np.ndarray:
    basis = generators(sig.n)
    ads = [adjoint_matrix(sig, g) for g in basis]
    k = np.empty((len(basis), len(basis)))
    for i, x in enumerate(ads):
        for j, y in enumerate(ads):
            k[i, j] = np.trace(x @ y)
    return k


def killing_closed_form(sig: OmegaSignature) -> np.ndarray:
    """diag(-2(N-1) w_ab) over the lexicographic basis."""
    n = sig.n
    return np.diag([-2.0 * (n - 1) * omega_product(sig, a, b) for a, b in generators(n)])
