"""Vector representation of SO_{w1..wN}(N+1) by (N+1)x(N+1) matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    GeneratorIndex,
    OmegaSignature,
    ck_cosine,
    ck_sine,
    generators,
    omega_product,
)


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    signature: OmegaSignature

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.matrix @ other.matrix, self.signature)

    def isometry_defect(self) -> float:
        """max |M^T L M - L| for the invariant form L of the vector representation."""
        lam = invariant_form_rank1(self.signature)
        m = self.matrix
        return float(np.max(np.abs(m.T @ lam @ m - lam)))


def vector_generator(sig: OmegaSignature, g: GeneratorIndex) -> np.ndarray:
    """Matrix -w_ab e_ab + e_ba."""
    a, b = g
    if not 0 <= a < b <= sig.n:
        raise IndexError(f"generator ({a}, {b}) invalid for N={sig.n}")
    x = np.zeros((sig.n + 1, sig.n + 1))
    x[a, b] = -omega_product(sig, a, b)
    x[b, a] = 1.0
    return x


def invariant_form_rank1(sig: OmegaSignature) -> np.ndarray:
    """diag(1, w_01, w_02, ..., w_0N)."""
    return np.diag([float(omega_product(sig, 0, l)) for l in range(sig.n + 1)])


def one_param_subgroup(sig: OmegaSignature, g: GeneratorIndex, x: float) -> GroupElement:
    """Closed form of exp(x Omega_ab) in the vector representation."""
    a, b = g
    if not 0 <= a < b <= sig.n:
        raise IndexError(f"generator ({a}, {b}) invalid for N={sig.n}")
    w = omega_product(sig, a, b)
    m = np.eye(sig.n + 1)
    c, s = ck_cosine(w, x), ck_sine(w, x)
    m[a, a] = m[b, b] = c
    m[a, b] = -w * s
    m[b, a] = s
    return GroupElement(m, sig)


def identity(sig: OmegaSignature) -> GroupElement:
    return GroupElement(np.eye(sig.n + 1), sig)


def random_word(sig: OmegaSignature, seed: int, word_length: int, scale: float = 1.0):
    """Seeded list of (generator, parameter) pairs, parameters uniform in [-scale, scale]."""
    if word_length < 1:
        raise ValueError("word_length must be >= 1")
    rng = np.random.default_rng(seed)
    gens = generators(sig.n)
    word = []
    for _ in range(word_length):
        g = gens[int(rng.integers(len(gens)))]
        word.append((g, float(rng.uniform(-scale, scale))))
    return word


def random_group_element(
    sig: OmegaSignature, seed: int, word_length: int, scale: float = 1.0
) -> GroupElement:
    """Deterministic product of ``word_length`` one-parameter subgroup matrices."""
    out = identity(sig)
    for g, x in random_word(sig, seed, word_length, scale):
        out = out @ one_param_subgroup(sig, g, x)
    return out
