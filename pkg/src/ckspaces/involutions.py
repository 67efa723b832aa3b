"""The Z2^N involutions Theta^(m) and the Cartan splittings they induce."""

from __future__ import annotations

from dataclasses import dataclass

from .core import GeneratorIndex, OmegaSignature, generators


@dataclass(frozen=True)
class CartanSplit:
    m: int
    p_generators: tuple[GeneratorIndex, ...]
    h_generators: tuple[GeneratorIndex, ...]


def _check_m(n: int, m: int) -> None:
    if not 1 <= m <= n:
        raise ValueError(f"involution index m={m} outside 1..{n}")


def theta_sign(m: int, g: GeneratorIndex) -> int:
    """Eigenvalue of Omega_ab under Theta^(m): -1 iff a < m <= b."""
    a, b = g
    return -1 if a < m <= b else 1


def composite_theta_sign(ms, g: GeneratorIndex) -> int:
    """Sign of Omega_ab under the product of the involutions listed in ``ms``."""
    out = 1
    for m in ms:
        out *= theta_sign(m, g)
    return out


def cartan_split(sig: OmegaSignature, m: int) -> CartanSplit:
    _check_m(sig.n, m)
    gens = generators(sig.n)
    p = tuple(g for g in gens if theta_sign(m, g) < 0)
    h = tuple(g for g in gens if theta_sign(m, g) > 0)
    return CartanSplit(m, p, h)


def h_subalgebra_signatures(
    sig: OmegaSignature, m: int
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Constants of so_{w1..w(m-1)}(m) and so_{w(m+1)..wN}(N+1-m).

    Plain tuples are returned because either factor may be the trivial
    algebra so(1), which has no constants at all.
    """
    _check_m(sig.n, m)
    return tuple(sig.omegas[: m - 1]), tuple(sig.omegas[m:])


def space_dimension(n: int, m: int) -> int:
    _check_m(n, m)
    return m * (n + 1 - m)


def rank_of_space(n: int, m: int) -> int:
    _check_m(n, m)
    return min(m, n + 1 - m)
