"""Abstract Cayley-Klein algebras so_{w1..wN}(N+1).

Generators are indexed by pairs ``(a, b)`` with ``0 <= a < b <= N`` and are
always enumerated in lexicographic order ``(0,1) < (0,2) < ... < (N-1,N)``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

DEFAULT_TOLERANCE = 1e-12


def tolerance(default: float = DEFAULT_TOLERANCE) -> float:
    """Comparison tolerance, overridable through the ``CK_TOLERANCE`` variable."""
    value = os.environ.get("CK_TOLERANCE")
    if value is None:
        return default
    try:
        parsed = float(value)
    except ValueError:
        raise ValueError(f"CK_TOLERANCE={value!r} is not a number") from None
    if not math.isfinite(parsed) or parsed < 0:
        raise ValueError(f"CK_TOLERANCE={value!r} must be a finite non-negative number")
    return parsed


@dataclass(frozen=True)
class OmegaSignature:
    """The N real constants (w1, ..., wN) labelling one member of the family."""

    omegas: tuple[float, ...]

    def __init__(self, omegas: Sequence[float]):
        values = tuple(omegas)
        if len(values) < 1:
            raise ValueError("a signature needs at least one constant")
        for w in values:
            if not math.isfinite(w):
                raise ValueError(f"signature constants must be finite, got {w!r}")
        object.__setattr__(self, "omegas", values)

    @property
    def n(self) -> int:
        return len(self.omegas)

    def __getitem__(self, a: int) -> float:
        """1-based access: ``sig[a]`` is w_a."""
        if not 1 <= a <= self.n:
            raise IndexError(f"omega index {a} outside 1..{self.n}")
        return self.omegas[a - 1]

    def __iter__(self):
        return iter(self.omegas)

    def __len__(self) -> int:
        return self.n

    def canonical(self) -> OmegaSignature:
        """Rescale every constant to +1, 0 or -1."""
        return OmegaSignature([_sign(w) for w in self.omegas])

    def signs(self) -> tuple[int, ...]:
        return tuple(_sign(w) for w in self.omegas)

    def zeros(self) -> list[int]:
        """1-based positions of the vanishing constants."""
        return [a for a, w in enumerate(self.omegas, start=1) if w == 0]


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


class GeneratorIndex(NamedTuple):
    """The pair (a, b), a < b, naming the generator Omega_ab."""

    a: int
    b: int

    def label(self) -> str:
        return f"Omega_{self.a}{self.b}"


@dataclass(frozen=True)
class BracketResult:
    """Formal linear combination of generators; empty means zero."""

    terms: tuple[tuple[float, GeneratorIndex], ...] = field(default_factory=tuple)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self, n: int) -> list[float]:
        """Dense coefficient vector in the lexicographic basis."""
        index = generator_position(n)
        out = [0.0] * len(index)
        for coef, g in self.terms:
            out[index[g]] += coef
        return out


def ck_cosine(omega: float, x: float) -> float:
    """Labelled cosine C_omega(x)."""
    if omega > 0:
        return math.cos(math.sqrt(omega) * x)
    if omega < 0:
        return math.cosh(math.sqrt(-omega) * x)
    return 1.0


def ck_sine(omega: float, x: float) -> float:
    """Labelled sine S_omega(x)."""
    if omega > 0:
        r = math.sqrt(omega)
        return math.sin(r * x) / r
    if omega < 0:
        r = math.sqrt(-omega)
        return math.sinh(r * x) / r
    return float(x)


def omega_product(sig: OmegaSignature, a: int, b: int) -> float:
    """Two-index constant w_ab = w_{a+1} w_{a+2} ... w_b (1 when a == b)."""
    if not 0 <= a <= b <= sig.n:
        raise IndexError(f"omega_product needs 0 <= a <= b <= {sig.n}, got ({a}, {b})")
    out = 1
    for w in sig.omegas[a:b]:
        out = out * w
    return out


def generators(n: int) -> list[GeneratorIndex]:
    """All N(N+1)/2 generator indices in lexicographic order."""
    return [GeneratorIndex(a, b) for a, b in itertools.combinations(range(n + 1), 2)]


def generator_position(n: int) -> dict[GeneratorIndex, int]:
    return {g: k for k, g in enumerate(generators(n))}


def _check_index(sig: OmegaSignature, g: GeneratorIndex) -> None:
    a, b = g
    if not 0 <= a < b <= sig.n:
        raise IndexError(f"generator ({a}, {b}) invalid for N={sig.n}")


def bracket(sig: OmegaSignature, g1: GeneratorIndex, g2: GeneratorIndex) -> BracketResult:
    """Lie bracket [Omega_g1, Omega_g2] of two basis generators."""
    g1, g2 = GeneratorIndex(*g1), GeneratorIndex(*g2)
    _check_index(sig, g1)
    _check_index(sig, g2)
    shared = set(g1) & set(g2)
    if len(shared) != 1:
        # equal generators or disjoint index pairs
        return BracketResult()
    x, y, z = sorted(set(g1) | set(g2))
    xy, xz, yz = GeneratorIndex(x, y), GeneratorIndex(x, z), GeneratorIndex(y, z)
    # [xy, xz] = w_xy yz ; [xy, yz] = -xz ; [xz, yz] = w_yz xy
    table = {
        (xy, xz): (omega_product(sig, x, y), yz),
        (xy, yz): (-1, xz),
        (xz, yz): (omega_product(sig, y, z), xy),
    }
    if (g1, g2) in table:
        coef, g = table[(g1, g2)]
    else:
        coef, g = table[(g2, g1)]
        coef = -coef
    if coef == 0:
        return BracketResult()
    return BracketResult(((coef, g),))


def canonical_signatures(n: int) -> Iterator[OmegaSignature]:
    """All 3^N signatures with constants in {+1, 0, -1}."""
    for combo in itertools.product((1, 0, -1), repeat=n):
        yield OmegaSignature(combo)


def parse_signature(text: str) -> OmegaSignature:
    """Parse a comma separated list such as ``"0,-1,1,1"``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed signature {text!r}")
    values = []
    for p in parts:
        v = float(p)
        values.append(int(v) if v.is_integer() else v)
    return OmegaSignature(values)
