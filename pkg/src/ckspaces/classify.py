"""Structural classification of a signature and catalog names of the spaces.

A group with some vanishing constant is split at its first zero w_a into
translations of dimension a(N+1-a) acting on so(N+1-a) x so(a); each factor
is classified recursively.  Catalog entries for the rank-one spaces S^[w1]w2..
and the rank-two spaces S^w1[w2].. are derived from the sign pattern with
symbolic dimensions in N, and compared against the shipped catalog file.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Iterable, Optional, Sequence

from .core import OmegaSignature

CATALOG_RESOURCE = "catalog.tsv"
CATALOG_COLUMNS = (
    "table",
    "omega1",
    "omega2",
    "name",
    "symbol",
    "coset",
    "curvature",
    "foliation",
    "base",
    "fiber",
    "metric",
    "subsidiary",
)
SIGN_CHARS = {1: "+", 0: "0", -1: "-"}
EMPTY = "-"

# family name by sign of w2, adjective column by sign of w1
_RANK1_NAMES = {
    1: {1: "Elliptic Space", 0: "Euclidean Space", -1: "Hyperbolic Space"},
    0: {1: "Oscillating NH Spacetime", 0: "Galilean Spacetime", -1: "Expanding NH Spacetime"},
    -1: {1: "Anti-DeSitter Spacetime", 0: "Minkowskian Spacetime", -1: "DeSitter Spacetime"},
}
_CURVATURE = {1: "Positive Curvature", 0: "Zero Curvature", -1: "Negative Curvature"}


@dataclass(frozen=True, order=True)
class Count:
    """Affine dimension ``coef * N + const``; a plain integer when ``coef == 0``."""

    coef: int
    const: int

    def __add__(self, other) -> Count:
        if isinstance(other, int):
            return Count(self.coef, self.const + other)
        return Count(self.coef + other.coef, self.const + other.const)

    def __sub__(self, other) -> Count:
        if isinstance(other, int):
            return Count(self.coef, self.const - other)
        return Count(self.coef - other.coef, self.const - other.const)

    def is_zero(self) -> bool:
        return self.coef == 0 and self.const == 0

    def __str__(self) -> str:
        if self.coef == 0:
            return str(self.const)
        head = "N" if self.coef == 1 else f"{self.coef}N"
        if self.const == 0:
            return head
        return f"{head}{self.const:+d}"


SYMBOLIC_N = Count(1, 0)


def _fixed(k: int) -> Count:
    return Count(0, k)


def _inertia(signs: Sequence[int], order: Count) -> tuple[Count, Count]:
    """Positive and negative counts of diag(1, w01, ..., w0n) with a '+' tail."""
    pos, neg = _fixed(1), _fixed(0)
    prod = 1
    for s in signs:
        prod *= s
        if prod > 0:
            pos += 1
        else:
            neg += 1
    tail = order - 1 - len(signs)
    if prod > 0:
        pos += tail
    else:
        neg += tail
    return pos, neg


def _so_label(pos: Count, neg: Count) -> str:
    if neg.is_zero():
        return f"SO({pos})"
    if pos.is_zero():
        return f"SO({neg})"
    hi, lo = (pos, neg) if pos >= neg else (neg, pos)
    return f"SO({hi},{lo})"


def group_label(signs: Sequence[int], order: Count) -> Optional[str]:
    """Conventional name of so_{signs}(order), any further constants being +1.

    Covers the semisimple case, leading zeros (inhomogeneous groups and the
    flag group) and the two Newton-Hooke groups; None for other patterns.
    """
    signs = tuple(signs)
    if 0 not in signs:
        return _so_label(*_inertia(signs, order))
    lead = 0
    while lead < len(signs) and signs[lead] == 0:
        lead += 1
    rest = signs[lead:]
    if 0 not in rest:
        return "I" * lead + _so_label(*_inertia(rest, order - lead))
    if len(signs) >= 2 and signs[0] != 0 and signs[1] == 0 and all(s == 1 for s in signs[2:]):
        return "ONH" if signs[0] > 0 else "ENH"
    return None


def _pq(signs: Sequence[int]) -> tuple[int, int]:
    pos, neg = _inertia(signs, _fixed(len(signs) + 1))
    return pos.const, neg.const


def _structure(signs: tuple[int, ...]) -> tuple[str, list[tuple[int, int]], bool]:
    """Decomposition string, (p, q) of the simple factors, and compoundness."""
    if not signs:
        return "", [], False
    if 0 not in signs:
        pos, neg = _pq(signs)
        return _so_label(_fixed(pos), _fixed(neg)), [(pos, neg)], False
    n = len(signs)
    a = signs.index(0) + 1
    translations = f"T_{a * (n + 1 - a)}"
    parts, counts = [], []
    # the factor after the zero is written first, as in ISO(N-1) = T ⊙ SO(N-1)
    for block in (signs[a:], signs[: a - 1]):
        text, pq, compound = _structure(block)
        if text:
            parts.append((text, compound))
            counts.extend(pq)
    if not parts:
        return translations, counts, True
    if len(parts) == 1:
        text, compound = parts[0]
        inner = f"({text})" if compound else text
    else:
        inner = "(" + " ⊗ ".join(f"({t})" if c else t for t, c in parts) + ")"
    return f"{translations} ⊙ {inner}", counts, True


def _description(signs: tuple[int, ...], group_name: Optional[str]) -> str:
    if 0 not in signs:
        return "pseudo-orthogonal group"
    if all(s == 0 for s in signs):
        return "flag space group"
    if group_name == "ONH":
        return "oscillating Newton-Hooke group"
    if group_name == "ENH":
        return "expanding Newton-Hooke group"
    if group_name is not None:
        lead = group_name.index("SO")
        return "inhomogeneous pseudo-orthogonal group" + ("" if lead == 1 else f" ({lead}-fold)")
    return "contracted group with nested semidirect structure"


@dataclass(frozen=True)
class CatalogEntry:
    """One cell of the rank-one or rank-two table, as strings."""

    table: str
    omega1: str
    omega2: str
    name: str
    symbol: str
    coset: str
    curvature: str
    foliation: str
    base: str
    fiber: str
    metric: str
    subsidiary: str

    @property
    def has_foliation(self) -> bool:
        return self.foliation == "Invariant Foliation"

    def to_row(self) -> str:
        return "\t".join(getattr(self, c) for c in CATALOG_COLUMNS)

    @classmethod
    def from_row(cls, line: str) -> CatalogEntry:
        cells = line.rstrip("\n").split("\t")
        if len(cells) != len(CATALOG_COLUMNS):
            raise ValueError(f"catalog row has {len(cells)} cells, expected {len(CATALOG_COLUMNS)}")
        return cls(*cells)


@dataclass(frozen=True)
class ClassificationRecord:
    signature: tuple[float, ...]
    structure: str
    group_name: Optional[str]
    description: str
    pq_counts: tuple[tuple[int, int], ...]
    rank1: Optional[CatalogEntry] = None
    rank2: Optional[CatalogEntry] = None
    foliations: dict = field(default_factory=dict)

    @property
    def catalog_name_rank1(self) -> Optional[str]:
        return self.rank1.name if self.rank1 else None

    @property
    def catalog_name_rank2(self) -> Optional[str]:
        return self.rank2.name if self.rank2 else None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["signature"] = list(self.signature)
        out["pq_counts"] = [list(pq) for pq in self.pq_counts]
        out["catalog_name_rank1"] = self.catalog_name_rank1
        out["catalog_name_rank2"] = self.catalog_name_rank2
        return out


def _tail_symbol(explicit: Sequence[int]) -> str:
    """Constants after the bracket: the given ones followed by '+,...,+'."""
    explicit = list(explicit)
    while explicit and explicit[-1] == 1:
        explicit.pop()
    return ",".join([SIGN_CHARS[s] for s in explicit] + ["+,...,+"])


def rank1_symbol(w1: int, w2: int) -> str:
    return f"S^[{SIGN_CHARS[w1]}]" + _tail_symbol([w2])


def rank2_symbol(w1: int, w2: int) -> str:
    return f"S^{SIGN_CHARS[w1]}[{SIGN_CHARS[w2]}]" + _tail_symbol([])


def rank1_entry(w1: int, w2: int) -> CatalogEntry:
    """Cell (w1, w2) of the rank-one table, all remaining constants positive."""
    n = SYMBOLIC_N
    group = group_label((w1, w2), n + 1)
    isotropy = group_label((w2,), n)
    foliated = w2 == 0
    return CatalogEntry(
        table="I",
        omega1=SIGN_CHARS[w1],
        omega2=SIGN_CHARS[w2],
        name=_RANK1_NAMES[w2][w1],
        symbol=rank1_symbol(w1, w2),
        coset=f"{group}/{isotropy}",
        curvature=_CURVATURE[w1],
        foliation="Invariant Foliation" if foliated else "No Invariant Foliation",
        # leaves of w2 = 0: base is the line S^[w1], fiber the flat S^[0]w3..wN
        base=f"S^[{SIGN_CHARS[w1]}]" if foliated else EMPTY,
        fiber=f"S^[0]{_tail_symbol([])}" if foliated else EMPTY,
        metric=f"diag(+,{SIGN_CHARS[w2]},...,{SIGN_CHARS[w2]})",
        subsidiary="diag(+,...,+)" if foliated else EMPTY,
    )


def rank2_entry(w1: int, w2: int) -> CatalogEntry:
    """Cell (w1, w2) of the rank-two table, all remaining constants positive."""
    n = SYMBOLIC_N
    group = group_label((w1, w2), n + 1)
    plane = group_label((w1,), _fixed(2))
    plane = "R" if plane == "ISO(1)" else plane
    isotropy = f"{plane}⊗{group_label((), n - 1)}"
    foliated = w1 == 0
    family = _RANK1_NAMES[w2][w1]
    if w2 == 1:
        name = family.replace(" Space", " line-space")
    else:
        name = family.replace("Spacetime", "Phase Space")
    return CatalogEntry(
        table="II",
        omega1=SIGN_CHARS[w1],
        omega2=SIGN_CHARS[w2],
        name=name,
        symbol=rank2_symbol(w1, w2),
        coset=f"{group}/{isotropy}",
        curvature=_CURVATURE[w2],
        foliation="Invariant Foliation" if foliated else "No Invariant Foliation",
        # leaves of w1 = 0: base is the rank-one S^[w2]w3.., fiber S^[0]w3..
        base=f"S^[{SIGN_CHARS[w2]}]{_tail_symbol([])}" if foliated else EMPTY,
        fiber=f"S^[0]{_tail_symbol([])}" if foliated else EMPTY,
        metric=f"diag(+,...,+|{SIGN_CHARS[w1]},...,{SIGN_CHARS[w1]})",
        subsidiary="diag(+,...,+)" if foliated else EMPTY,
    )


TABLE_ORDER = ((1, 1), (0, 1), (-1, 1), (1, 0), (0, 0), (-1, 0), (1, -1), (0, -1), (-1, -1))


def catalog_entries() -> list[CatalogEntry]:
    """All 18 cells in file order: rank-one by rows, then rank-two."""
    return [rank1_entry(w1, w2) for w1, w2 in TABLE_ORDER] + [
        rank2_entry(w1, w2) for w1, w2 in TABLE_ORDER
    ]


def read_catalog_text() -> str:
    return resources.files("ckspaces").joinpath("data").joinpath(CATALOG_RESOURCE).read_text(encoding="utf-8")


def parse_catalog(lines: Iterable[str]) -> list[CatalogEntry]:
    return [CatalogEntry.from_row(line) for line in lines if line.strip() and not line.startswith("#")]


def load_catalog() -> list[CatalogEntry]:
    return parse_catalog(read_catalog_text().splitlines())


def _tabulated_pattern(sig: OmegaSignature, min_n: int) -> Optional[tuple[int, int]]:
    if sig.n < min_n:
        return None
    signs = sig.signs()
    if any(s <= 0 for s in signs[2:]):
        return None
    return signs[0], signs[1]


def catalog_entry_rank1(sig: OmegaSignature) -> Optional[CatalogEntry]:
    pattern = _tabulated_pattern(sig, 2)
    return rank1_entry(*pattern) if pattern else None


def catalog_entry_rank2(sig: OmegaSignature) -> Optional[CatalogEntry]:
    pattern = _tabulated_pattern(sig, 3)
    return rank2_entry(*pattern) if pattern else None


def space_name_rank1(sig: OmegaSignature) -> Optional[str]:
    entry = catalog_entry_rank1(sig)
    return entry.name if entry else None


def space_name_rank2(sig: OmegaSignature) -> Optional[str]:
    entry = catalog_entry_rank2(sig)
    return entry.name if entry else None


def _foliation_summary(sig: OmegaSignature) -> dict:
    from .rank_one import foliation_report_rank1
    from .rank_two import foliation_report_rank2

    out = {"rank1": foliation_report_rank1(sig).zero_positions}
    out["rank2"] = foliation_report_rank2(sig).zero_positions if sig.n >= 3 else None
    return out


def classify_group(sig: OmegaSignature) -> ClassificationRecord:
    signs = sig.signs()
    group_name = group_label(signs, _fixed(sig.n + 1))
    if all(s == 0 for s in signs):
        structure, counts = "flag", []
    else:
        structure, counts, _ = _structure(signs)
    return ClassificationRecord(
        signature=tuple(sig.omegas),
        structure=structure,
        group_name=group_name,
        description=_description(signs, group_name),
        pq_counts=tuple(counts),
        rank1=catalog_entry_rank1(sig),
        rank2=catalog_entry_rank2(sig),
        foliations=_foliation_summary(sig),
    )
