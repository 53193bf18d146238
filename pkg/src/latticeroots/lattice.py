"""Exact lattice vectors and the root-lattice presets.

Every vector is stored with *doubled* coordinates, so the half-integer
points of E8 are plain integers and all arithmetic stays in ``int``.  The
real coordinate ``i`` of a vector is ``doubled[i] / 2``.

Presets
-------
E8
    ``{x in Z^8 or (Z+1/2)^8 : sum(x) even}``.
E7
    The vectors of E8 orthogonal to ``e7 + e8``.
E6
    The vectors of E8 orthogonal to the A2 pair ``{e7 + e8, e6 - e7}``;
    this nests E6 inside E7.
D6
    ``{x in Z^6 : sum(x) even}`` in its own rank-6 ambient.
A1, A2
    The sublattices spanned by the simple roots ``alpha8`` and
    ``{alpha7, alpha8}`` of E8.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvariantViolation, UsageError

PRESET_NAMES = ("E8", "E7", "E6", "D6", "A1", "A2")

# Bourbaki simple roots of E8, doubled coordinates.
#   alpha1 = (e1 + e8)/2 - (e2 + ... + e7)/2,  alpha2 = e1 + e2,
#   alpha_k = e_{k-1} - e_{k-2}  (3 <= k <= 8)
_SIMPLE_DOUBLED = (
    (1, -1, -1, -1, -1, -1, -1, 1),
    (2, 2, 0, 0, 0, 0, 0, 0),
    (-2, 2, 0, 0, 0, 0, 0, 0),
    (0, -2, 2, 0, 0, 0, 0, 0),
    (0, 0, -2, 2, 0, 0, 0, 0),
    (0, 0, 0, -2, 2, 0, 0, 0),
    (0, 0, 0, 0, -2, 2, 0, 0),
    (0, 0, 0, 0, 0, -2, 2, 0),
)

# Weyl vector rho = (0, 1, 2, 3, 4, 5, 6, 23); (alpha_i, rho) = 1 for every i,
# so (r, rho) is the height of r and is nonzero on every root.
RHO_DOUBLED = (0, 2, 4, 6, 8, 10, 12, 46)

_E7_ROOT = (0, 0, 0, 0, 0, 0, 2, 2)  # e7 + e8
_E6_PARTNER = (0, 0, 0, 0, 0, 2, -2, 0)  # e6 - e7, (e7+e8, e6-e7) = -1


@dataclass(frozen=True)
class _Definition:
    ambient_rank: int
    half_integers: bool
    orthogonals: tuple[tuple[int, ...], ...] = ()
    # Simple-root indices (1-based) spanning the preset, for A1/A2.
    span: tuple[int, ...] | None = None
    # Coordinates tied together with signs; used for exact counting.
    blocks: tuple[tuple[tuple[int, int], ...], ...] | None = None


def _singletons(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(((i, 1),) for i in range(n))


_DEFINITIONS = {
    "E8": _Definition(8, True, blocks=_singletons(8)),
    "E7": _Definition(
        8, True, orthogonals=(_E7_ROOT,),
        blocks=_singletons(6) + (((6, 1), (7, -1)),),
    ),
    "E6": _Definition(
        8, True, orthogonals=(_E7_ROOT, _E6_PARTNER),
        blocks=_singletons(5) + (((5, 1), (6, 1), (7, -1)),),
    ),
    "D6": _Definition(6, False, blocks=_singletons(6)),
    "A1": _Definition(8, True, span=(8,)),
    "A2": _Definition(8, True, span=(7, 8)),
}

EXPECTED_ROOT_COUNTS = {"E8": 240, "E7": 126, "E6": 72, "D6": 60, "A1": 2, "A2": 6}


def normalize_name(name: str) -> str:
    key = str(name).upper()
    if key not in _DEFINITIONS:
        raise UsageError(f"unsupported lattice preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return key


def _exact_inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise InvariantViolation("singular matrix in exact inverse")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# x = inverse(A^T) v solves sum_i x_i alpha_i = v (doubling cancels).
_SIMPLE_INV_T = _exact_inverse([[_SIMPLE_DOUBLED[i][j] for i in range(8)] for j in range(8)])


def _simple_coords_exact(doubled: Sequence[int]) -> list[Fraction]:
    return [sum(row[j] * doubled[j] for j in range(8)) for row in _SIMPLE_INV_T]


def _is_member(name: str, doubled: Sequence[int]) -> bool:
    defn = _DEFINITIONS[name]
    if len(doubled) != defn.ambient_rank:
        return False
    parities = {x & 1 for x in doubled}
    if len(parities) > 1:
        return False
    if 1 in parities and not defn.half_integers:
        return False
    if sum(doubled) % 4:
        return False
    for o in defn.orthogonals:
        if sum(a * b for a, b in zip(doubled, o)):
            return False
    if defn.span is not None:
        coords = _simple_coords_exact(doubled)
        if any(c != 0 for i, c in enumerate(coords, 1) if i not in defn.span):
            return False
    return True


@dataclass(frozen=True, order=True)
class LatticeVector:
    """A point of a preset lattice, stored as doubled integer coordinates."""

    doubled: tuple[int, ...]
    preset: str = "E8"

    def __post_init__(self):
        object.__setattr__(self, "doubled", tuple(int(x) for x in self.doubled))
        object.__setattr__(self, "preset", normalize_name(self.preset))
        if not _is_member(self.preset, self.doubled):
            raise UsageError(f"{format_text(self)} is not a vector of {self.preset}")

    @classmethod
    def from_coords(cls, coords: Iterable, preset: str = "E8") -> "LatticeVector":
        doubled = []
        for c in coords:
            q = Fraction(c) * 2
            if q.denominator != 1:
                raise UsageError(f"coordinate {c} is not a multiple of 1/2")
            doubled.append(int(q))
        return cls(tuple(doubled), preset)

    @property
    def rank(self) -> int:
        return len(self.doubled)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    @property
    def norm(self) -> int:
        return dot(self, self)

    @property
    def is_half_integral(self) -> bool:
        return bool(self.doubled) and self.doubled[0] % 2 == 1

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-x for x in self.doubled), self.preset)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _check_rank(self, other)
        return LatticeVector(tuple(a + b for a, b in zip(self.doubled, other.doubled)), self.preset)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return self + (-other)

    def __rmul__(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * x for x in self.doubled), self.preset)

    def __str__(self) -> str:
        return format_text(self)


def _check_rank(a: LatticeVector, b: LatticeVector) -> None:
    if a.rank != b.rank:
        raise UsageError(f"rank mismatch: {a.rank} vs {b.rank}")


def dot_doubled(a: Sequence[int], b: Sequence[int]) -> int:
    """Inner product of two doubled-coordinate tuples."""
    s = sum(x * y for x, y in zip(a, b))
    if s % 4:
        raise InvariantViolation(f"non-integral inner product {s}/4")
    return s // 4


def dot(a: LatticeVector, b: LatticeVector) -> int:
    """The exact integer pairing ``(a, b)``."""
    _check_rank(a, b)
    return dot_doubled(a.doubled, b.doubled)


def zero(preset: str = "E8") -> LatticeVector:
    name = normalize_name(preset)
    return LatticeVector((0,) * _DEFINITIONS[name].ambient_rank, name)


# -- text formats -----------------------------------------------------------

def _render(x: int) -> str:
    return str(x // 2) if x % 2 == 0 else f"{x}/2"


def format_text(v: LatticeVector | Sequence[int]) -> str:
    """Space-separated rationals, e.g. ``1/2 -1/2 3/2 ...``."""
    doubled = v.doubled if isinstance(v, LatticeVector) else v
    return " ".join(_render(x) for x in doubled)


def format_machine(v: LatticeVector | Sequence[int]) -> str:
    """Comma-separated doubled integers with a ``d2:`` prefix."""
    doubled = v.doubled if isinstance(v, LatticeVector) else v
    return "d2:" + ",".join(str(x) for x in doubled)


def parse_vector(text: str, preset: str = "E8") -> LatticeVector:
    """Parse either the text or the machine format."""
    text = text.strip()
    try:
        if text.startswith("d2:"):
            return LatticeVector(tuple(int(x) for x in text[3:].split(",")), preset)
        return LatticeVector.from_coords((Fraction(t) for t in text.replace(",", " ").split()), preset)
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"cannot parse vector {text!r}: {exc}") from None


# -- simple roots -----------------------------------------------------------

SIMPLE_ROOTS = tuple(LatticeVector(a) for a in _SIMPLE_DOUBLED)


def cartan_matrix() -> list[list[int]]:
    return [[dot(a, b) for b in SIMPLE_ROOTS] for a in SIMPLE_ROOTS]


def simple_root_coordinates(v: LatticeVector | Sequence[int]) -> tuple[int, ...]:
    """Integer coefficients of an E8 vector on alpha1..alpha8."""
    doubled = v.doubled if isinstance(v, LatticeVector) else tuple(v)
    if len(doubled) != 8:
        raise UsageError("simple-root coordinates need an E8-ambient vector")
    coords = _simple_coords_exact(doubled)
    if any(c.denominator != 1 for c in coords):
        raise InvariantViolation(f"{format_text(doubled)} has non-integral simple-root coordinates")
    return tuple(int(c) for c in coords)


def express_in_simple_roots(r: LatticeVector) -> tuple[int, ...]:
    """Write an E8 root as ``sum x_i alpha_i``; all ``x_i`` share one sign."""
    if r.rank != 8 or r.norm != 2:
        raise UsageError(f"{format_text(r)} is not a root of E8")
    x = simple_root_coordinates(r)
    if any(c > 0 for c in x) and any(c < 0 for c in x):
        raise InvariantViolation(f"root {format_text(r)} has mixed-sign coefficients {x}")
    return x


def combine_simple_roots(x: Sequence[int]) -> LatticeVector:
    return LatticeVector(tuple(sum(c * a[j] for c, a in zip(x, _SIMPLE_DOUBLED)) for j in range(8)))


# -- presets ----------------------------------------------------------------

def _e8_roots() -> list[tuple[int, ...]]:
    out = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0] * 8
                    v[i], v[j] = si, sj
                    out.append(tuple(v))
    for mask in range(256):
        signs = [-1 if mask >> k & 1 else 1 for k in range(8)]
        if signs.count(-1) % 2 == 0:
            out.append(tuple(signs))
    return sorted(out)


def _d6_roots() -> list[tuple[int, ...]]:
    out = []
    for i in range(6):
        for j in range(i + 1, 6):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0] * 6
                    v[i], v[j] = si, sj
                    out.append(tuple(v))
    return sorted(out)


@dataclass(frozen=True)
class LatticePreset:
    """A named root lattice with its (cached) root system."""

    name: str
    ambient_rank: int
    half_integers: bool
    defining_orthogonals: tuple[LatticeVector, ...]
    roots: tuple[LatticeVector, ...]
    positive_roots: tuple[LatticeVector, ...]
    span: tuple[int, ...] | None = None
    blocks: tuple[tuple[tuple[int, int], ...], ...] | None = field(default=None, repr=False)

    def contains(self, v: LatticeVector | Sequence[int]) -> bool:
        doubled = v.doubled if isinstance(v, LatticeVector) else tuple(v)
        return _is_member(self.name, doubled)

    def vector(self, doubled: Sequence[int]) -> LatticeVector:
        return LatticeVector(tuple(doubled), self.name)

    @property
    def height_functional(self) -> tuple[int, ...]:
        """A vector with nonzero pairing against every root of the preset."""
        if self.ambient_rank == 8:
            return RHO_DOUBLED
        return tuple(range(self.ambient_rank, 0, -1))


@functools.lru_cache(maxsize=None)
def _build(name: str) -> LatticePreset:
    defn = _DEFINITIONS[name]
    if name == "D6":
        root_tuples = _d6_roots()
    else:
        root_tuples = [r for r in _e8_roots() if _is_member(name, r)]
    roots = tuple(LatticeVector(r, name) for r in root_tuples)
    h = RHO_DOUBLED if defn.ambient_rank == 8 else tuple(range(defn.ambient_rank, 0, -1))
    positive = tuple(r for r in roots if sum(a * b for a, b in zip(r.doubled, h)) > 0)

    if len(roots) != EXPECTED_ROOT_COUNTS[name]:
        raise InvariantViolation(f"{name}: built {len(roots)} roots, expected {EXPECTED_ROOT_COUNTS[name]}")
    if 2 * len(positive) != len(roots):
        raise InvariantViolation(f"{name}: positive roots do not split the root system")
    if any(r.norm != 2 for r in roots):
        raise InvariantViolation(f"{name}: root of norm other than 2")
    return LatticePreset(
        name=name,
        ambient_rank=defn.ambient_rank,
        half_integers=defn.half_integers,
        defining_orthogonals=tuple(LatticeVector(o) for o in defn.orthogonals),
        roots=roots,
        positive_roots=positive,
        span=defn.span,
        blocks=defn.blocks,
    )


def build_preset(name: str) -> LatticePreset:
    """Return the cached preset ``name`` (case-insensitive)."""
    return _build(normalize_name(name))


def _self_check() -> None:
    for a in _SIMPLE_DOUBLED:
        if dot_doubled(a, RHO_DOUBLED) != 1:
            raise InvariantViolation("rho does not pair to 1 with every simple root")


_self_check()
