"""Roots orthogonal to a vector, root types and the combinatorial questions.

The root type of ``2d`` for a lattice L is the set of values of
``#R(l^perp)`` over all ``l in L`` with ``l^2 = 2d``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .enumeration import DEFAULT_CEILING, orbit_representatives
from .errors import InvariantViolation, UsageError
from .lattice import LatticePreset, LatticeVector, build_preset, dot_doubled


class Exceeded:
    """Returned by :func:`count_orthogonal_roots` when the cap is passed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EXCEEDED"


EXCEEDED = Exceeded()


def _preset(preset: str | LatticePreset) -> LatticePreset:
    return preset if isinstance(preset, LatticePreset) else build_preset(preset)


@lru_cache(maxsize=None)
def _positive_matrix(name: str) -> np.ndarray:
    p = build_preset(name)
    return np.array([r.doubled for r in p.positive_roots], dtype=np.int64)


def orthogonal_counts(preset: str | LatticePreset, vectors) -> np.ndarray:
    """``#R(l^perp)`` for each row of a doubled-coordinate array."""
    p = _preset(preset)
    x = np.asarray(vectors, dtype=np.int64).reshape(-1, p.ambient_rank)
    if len(x) == 0:
        return np.zeros(0, dtype=np.int64)
    return 2 * (x @ _positive_matrix(p.name).T == 0).sum(axis=1)


def count_orthogonal_roots(preset: str | LatticePreset, l: LatticeVector,
                           cap: int | None = None) -> int | Exceeded:
    """Count roots orthogonal to ``l`` by scanning positive roots.

    With ``cap`` set, stop and return :data:`EXCEEDED` as soon as the count
    would pass it.
    """
    p = _preset(preset)
    if not p.contains(l):
        raise UsageError(f"{l} is not in {p.name}")
    count = 0
    for r in p.positive_roots:
        if dot_doubled(r.doubled, l.doubled) == 0:
            count += 2
            if cap is not None and count > cap:
                return EXCEEDED
    return count


def orthogonal_roots(preset: str | LatticePreset, l: LatticeVector) -> list[LatticeVector]:
    p = _preset(preset)
    return [r for r in p.roots if dot_doubled(r.doubled, l.doubled) == 0]


# -- ADE decomposition --------------------------------------------------------

ROOT_COUNT = {"E6": 72, "E7": 126, "E8": 240}


def label_root_count(label: str) -> int:
    kind, n = label[0], int(label[1:])
    if kind == "A":
        return n * (n + 1)
    if kind == "D":
        return 2 * n * (n - 1)
    return ROOT_COUNT[label]


def _dynkin_label(cartan: Sequence[Sequence[int]]) -> str:
    """Name a connected simply-laced Cartan matrix by its Dynkin graph shape.

    The shape (a path, or a tree with one branch node and three arms) is
    invariant under simultaneous permutation of rows and columns and
    determines the ADE type.
    """
    n = len(cartan)
    adj = {i: [j for j in range(n) if j != i and cartan[i][j]] for i in range(n)}
    if any(cartan[i][i] != 2 for i in range(n)) or any(
            cartan[i][j] not in (0, -1) for i in range(n) for j in range(n) if i != j):
        raise InvariantViolation(f"not a simply-laced Cartan matrix: {cartan}")
    edges = sum(len(v) for v in adj.values()) // 2
    if edges != n - 1:
        raise InvariantViolation(f"Dynkin graph is not a tree: {cartan}")
    branch = [i for i in range(n) if len(adj[i]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise InvariantViolation(f"unrecognised Dynkin graph: {cartan}")
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{n}"
    raise InvariantViolation(f"unrecognised Dynkin graph with arms {arms}")


@dataclass(frozen=True)
class Component:
    label: str
    simple_roots: tuple[tuple[int, ...], ...]


def root_system_components(roots: Iterable[LatticeVector | Sequence[int]]) -> list[Component]:
    """Split a root system into irreducible components with simple roots."""
    vecs = {tuple(r.doubled if isinstance(r, LatticeVector) else r) for r in roots}
    if not vecs:
        return []
    if any(tuple(-x for x in v) not in vecs for v in vecs):
        raise UsageError("root set is not closed under negation")
    rank = len(next(iter(vecs)))
    h = build_preset("E8").height_functional if rank == 8 else tuple(range(rank, 0, -1))
    heights = {v: sum(a * b for a, b in zip(v, h)) for v in vecs}
    if any(x == 0 for x in heights.values()):
        raise InvariantViolation("height functional vanishes on a root")
    positive = sorted((v for v in vecs if heights[v] > 0), key=lambda v: (heights[v], v))
    pos_set = set(positive)
    simple = [v for v in positive
              if not any(tuple(a - b for a, b in zip(v, u)) in pos_set for u in positive if u != v)]

    # connected components of the Dynkin graph
    parent = list(range(len(simple)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(simple)):
        for j in range(i):
            if dot_doubled(simple[i], simple[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for i, s in enumerate(simple):
        groups.setdefault(find(i), []).append(s)

    comps = []
    for members in groups.values():
        cartan = [[dot_doubled(a, b) for b in members] for a in members]
        comps.append(Component(_dynkin_label(cartan), tuple(members)))
    total = sum(label_root_count(c.label) for c in comps)
    if total != len(vecs):
        raise InvariantViolation(f"components account for {total} of {len(vecs)} roots")
    comps.sort(key=lambda c: (c.label[0], -int(c.label[1:]), c.simple_roots))
    return comps


def decompose_root_system(roots: Iterable[LatticeVector | Sequence[int]]) -> tuple[str, ...]:
    """ADE labels of the irreducible components, e.g. ``('A2', 'A1', 'A1', 'A1')``."""
    return tuple(c.label for c in root_system_components(roots))


def format_decomposition(labels: Sequence[str]) -> str:
    """``('A2', 'A1', 'A1', 'A1')`` -> ``'A2+3A1'``; empty -> ``'0'``."""
    if not labels:
        return "0"
    counts = Counter(labels)
    order = sorted(counts, key=lambda s: (s[0], -int(s[1:])))
    return "+".join(f"{counts[s]}{s}" if counts[s] > 1 else s for s in order)


# -- root types ---------------------------------------------------------------

@dataclass(frozen=True)
class RootType:
    d: int
    preset: str
    members: tuple[int, ...]

    def __contains__(self, m: int) -> bool:
        return m in self.members

    @property
    def m0(self) -> int:
        return self.members[0]

    @property
    def m1(self) -> int | None:
        return next((m for m in self.members if m > 0), None)


@lru_cache(maxsize=4096)
def _counts_for(name: str, d: int, ceiling: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    reps = orbit_representatives(name, d, ceiling)
    counts = orthogonal_counts(name, reps) if reps else np.zeros(0, dtype=np.int64)
    return tuple(reps), tuple(int(c) for c in counts)


def root_type(preset: str | LatticePreset, d: int, ceiling: int = DEFAULT_CEILING) -> RootType:
    """The set ``P(L, d)``, from symmetry-reduced representatives.

    ``d = 0`` gives ``{#roots}`` (only the zero vector has norm 0).
    """
    p = _preset(preset)
    if d < 0:
        raise UsageError("d must be >= 0")
    _, counts = _counts_for(p.name, d, ceiling)
    return RootType(d, p.name, tuple(sorted(set(counts))))


def m0_m1(preset: str | LatticePreset, d: int) -> tuple[int, int | None]:
    """``min P`` and the least positive member of ``P`` (``None`` if absent)."""
    rt = root_type(preset, d)
    if not rt.members:
        raise UsageError(f"no vectors of norm {2 * d} in {rt.preset}")
    return rt.m0, rt.m1


@dataclass(frozen=True)
class WitnessRecord:
    l: LatticeVector
    d: int
    m: int
    decomposition: tuple[str, ...]

    @property
    def weight(self) -> int:
        return 12 + self.m // 2


def witness(preset: str | LatticePreset, doubled: Sequence[int]) -> WitnessRecord:
    p = _preset(preset)
    l = LatticeVector(tuple(doubled), p.name)
    orth = orthogonal_roots(p, l)
    return WitnessRecord(l, l.norm // 2, len(orth), decompose_root_system(orth))


def scan_range(preset: str | LatticePreset, d_min: int, d_max: int, m_min: int, m_max: int,
               ceiling: int = DEFAULT_CEILING) -> list[WitnessRecord]:
    """One witness per attained ``m`` in ``[m_min, m_max]`` for each ``d``.

    The witness is the first vector in enumeration order.
    """
    p = _preset(preset)
    if d_min > d_max or m_min > m_max:
        raise UsageError("empty scan range")
    out = []
    for d in range(max(d_min, 0), d_max + 1):
        reps, counts = _counts_for(p.name, d, ceiling)
        seen: dict[int, tuple[int, ...]] = {}
        for v, m in zip(reps, counts):
            if m_min <= m <= m_max and m not in seen:
                seen[m] = v
        for m in sorted(seen):
            rec = witness(p, seen[m])
            if rec.m != m or sum(label_root_count(x) for x in rec.decomposition) != m:
                raise InvariantViolation(f"witness {rec.l} disagrees with its count {m}")
            out.append(rec)
    return out


def answer_qpq(preset: str | LatticePreset, p: int, q: int, d_max: int) -> list[int]:
    """All ``d <= d_max`` for which every norm-``2d`` vector orthogonal to at
    least ``2q`` roots is orthogonal to at least ``2p`` roots."""
    if not p > q >= 0:
        raise UsageError("need p > q >= 0")
    return [d for d in range(1, d_max + 1)
            if not any(2 * q <= m < 2 * p for m in root_type(preset, d).members)]


def ds_containing(preset: str | LatticePreset, m: int, d_min: int, d_max: int) -> list[int]:
    """All ``d`` in range with ``m`` in the root type."""
    return [d for d in range(d_min, d_max + 1) if m in root_type(preset, d)]


@dataclass(frozen=True)
class NotFoundBelowCeiling:
    m: int
    ceiling: int


def smallest_d_for(preset: str | LatticePreset, m: int,
                   d_ceiling: int = 1000) -> int | NotFoundBelowCeiling:
    """Least ``d`` whose least positive root-type member is ``<= m``."""
    if m < 2 or m % 2:
        raise UsageError("m must be even and >= 2")
    for d in range(1, d_ceiling + 1):
        m1 = root_type(preset, d).m1
        if m1 is not None and m1 <= m:
            return d
    return NotFoundBelowCeiling(m, d_ceiling)


# -- quasi-pullback weights -----------------------------------------------------

@dataclass(frozen=True)
class QuasiPullbackWeight:
    m: int
    weight: int
    cusp_form: bool
    general_type_trigger: bool
    canonical_weight: bool

    @property
    def flags(self) -> str:
        names = [n for n in ("cusp_form", "general_type_trigger", "canonical_weight")
                 if getattr(self, n)]
        return ",".join(names) or "none"


def quasi_pullback_weight(m: int) -> QuasiPullbackWeight:
    """Weight ``12 + m/2`` of the quasi-pullback for ``m`` orthogonal roots."""
    if m < 0 or m % 2:
        raise UsageError(f"number of orthogonal roots must be even and >= 0, got {m}")
    return QuasiPullbackWeight(m, 12 + m // 2, m >= 2, 2 <= m < 14, m == 14)


def is_square(d: int) -> bool:
    return d >= 0 and math.isqrt(d) ** 2 == d
