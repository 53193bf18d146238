"""Canonical forms under H and under the Weyl group W(E8); orbit counting.

H is the group of coordinate permutations combined with an even number of
sign changes, ``|H| = 2**7 * 8! = 5160960``, of index 135 in W(E8).  A
transversal ``g_1 .. g_135`` with ``W = U H g_i`` turns the H normal form
into a W-invariant: ``min_i hcanon(g_i l)``.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantViolation, UsageError
from .lattice import SIMPLE_ROOTS, LatticeVector, build_preset, dot_doubled
from .enumeration import normal_form_tuples
from .orthocount import orthogonal_counts

WEYL_ORDER = 2**14 * 3**5 * 5**2 * 7
H_ORDER = 2**7 * math.factorial(8)
INDEX = 135

_SIMPLE = tuple(a.doubled for a in SIMPLE_ROOTS)


@dataclass(frozen=True)
class SignedPermutation:
    """``x -> y`` with ``y[i] = signs[i] * x[perm[i]]``; an element of H
    when the number of ``-1`` signs is even."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.signs) != len(self.perm):
            raise UsageError("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise UsageError("signs must be +-1")

    @property
    def in_h(self) -> bool:
        return self.signs.count(-1) % 2 == 0

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(s * x[p] for p, s in zip(self.perm, self.signs))

    def __matmul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (self @ other)(x) = self(other(x))
        perm = tuple(other.perm[p] for p in self.perm)
        signs = tuple(s * other.signs[p] for p, s in zip(self.perm, self.signs))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    @classmethod
    def random(cls, rng) -> "SignedPermutation":
        perm = tuple(int(i) for i in rng.permutation(8))
        signs = [int(s) for s in rng.choice([1, -1], size=8)]
        if signs.count(-1) % 2:
            signs[0] = -signs[0]
        return cls(perm, tuple(signs))


@dataclass(frozen=True)
class OrthogonalMap:
    """An element of W(E8) as ``4 * M`` with integer entries.

    Acting on doubled coordinates: ``y = (quad @ x) / 4``.
    """

    quad: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls) -> "OrthogonalMap":
        return cls(tuple(tuple(4 * int(i == j) for j in range(8)) for i in range(8)))

    @classmethod
    def reflection(cls, root: Sequence[int]) -> "OrthogonalMap":
        """``x -> x - (x, r) r`` for a norm-2 root given in doubled coordinates."""
        if sum(x * x for x in root) != 8:
            raise UsageError("reflections are defined for roots only")
        return cls(tuple(tuple(4 * int(i == j) - root[i] * root[j] for j in range(8))
                         for i in range(8)))

    def __matmul__(self, other: "OrthogonalMap") -> "OrthogonalMap":
        rows = []
        for i in range(8):
            row = []
            for j in range(8):
                s = sum(self.quad[i][k] * other.quad[k][j] for k in range(8))
                if s % 4:
                    raise InvariantViolation("product left the Weyl group")
                row.append(s // 4)
            rows.append(tuple(row))
        return OrthogonalMap(tuple(rows))

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        out = []
        for row in self.quad:
            s = sum(a * b for a, b in zip(row, x))
            if s % 4:
                raise InvariantViolation("map does not preserve E8")
            out.append(s // 4)
        return tuple(out)


# -- H canonical form ---------------------------------------------------------

def h_canonical_tuple(x: Sequence[int]) -> tuple[int, ...]:
    """Distinguished element of ``H x`` (doubled coordinates).

    Magnitudes are sorted ascending; all entries are nonnegative unless the
    number of negative entries is odd and no entry is zero, in which case
    only the first (smallest) entry is negative.
    """
    mags = sorted(abs(v) for v in x)
    if mags[0] != 0 and sum(1 for v in x if v < 0) % 2:
        mags[0] = -mags[0]
    return tuple(mags)


def h_canonical(l: LatticeVector) -> LatticeVector:
    return LatticeVector(h_canonical_tuple(l.doubled), l.preset)


def _h_canonical_rows(x: np.ndarray) -> np.ndarray:
    mags = np.sort(np.abs(x), axis=-1)
    flip = (mags[..., 0] != 0) & ((x < 0).sum(axis=-1) % 2 == 1)
    mags[..., 0] = np.where(flip, -mags[..., 0], mags[..., 0])
    return mags


# -- transversal ----------------------------------------------------------------

def find_base_vector() -> tuple[int, ...]:
    """First integer E8 vector with no orthogonal root.

    Candidates are ``0 <= a_1 < ... < a_8`` (distinct magnitudes are needed
    to avoid the roots ``e_i +- e_j``), ordered by norm and then
    lexicographically.
    """
    roots = np.array([r.doubled for r in build_preset("E8").positive_roots], dtype=np.int64)
    norm = 2
    while True:
        found = []

        def rec(prefix: list[int], used: int):
            if len(prefix) == 8:
                if used == norm and sum(prefix) % 2 == 0:
                    found.append(tuple(prefix))
                return
            k = 8 - len(prefix)
            start = prefix[-1] + 1 if prefix else 0
            a = start
            # the remaining k entries are at least a, a+1, ..., a+k-1
            while used + sum((a + i) ** 2 for i in range(k)) <= norm:
                rec(prefix + [a], used + a * a)
                a += 1

        rec([], 0)
        for cand in sorted(found):
            doubled = np.array(cand, dtype=np.int64) * 2
            if np.all(roots @ doubled != 0):
                return tuple(int(v) for v in doubled)
        norm += 2


@dataclass(frozen=True)
class Transversal:
    """Right coset representatives of H in W(E8)."""

    maps: tuple[OrthogonalMap, ...]
    base_vector: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.maps)

    @property
    def array(self) -> np.ndarray:
        return _stack(self)

    @property
    def checksum(self) -> str:
        h = hashlib.sha256()
        for g in self.maps:
            h.update(",".join(str(v) for row in g.quad for v in row).encode())
            h.update(b";")
        return h.hexdigest()[:16]


@lru_cache(maxsize=None)
def _stack(t: Transversal) -> np.ndarray:
    return np.array([g.quad for g in t.maps], dtype=np.int64)


@lru_cache(maxsize=None)
def build_transversal() -> Transversal:
    """Breadth-first closure of ``{H g}`` under right multiplication by the
    simple reflections, labelling ``H g`` by ``hcanon(g v0)``."""
    v0 = find_base_vector()
    gens = [OrthogonalMap.reflection(a) for a in _SIMPLE]
    start = OrthogonalMap.identity()
    reps = {h_canonical_tuple(v0): start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens:
            gs = g @ s
            label = h_canonical_tuple(gs.apply(v0))
            if label not in reps:
                reps[label] = gs
                queue.append(gs)
    if len(reps) != INDEX:
        raise InvariantViolation(f"transversal has {len(reps)} cosets, expected {INDEX}")
    labels = tuple(reps)
    return Transversal(tuple(reps[k] for k in labels), v0, labels)


# -- W canonical form -------------------------------------------------------------

def _orbit_images(x: np.ndarray) -> np.ndarray:
    """All ``g_i x`` for rows ``x``; shape (n, 135, 8)."""
    prod = np.einsum("gij,nj->ngi", build_transversal().array, x)
    if np.any(prod % 4):
        raise InvariantViolation("transversal map left E8")
    return prod // 4


def w_canonical_tuples(vectors) -> list[tuple[int, ...]]:
    """W-invariant canonical form: lexicographic minimum of ``hcanon(g_i l)``."""
    x = np.asarray(vectors, dtype=np.int64).reshape(-1, 8)
    if len(x) == 0:
        return []
    canon = _h_canonical_rows(_orbit_images(x))
    out = []
    for block in canon:
        order = np.lexsort(block.T[::-1])
        out.append(tuple(int(v) for v in block[order[0]]))
    return out


def w_canonical(l: LatticeVector) -> LatticeVector:
    return LatticeVector(w_canonical_tuples([l.doubled])[0])


# -- dominant representative ------------------------------------------------------

def dominant_tuple(x: Sequence[int], max_steps: int = 10_000) -> tuple[int, ...]:
    """Reflect in the lowest simple root with negative pairing until dominant."""
    v = list(x)
    for _ in range(max_steps):
        for a in _SIMPLE:
            c = dot_doubled(v, a)
            if c < 0:
                v = [vi - c * ai for vi, ai in zip(v, a)]
                break
        else:
            return tuple(v)
    raise InvariantViolation(f"no dominant vector after {max_steps} reflections")


def dominant_representative(l: LatticeVector) -> LatticeVector:
    """The unique dominant element of the W-orbit of ``l``."""
    return LatticeVector(dominant_tuple(l.doubled), l.preset)


# -- orbit counting ---------------------------------------------------------------

@dataclass(frozen=True)
class OrbitReport:
    d: int
    m: int
    nu: int
    representatives: tuple[LatticeVector, ...]
    dominant: tuple[LatticeVector, ...]


def count_orbits(d: int, m: int) -> OrbitReport:
    """W(E8)-orbits of norm-``2d`` vectors orthogonal to exactly ``m`` roots.

    Counted twice, by transversal canonical forms and by dominant
    representatives; the two counts must agree.
    """
    if d < 0 or m < 0 or m % 2:
        raise UsageError("need d >= 0 and m even and >= 0")
    reps = list(normal_form_tuples(d))
    if reps:
        counts = orthogonal_counts("E8", reps)
        chosen = [v for v, c in zip(reps, counts) if c == m]
    else:
        chosen = []
    canon = sorted(set(w_canonical_tuples(chosen)))
    dominant = sorted({dominant_tuple(v) for v in chosen})
    if len(canon) != len(dominant):
        raise InvariantViolation(
            f"d={d} m={m}: {len(canon)} classes by transversal, {len(dominant)} by dominance")
    # the two methods must identify exactly the same vectors
    pairs = {(c, dominant_tuple(v)) for c, v in zip(w_canonical_tuples(chosen), chosen)}
    if len(pairs) != len(canon):
        raise InvariantViolation(f"d={d} m={m}: the two canonical forms split vectors differently")
    return OrbitReport(d, m, len(canon),
                       tuple(LatticeVector(v) for v in canon),
                       tuple(LatticeVector(v) for v in dominant))


def weyl_orbit(x: Sequence[int]) -> set[tuple[int, ...]]:
    """The full W-orbit of a vector, by closure under simple reflections."""
    start = tuple(x)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a in _SIMPLE:
            c = dot_doubled(v, a)
            if c:
                w = tuple(vi - c * ai for vi, ai in zip(v, a))
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return seen


def random_weyl_word(rng, length: int) -> list[int]:
    return [int(i) for i in rng.integers(0, 8, size=length)]


def apply_word(word: Iterable[int], x: Sequence[int]) -> tuple[int, ...]:
    v = tuple(x)
    for i in word:
        a = _SIMPLE[i]
        c = dot_doubled(v, a)
        v = tuple(vi - c * ai for vi, ai in zip(v, a))
    return v

