"""Vectors of a given norm: normal forms, brute force, exact counts, sampling.

All searches run on doubled coordinates, where a vector of norm ``2d``
has ``sum(doubled**2) == 8*d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CeilingExceeded, UsageError
from .lattice import LatticePreset, LatticeVector, build_preset, normalize_name

DEFAULT_CEILING = 10**9
BRANCHES = ("integer", "half-integer", "both")


def _check_d(d: int, minimum: int = 0) -> int:
    if int(d) != d or d < minimum:
        raise UsageError(f"d must be an integer >= {minimum}, got {d}")
    return int(d)


def candidate_bound(d: int) -> tuple[int, int]:
    """Box bound ``(2*floor(2*sqrt(2d)) + 1)**8`` and its parity refinement.

    The refinement divides by ``2**7`` (rounding up) for the all-integer /
    all-half-integer split.
    """
    d = _check_d(d, 1)
    bound = (2 * math.isqrt(8 * d) + 1) ** 8
    return bound, -(-bound // 2**7)


# -- normal forms -----------------------------------------------------------

def _sorted_forms(k: int, target: int, odd: bool,
                  outer: tuple[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Doubled k-tuples with squared sum ``target`` in normal form.

    Coordinates 2..k are nonnegative with nondecreasing squares and are
    chosen from the last index down, largest value first; coordinate 1 is
    ``+-m`` where ``target - sum`` is a perfect square ``m**2``.
    """
    parity = 1 if odd else 0
    low = 1 if odd else 0
    tail = [0] * k

    def values(cap: int, rem: int):
        top = min(cap, math.isqrt(rem))
        if top % 2 != parity:
            top -= 1
        return range(top, low - 1, -2)

    def rec(i: int, prev: int, used: int):
        if i == 0:
            rem = target - used
            m = math.isqrt(rem)
            if m * m == rem and m <= prev and m % 2 == parity:
                tail[0] = m
                yield tuple(tail)
                if m:
                    tail[0] = -m
                    yield tuple(tail)
            return
        for s in values(prev, target - used):
            if i == k - 1 and outer is not None and not outer[0] <= s <= outer[1]:
                continue
            tail[i] = s
            yield from rec(i - 1, s, used + s * s)

    if k == 1:
        yield from rec(0, target, 0)
    else:
        yield from rec(k - 1, math.isqrt(target), 0)


def _branches(branch: str) -> tuple[bool, ...]:
    if branch not in BRANCHES:
        raise UsageError(f"branch must be one of {BRANCHES}")
    return {"integer": (False,), "half-integer": (True,), "both": (False, True)}[branch]


def normal_form_tuples(d: int, branch: str = "both",
                       outer: tuple[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Doubled normal-form vectors of E8 with norm ``2d``.

    ``outer`` restricts the doubled value of the last coordinate to a closed
    range, so disjoint ranges partition the work.
    """
    d = _check_d(d)
    for odd in _branches(branch):
        for v in _sorted_forms(8, 8 * d, odd, outer):
            if sum(v) % 4 == 0:
                yield v


def enumerate_normal_forms(d: int, preset: str = "E8", branch: str = "both",
                           outer: tuple[int, int] | None = None) -> Iterator[LatticeVector]:
    """Stream every normal-form vector of norm ``2d`` in E8.

    At least one representative of every orbit of the signed-permutation
    group H is produced.
    """
    if normalize_name(preset) != "E8":
        raise UsageError("normal-form enumeration is defined for E8 only")
    for v in normal_form_tuples(d, branch, outer):
        yield LatticeVector(v)


def partition_outer(d: int, parts: int) -> list[tuple[int, int]]:
    """Split the range of the outermost doubled coordinate into ``parts`` chunks."""
    top = math.isqrt(8 * _check_d(d))
    parts = max(1, min(parts, top + 1))
    edges = [round(i * (top + 1) / parts) for i in range(parts + 1)]
    return [(edges[i], edges[i + 1] - 1) for i in range(parts) if edges[i + 1] > edges[i]]


def e7_form_tuples(d: int) -> Iterator[tuple[int, ...]]:
    """Reduced representatives of E7 vectors of norm ``2d``.

    The E7 preset is ``{v in E8 : v7 = -v8}``; coordinates 1..6 are brought
    to normal form and the tied pair to ``v7 >= 0``.  Every E7 vector is the
    image of one of these under a signed permutation that preserves E7.
    """
    d = _check_d(d)
    for odd in (False, True):
        t = math.isqrt(4 * d)
        if t % 2 != odd:
            t -= 1
        while t >= (1 if odd else 0):
            for six in _sorted_forms(6, 8 * d - 2 * t * t, odd):
                if sum(six) % 4 == 0:
                    yield six + (t, -t)
            t -= 2


# -- brute force --------------------------------------------------------------

def box_size(preset: LatticePreset, d: int) -> int:
    """Candidate count of the coordinate box, halved for the parity split."""
    return -(-((2 * math.isqrt(8 * d) + 1) ** preset.ambient_rank) // 2)


def brute_force_tuples(preset: str | LatticePreset, d: int,
                       ceiling: int = DEFAULT_CEILING) -> list[tuple[int, ...]]:
    """All doubled vectors of norm ``2d`` in ``preset``, no symmetry used.

    Coordinates run over the full box ``|x_i| <= sqrt(2d)``; partial sums
    that already exceed ``2d`` are pruned, which drops only candidates the
    norm filter would reject anyway.
    """
    p = preset if isinstance(preset, LatticePreset) else build_preset(preset)
    d = _check_d(d)
    size = box_size(p, d)
    if size > ceiling:
        raise CeilingExceeded(size, ceiling)
    target = 8 * d
    n = p.ambient_rank
    out: list[tuple[int, ...]] = []
    cur = [0] * n

    for odd in ((False, True) if p.half_integers else (False,)):
        top = math.isqrt(target)
        if top % 2 != odd:
            top -= 1

        def rec(i: int, used: int):
            rem = target - used
            if i == n - 1:
                m = math.isqrt(rem)
                if m * m == rem and m % 2 == odd:
                    for s in ((m, -m) if m else (0,)):
                        cur[i] = s
                        if p.contains(cur):
                            out.append(tuple(cur))
                return
            for s in range(-top, top + 1, 2):
                if s * s <= rem:
                    cur[i] = s
                    rec(i + 1, used + s * s)

        rec(0, 0)
    return sorted(out)


def brute_force_enumerate(preset: str | LatticePreset, d: int,
                          ceiling: int = DEFAULT_CEILING) -> set[LatticeVector]:
    p = preset if isinstance(preset, LatticePreset) else build_preset(preset)
    return {LatticeVector(v, p.name) for v in brute_force_tuples(p, d, ceiling)}


def orbit_representatives(preset: str | LatticePreset, d: int,
                          ceiling: int = DEFAULT_CEILING) -> list[tuple[int, ...]]:
    """Vectors of norm ``2d`` covering every orbit of a symmetry group of
    ``preset`` that permutes its roots: normal forms for E8, the reduced
    forms for E7, the full brute-force list otherwise."""
    p = preset if isinstance(preset, LatticePreset) else build_preset(preset)
    if p.name == "E8":
        return list(normal_form_tuples(d))
    if p.name == "E7":
        return list(e7_form_tuples(d))
    return brute_force_tuples(p, d, ceiling)


# -- representation numbers ---------------------------------------------------

@lru_cache(maxsize=None)
def _block_counts(name: str, d_max: int) -> tuple[int, ...]:
    p = build_preset(name)
    top = 8 * d_max
    total = np.zeros(top + 1, dtype=np.int64)
    for odd in ((False, True) if p.half_integers else (False,)):
        # cnt[r, n]: partial vectors with doubled sum = r (mod 4), doubled square sum n
        cnt = np.zeros((4, top + 1), dtype=np.int64)
        cnt[0, 0] = 1
        for block in p.blocks:
            w = len(block)
            s = sum(sign for _, sign in block)
            lim = math.isqrt(top // w)
            new = np.zeros_like(cnt)
            for x in range(-lim, lim + 1):
                if x % 2 != odd:
                    continue
                shift = w * x * x
                for r in range(4):
                    new[(r + s * x) % 4, shift:] += cnt[r, :top + 1 - shift]
            cnt = new
        total += cnt[0]
    return tuple(int(total[8 * d]) for d in range(d_max + 1))


@lru_cache(maxsize=None)
def _span_counts(name: str, d_max: int) -> tuple[int, ...]:
    from .lattice import SIMPLE_ROOTS, dot

    p = build_preset(name)
    basis = [SIMPLE_ROOTS[i - 1] for i in p.span]
    gram = np.array([[dot(a, b) for b in basis] for a in basis], dtype=np.int64)
    bound = math.isqrt(2 * d_max) + 1
    axes = [np.arange(-bound, bound + 1)] * len(basis)
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(basis))
    norms = np.einsum("ni,ij,nj->n", grid, gram, grid)
    counts = [0] * (d_max + 1)
    for n in norms[norms <= 2 * d_max]:
        counts[int(n) // 2] += 1
    return tuple(counts)


def representation_numbers(preset: str | LatticePreset, d_max: int) -> tuple[int, ...]:
    """``N_L(2d)`` for ``d = 0..d_max``.

    Counts the same coordinate box as :func:`brute_force_tuples` without
    listing it: coordinates tied by the preset's orthogonality constraints
    are grouped into blocks and the squared norm and the coordinate sum
    (mod 4) are tracked block by block.
    """
    name = preset.name if isinstance(preset, LatticePreset) else normalize_name(preset)
    d_max = _check_d(d_max)
    if build_preset(name).span is not None:
        return _span_counts(name, d_max)
    return _block_counts(name, d_max)


def representation_number(preset: str | LatticePreset, d: int) -> int:
    """Number of vectors of norm ``2d`` in the preset."""
    d = _check_d(d)
    return representation_numbers(preset, d)[d]


# -- randomised search --------------------------------------------------------

@dataclass(frozen=True, order=True)
class RandomHit:
    d: int
    m: int
    witness: LatticeVector


def sample_e8_vectors(rng: np.random.Generator, n: int, d_min: int, d_max: int) -> np.ndarray:
    """Draw up to ``n`` E8 vectors with norm in ``[2*d_min, 2*d_max]``.

    Each draw picks the integer or the half-integer class with probability
    1/2, then each doubled coordinate uniformly from that class inside the
    box ``|x_i| <= sqrt(2*d_max)``, and is rejected unless it lies in E8 with
    the right norm.
    """
    top = math.isqrt(8 * d_max)
    even_k = top // 2
    odd_top = top if top % 2 else top - 1
    half = rng.integers(0, 2, size=n).astype(bool)
    ev = 2 * rng.integers(-even_k, even_k + 1, size=(n, 8))
    od = 2 * rng.integers(-(odd_top + 1) // 2, (odd_top - 1) // 2 + 1, size=(n, 8)) + 1
    x = np.where(half[:, None], od, ev)
    sq = (x * x).sum(axis=1)
    keep = (x.sum(axis=1) % 4 == 0) & (sq >= 8 * d_min) & (sq <= 8 * d_max)
    return x[keep]


def randomized_search(d_min: int, d_max: int, m_min: int, m_max: int,
                      trials: int, seed: int, batch: int = 1 << 16) -> list[RandomHit]:
    """Sample ``trials`` random E8 vectors and report each ``(d, m)`` seen.

    The stream comes from ``numpy.random.default_rng(seed)`` (PCG64) drawn in
    fixed-size batches, so a given ``(seed, batch)`` always reproduces the
    same samples.  The first sample hitting a pair is its witness.
    """
    from .orthocount import orthogonal_counts

    if trials < 1:
        raise UsageError("trials must be >= 1")
    d_min, d_max = _check_d(d_min, 1), _check_d(d_max, 1)
    if d_min > d_max:
        raise UsageError("empty d range")
    rng = np.random.default_rng(seed)
    chunks, got = [], 0
    while got < trials:
        x = sample_e8_vectors(rng, batch, d_min, d_max)[: trials - got]
        chunks.append(x)
        got += len(x)
    samples = np.concatenate(chunks)
    counts = orthogonal_counts("E8", samples)
    hits: dict[tuple[int, int], RandomHit] = {}
    for v, m in zip(samples, counts):
        m = int(m)
        if m_min <= m <= m_max:
            d = int((v * v).sum()) // 8
            if (d, m) not in hits:
                hits[(d, m)] = RandomHit(d, m, LatticeVector(tuple(int(c) for c in v)))
    return sorted(hits.values())

