"""Fundamental weights of E8 and the explicit vectors orthogonal to 12 roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import InvariantViolation
from .lattice import (SIMPLE_ROOTS, LatticeVector, _exact_inverse, build_preset, dot,
                      express_in_simple_roots)
from .orthocount import (format_decomposition, label_root_count, orthogonal_roots,
                         root_system_components)

# Gram matrix ((omega_i, omega_j)) of the fundamental weights, Bourbaki labelling.
GRAM_OMEGA = (
    (4, 5, 7, 10, 8, 6, 4, 2),
    (5, 8, 10, 15, 12, 9, 6, 3),
    (7, 10, 14, 20, 16, 12, 8, 4),
    (10, 15, 20, 30, 24, 18, 12, 6),
    (8, 12, 16, 24, 20, 15, 10, 5),
    (6, 9, 12, 18, 15, 12, 8, 4),
    (4, 6, 8, 12, 10, 8, 6, 3),
    (2, 3, 4, 6, 5, 4, 3, 2),
)


@lru_cache(maxsize=None)
def fundamental_weights() -> tuple[LatticeVector, ...]:
    """``omega_1 .. omega_8`` with ``(alpha_i, omega_j) = delta_ij``.

    With ``A`` the doubled simple roots as rows, the doubled weights are the
    columns of ``4 * A^-1``.
    """
    inv = _exact_inverse([a.doubled for a in SIMPLE_ROOTS])
    weights = []
    for j in range(8):
        col = [4 * inv[i][j] for i in range(8)]
        if any(c.denominator != 1 for c in col):
            raise InvariantViolation(f"omega_{j + 1} is not in E8")
        weights.append(LatticeVector(tuple(int(c) for c in col)))
    for i, a in enumerate(SIMPLE_ROOTS):
        for j, w in enumerate(weights):
            if dot(a, w) != int(i == j):
                raise InvariantViolation("fundamental weights are not dual to the simple roots")
    return tuple(weights)


def computed_gram() -> list[list[int]]:
    w = fundamental_weights()
    return [[dot(a, b) for b in w] for a in w]


def weight_vector(c: Sequence[int]) -> LatticeVector:
    """``sum_j c_j omega_j``."""
    if len(c) != 8:
        raise ValueError("need 8 coefficients")
    w = fundamental_weights()
    return LatticeVector(tuple(sum(cj * wj.doubled[k] for cj, wj in zip(c, w)) for k in range(8)))


def norm_of_weight_combination(c: Sequence[int]) -> int:
    """``c^T G c`` with the printed Gram matrix, checked against coordinates."""
    by_matrix = sum(ci * GRAM_OMEGA[i][j] * cj for i, ci in enumerate(c) for j, cj in enumerate(c))
    by_coords = weight_vector(c).norm
    if by_matrix != by_coords:
        raise InvariantViolation(f"norm of {tuple(c)}: matrix gives {by_matrix}, coordinates {by_coords}")
    return by_matrix


@dataclass(frozen=True)
class AppendixVector:
    name: str
    coeffs: tuple[int, ...]
    d: int
    decomposition: str
    # simple-root indices (1-based) of each component of the orthogonal system
    components: tuple[tuple[int, ...], ...]


APPENDIX_VECTORS = (
    AppendixVector("l_5,6", (1, 0, 0, 1, 0, 0, 1, 0), 46, "A2+3A1", ((5, 6), (2,), (3,), (8,))),
    AppendixVector("l_1,3", (0, 0, 0, 1, 0, 1, 0, 1), 50, "A2+3A1", ((1, 3), (2,), (5,), (7,))),
    AppendixVector("l_2,4", (0, 0, 1, 0, 1, 0, 1, 0), 54, "A2+3A1", ((2, 4), (1,), (6,), (8,))),
    AppendixVector("l_7,8", (1, 0, 0, 1, 0, 1, 0, 0), 57, "A2+3A1", ((7, 8), (2,), (3,), (5,))),
    AppendixVector("l_M", (1, 1, 0, 0, 1, 0, 0, 1), 52, "2A2", ((3, 4), (6, 7))),
)


@dataclass
class AppendixResult:
    name: str
    norm: int
    m: int
    decomposition: str
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_vector(target: AppendixVector) -> AppendixResult:
    e8 = build_preset("E8")
    l = weight_vector(target.coeffs)
    norm = norm_of_weight_combination(target.coeffs)
    orth = orthogonal_roots(e8, l)
    comps = root_system_components(orth)
    decomposition = format_decomposition([c.label for c in comps])
    res = AppendixResult(target.name, norm, len(orth), decomposition)

    if norm != 2 * target.d:
        res.failures.append(f"norm {norm} != {2 * target.d}")
    if len(orth) != 12:
        res.failures.append(f"{len(orth)} orthogonal roots, expected 12")
    if decomposition != target.decomposition:
        res.failures.append(f"decomposition {decomposition} != {target.decomposition}")
    if sum(label_root_count(c.label) for c in comps) != len(orth):
        res.failures.append("component root counts do not add up")

    # the orthogonal system is generated by the stated simple roots
    found = sorted(sorted(i + 1 for i, a in enumerate(SIMPLE_ROOTS) if a.doubled in c.simple_roots)
                   for c in comps)
    expected = sorted(sorted(c) for c in target.components)
    if found != expected:
        res.failures.append(f"simple roots of components {found} != {expected}")

    # support argument: a positive root sum x_i alpha_i is orthogonal to l
    # exactly when x_j = 0 wherever c_j > 0
    support = [j for j, cj in enumerate(target.coeffs) if cj]
    for r in e8.positive_roots:
        x = express_in_simple_roots(r)
        if dot(r, l) != sum(cj * xj for cj, xj in zip(target.coeffs, x)):
            res.failures.append(f"(r, l) != sum c_j x_j for r = {r}")
            break
        if (dot(r, l) == 0) != all(x[j] == 0 for j in support):
            res.failures.append(f"support argument fails for r = {r}")
            break
    return res


def verify_appendix() -> list[AppendixResult]:
    return [verify_vector(v) for v in APPENDIX_VECTORS]
