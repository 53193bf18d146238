"""The representation-number inequality ``28 N_E6 + 63 N_D6 >= 4 N_E7``.

When it fails at ``2d`` there must be an ``l in E8`` of norm ``2d`` with
``2 <= #R(l^perp) <= 12``; :func:`check_implication` tests that against the
exhaustive scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enumeration import representation_numbers
from .errors import UsageError
from .orthocount import WitnessRecord, scan_range


@dataclass(frozen=True)
class InequalityRow:
    d: int
    n_e6: int
    n_d6: int
    n_e7: int

    @property
    def lhs(self) -> int:
        return 28 * self.n_e6 + 63 * self.n_d6

    @property
    def rhs(self) -> int:
        return 4 * self.n_e7

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def inequality_table(d_min: int, d_max: int) -> list[InequalityRow]:
    if d_min < 0 or d_min > d_max:
        raise UsageError("need 0 <= d_min <= d_max")
    e6 = representation_numbers("E6", d_max)
    d6 = representation_numbers("D6", d_max)
    e7 = representation_numbers("E7", d_max)
    return [InequalityRow(d, e6[d], d6[d], e7[d]) for d in range(d_min, d_max + 1)]


@dataclass
class ImplicationReport:
    d_min: int
    d_max: int
    failing: list[int] = field(default_factory=list)
    witnesses: dict[int, WitnessRecord] = field(default_factory=dict)
    violations: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_implication(d_min: int, d_max: int) -> ImplicationReport:
    """For each ``d`` where the inequality fails, look for a witness with
    ``2 <= m <= 12``; a missing witness is a violation."""
    report = ImplicationReport(d_min, d_max)
    if d_min > d_max:
        return report
    for row in inequality_table(max(d_min, 1), d_max):
        if row.holds:
            continue
        report.failing.append(row.d)
        found = scan_range("E8", row.d, row.d, 2, 12)
        if found:
            report.witnesses[row.d] = found[0]
        else:
            report.violations.append(row.d)
    return report
