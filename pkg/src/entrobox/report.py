"""Report records shared by the inequality checks.

Every check in the package produces an :class:`InequalityReport` with the
same orientation convention: the inequality under test is ``lhs <= rhs`` and
``gap = rhs - lhs``, so a nonnegative gap means the inequality holds. Gaps
are allowed to dip to ``-tolerance`` before a check is marked failed, which
absorbs eigensolver and summation noise without hiding real violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Absolute floor applied to inequality gaps throughout the package.
GAP_TOLERANCE = 1e-9

# Absolute tolerance for identities that must hold to numerical precision.
IDENTITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one named inequality check on one state.

    Attributes
    ----------
    name:
        Stable identifier of the check, e.g. ``"subadd-2x4"``.
    lhs, rhs:
        The two sides of ``lhs <= rhs``.
    gap:
        ``rhs - lhs``.
    tolerance:
        Absolute floor: the check passes iff ``gap >= -tolerance``.
    passed:
        Whether the check passed.
    entropies:
        Every entropy value entering the check, keyed by role.
    provenance:
        Human-readable origin of the state tested (sampler, seed, trial).
    flags:
        Conventions applied while evaluating, e.g. zero-block replacements.
    """

    name: str
    lhs: float
    rhs: float
    gap: float
    tolerance: float
    passed: bool
    entropies: dict[str, float] = field(default_factory=dict)
    provenance: str = ""
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        """Plain-dict form used by the CLI's JSON reports."""
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "entropies": dict(self.entropies),
            "provenance": self.provenance,
            "flags": list(self.flags),
        }


def make_report(
    name: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    entropies: dict[str, float],
    provenance: str = "",
    flags: tuple[str, ...] = (),
) -> InequalityReport:
    """Build a report, deriving ``gap`` and ``passed`` from the two sides."""
    gap = rhs - lhs
    return InequalityReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        tolerance=tolerance,
        passed=bool(gap >= -tolerance),
        entropies=entropies,
        provenance=provenance,
        flags=flags,
    )
