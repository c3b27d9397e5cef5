"""Density matrices, zero-padding, subsystem reductions, and the quantum
entropy inequalities for a single system without physical parts.

The classical simplex trick has an exact matrix analog: a d x d density
matrix, padded with zero rows and columns until d factors as N1 * N2 (or
N1 * N2 * N3), is reread as the state of artificial subsystems through the
same row-major index bijection applied to rows and columns jointly. Summing
paired sub-indices produces reduced states (the partial-trace analog), and
von Neumann entropy of those reductions obeys subadditivity and strong
subadditivity even though no physical subsystems exist.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import (
    BadAxisError,
    BadTraceError,
    NotHermitianError,
    NotPositiveError,
    ShapeMismatchError,
    ShrinkForbiddenError,
)
from .report import GAP_TOLERANCE, InequalityReport, make_report
from .simplex import EntropyValue, _check_shape

__all__ = [
    "DensityMatrix",
    "Spectrum",
    "ReductionPlan",
    "validate_density",
    "pad_density",
    "reduce",
    "spectrum",
    "von_neumann",
    "quantum_subadditivity",
    "quantum_strong_subadditivity",
    "qutrit_reductions",
]

# Eigenvalues no lower than this are treated as numerical zeros.
_EIG_FLOOR = -1e-8


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """An immutable density matrix.

    Construct via :func:`validate_density` for raw external data; direct
    construction is for matrices already known to be valid (reductions,
    samplers). ``ref`` is a stable content hash used to tie derived
    objects, e.g. tomograms, back to their source state.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.matrix, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ShapeMismatchError(f"density matrix must be square, got {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def ref(self) -> str:
        digest = hashlib.sha1(np.ascontiguousarray(self.matrix).tobytes())
        return f"dm{self.dim}-{digest.hexdigest()[:12]}"

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues of a density matrix, descending, clipped, renormalized."""

    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.eigenvalues, dtype=float).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "eigenvalues", arr)


@dataclass(frozen=True)
class ReductionPlan:
    """How to reread a matrix as subsystems and which ones to keep.

    ``factors`` is the subsystem split (2 or 3 factors, each >= 2) whose
    product must cover the matrix dimension after padding; ``kept`` names
    the surviving subsystems, 1-based. Allowed: (1,) and (2,) for two
    factors; (1, 2), (2, 3) and (2,) for three.
    """

    factors: tuple[int, ...]
    kept: tuple[int, ...]

    _ALLOWED = {2: {(1,), (2,)}, 3: {(1, 2), (2, 3), (2,)}}

    def __post_init__(self) -> None:
        factors = tuple(int(n) for n in self.factors)
        kept = tuple(int(k) for k in self.kept)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "kept", kept)
        _check_shape(factors)
        if kept not in self._ALLOWED[len(factors)]:
            raise BadAxisError(
                f"cannot keep {kept} out of {len(factors)} subsystems"
            )

    @property
    def kept_dim(self) -> int:
        return int(np.prod([self.factors[k - 1] for k in self.kept]))


def validate_density(raw, tol: float = 1e-10) -> DensityMatrix:
    """Validate raw data as a density matrix.

    Hermiticity defects up to ``tol`` are symmetrized away via
    (rho + rho^dag) / 2; the trace may sit within 1e-6 of 1 and is
    renormalized exactly; eigenvalues down to -1e-8 are tolerated (they
    are clipped later wherever a spectrum is consumed).
    """
    try:
        arr = np.asarray(raw, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise NotHermitianError(f"not a numeric matrix: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ShapeMismatchError(f"density matrix must be square, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise NotHermitianError("density matrix has non-finite entries")
    defect = float(np.abs(arr - arr.conj().T).max())
    if defect > tol:
        raise NotHermitianError(f"Hermiticity defect {defect:.3e} exceeds {tol:.1e}")
    arr = (arr + arr.conj().T) / 2.0
    trace = float(arr.trace().real)
    if abs(trace - 1.0) > 1e-6:
        raise BadTraceError(f"trace is {trace!r}, not 1")
    arr = arr / trace
    low = float(np.linalg.eigvalsh(arr).min())
    if low < _EIG_FLOOR:
        raise NotPositiveError(f"eigenvalue {low:.3e} is below {_EIG_FLOOR:.1e}")
    return DensityMatrix(arr)


def pad_density(rho: DensityMatrix, new_dim: int) -> DensityMatrix:
    """Embed ``rho`` as the top-left block of a ``new_dim`` matrix.

    The appended rows and columns are zero, so the spectrum gains only
    zero eigenvalues and every entropy is unchanged.
    """
    if new_dim < rho.dim:
        raise ShrinkForbiddenError(f"cannot pad dim {rho.dim} down to {new_dim}")
    if new_dim == rho.dim:
        return rho
    out = np.zeros((new_dim, new_dim), dtype=complex)
    out[: rho.dim, : rho.dim] = rho.matrix
    return DensityMatrix(out)


def reduce(rho: DensityMatrix, plan: ReductionPlan) -> DensityMatrix:
    """Reduced state of the kept subsystems under the row-major rereading.

    Rows and columns are split into sub-indices by ``plan.factors``; the
    dropped sub-indices are summed where row and column agree. For a true
    tensor-product state this is the partial trace; here it is applied to
    a single indivisible system. Trace is preserved exactly and positivity
    to numerical precision.
    """
    factors = plan.factors
    target = int(np.prod(factors))
    if target < rho.dim:
        raise ShapeMismatchError(
            f"factors {factors} cover only {target} of {rho.dim} dimensions"
        )
    if target > rho.dim:
        rho = pad_density(rho, target)
    k = len(factors)
    tensor = rho.matrix.reshape(factors + factors)
    row = "abc"[:k]
    col = list("def"[:k])
    for axis in range(1, k + 1):
        if axis not in plan.kept:
            col[axis - 1] = row[axis - 1]
    out_axes = "".join(row[i - 1] for i in plan.kept) + "".join(
        col[i - 1] for i in plan.kept
    )
    reduced = np.einsum(f"{row}{''.join(col)}->{out_axes}", tensor)
    d = plan.kept_dim
    return DensityMatrix(reduced.reshape(d, d))


def spectrum(rho: DensityMatrix) -> Spectrum:
    """Eigenvalues in descending order, clipped at zero and renormalized.

    Negative eigenvalues above the -1e-8 floor are numerical noise and are
    clipped to 0; below the floor the matrix is rejected outright.
    """
    vals = np.linalg.eigvalsh(rho.matrix)
    low = float(vals.min())
    if low < _EIG_FLOOR:
        raise NotPositiveError(f"eigenvalue {low:.3e} is below {_EIG_FLOOR:.1e}")
    vals = np.clip(vals[::-1], 0.0, None)
    return Spectrum(vals / vals.sum())


def von_neumann(rho: DensityMatrix) -> EntropyValue:
    """Von Neumann entropy -Tr(rho ln rho) in nats, via the spectrum."""
    lam = spectrum(rho).eigenvalues
    return EntropyValue(float(-xlogy(lam, lam).sum()), "von_neumann")


def quantum_subadditivity(
    rho: DensityMatrix,
    factors: tuple[int, int],
    tolerance: float = GAP_TOLERANCE,
    provenance: str = "",
) -> InequalityReport:
    """Check S(rho1) + S(rho2) >= S(rho) for the 2-factor rereading.

    ``rho`` is padded to the product of ``factors`` if needed; padding
    leaves S(rho) unchanged.
    """
    factors = _as_factors(factors, 2, rho.dim)
    s_joint = float(von_neumann(rho))
    s1 = float(von_neumann(reduce(rho, ReductionPlan(factors, (1,)))))
    s2 = float(von_neumann(reduce(rho, ReductionPlan(factors, (2,)))))
    return make_report(
        name=f"q-subadd-{factors[0]}x{factors[1]}",
        lhs=s_joint,
        rhs=s1 + s2,
        tolerance=tolerance,
        entropies={"joint": s_joint, "part1": s1, "part2": s2},
        provenance=provenance,
    )


def quantum_strong_subadditivity(
    rho: DensityMatrix,
    factors: tuple[int, int, int],
    tolerance: float = GAP_TOLERANCE,
    provenance: str = "",
) -> InequalityReport:
    """Check S(R12) + S(R23) >= S(rho) + S(R2) for the 3-factor rereading."""
    factors = _as_factors(factors, 3, rho.dim)
    s_joint = float(von_neumann(rho))
    s12 = float(von_neumann(reduce(rho, ReductionPlan(factors, (1, 2)))))
    s23 = float(von_neumann(reduce(rho, ReductionPlan(factors, (2, 3)))))
    s2 = float(von_neumann(reduce(rho, ReductionPlan(factors, (2,)))))
    name = "q-strong-subadd-{}x{}x{}".format(*factors)
    return make_report(
        name=name,
        lhs=s_joint + s2,
        rhs=s12 + s23,
        tolerance=tolerance,
        entropies={"joint": s_joint, "pair12": s12, "pair23": s23, "part2": s2},
        provenance=provenance,
    )


def qutrit_reductions(rho: DensityMatrix) -> tuple[DensityMatrix, DensityMatrix]:
    """The two artificial qubit states hidden in a qutrit.

    The qutrit is padded to 4 x 4 and reread as two qubits; both single
    qubit reductions are returned. Their entropies bound the qutrit's own:
    S(rho) <= S(rho1) + S(rho2).
    """
    if rho.dim != 3:
        raise ShapeMismatchError(f"expected a qutrit, got dim {rho.dim}")
    padded = pad_density(rho, 4)
    return (
        reduce(padded, ReductionPlan((2, 2), (1,))),
        reduce(padded, ReductionPlan((2, 2), (2,))),
    )


def _as_factors(factors, k: int, dim: int) -> tuple[int, ...]:
    factors = tuple(int(n) for n in factors)
    if len(factors) != k:
        raise ShapeMismatchError(f"need {k} factors, got {factors}")
    _check_shape(factors)
    if int(np.prod(factors)) < dim:
        raise ShapeMismatchError(
            f"factors {factors} cover only {int(np.prod(factors))} of {dim} dimensions"
        )
    return factors
