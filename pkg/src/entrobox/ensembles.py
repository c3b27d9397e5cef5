"""Seeded random ensembles used by the sweeps: simplex points, full-rank
random density matrices, and Haar-random unitaries.

Everything is driven by :class:`numpy.random.Generator` instances so that a
master seed reproduces a whole sweep, and per-state seeds derived through
``SeedSequence.spawn`` make each state independent of how trials are
chunked or parallelized.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "spawn_seeds",
    "dirichlet",
    "ginibre",
    "diagonal_density",
    "haar",
]


def spawn_seeds(master_seed: int, count: int) -> list[np.random.SeedSequence]:
    """Child seed sequences for ``count`` states, derived from one master.

    Child ``i`` depends only on ``(master_seed, i)``, so trial ``i`` is the
    same state no matter the batch or thread layout.
    """
    return np.random.SeedSequence(master_seed).spawn(count)


def dirichlet(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the probability simplex (flat Dirichlet)."""
    return rng.dirichlet(np.ones(dim))


def ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix rho = G G^dag / Tr(G G^dag).

    G has iid standard complex Gaussian entries, so the output follows the
    Hilbert-Schmidt measure and almost surely has a nondegenerate, strictly
    positive spectrum.
    """
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / m.trace().real


def diagonal_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random diagonal density matrix: a Dirichlet point on the diagonal."""
    return np.diag(dirichlet(dim, rng)).astype(complex)


def haar(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix.

    The R factor's diagonal phases are divided out, which corrects the raw
    QR distribution to the Haar measure.
    """
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = r.diagonal()
    return q * (d / np.abs(d))
