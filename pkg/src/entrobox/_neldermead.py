"""Batched Nelder-Mead simplex minimizer.

Runs many independent Nelder-Mead searches in lockstep: one "slot" per
search, all slots advancing one iteration per loop pass, with the objective
evaluated for every slot that needs a point in a single vectorized call.
Each slot's trajectory is exactly what a sequential run from the same start
point would produce, so results are deterministic and independent of how
slots are batched together.

Uses the adaptive coefficients of Gao and Han, which scale the expansion,
contraction and shrink factors with the problem dimension; they behave much
better than the classic constants once the dimension passes ~10, which is
where unitary-group charts live (d**2 parameters).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["BatchResult", "minimize_batch"]


@dataclass
class BatchResult:
    """Best point, value, and evaluation count per slot."""

    x: np.ndarray  # (slots, n)
    fun: np.ndarray  # (slots,)
    nfev: np.ndarray  # (slots,)


def minimize_batch(
    objective: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x0: np.ndarray,
    step: float,
    budget,
    fatol: float = 1e-12,
    xatol: float = 1e-9,
) -> BatchResult:
    """Minimize per slot, starting each at ``x0[slot]``.

    ``objective(points, slots)`` must return one value per row of
    ``points``, where ``slots`` says which slot each row belongs to.
    ``step`` sets the edge length of the initial axis-aligned simplex and
    ``budget`` (scalar or per-slot array) caps objective evaluations per
    slot. A slot stops early once its simplex collapses below ``fatol``
    and ``xatol``.
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    n_slots, n = x0.shape
    budget = np.broadcast_to(np.asarray(budget, dtype=int), (n_slots,))
    if int(budget.min()) < n + 1:
        raise ValueError(
            f"budget {int(budget.min())} cannot cover the initial {n + 1} points"
        )

    sim = np.repeat(x0[:, None, :], n + 1, axis=1)
    idx = np.arange(n)
    sim[:, 1 + idx, idx] += step

    all_slots = np.repeat(np.arange(n_slots), n + 1)
    fsim = objective(sim.reshape(-1, n), all_slots).reshape(n_slots, n + 1)
    nfev = np.full(n_slots, n + 1)

    # Adaptive coefficients (reflection, expansion, contraction, shrink).
    alpha = 1.0
    chi = 1.0 + 2.0 / n
    gamma = 0.75 - 1.0 / (2.0 * n)
    sigma = 1.0 - 1.0 / n

    # Worst case per iteration: reflect + contract + shrink of n vertices.
    iter_cost = n + 2

    while True:
        order = np.argsort(fsim, axis=1, kind="stable")
        fsim = np.take_along_axis(fsim, order, axis=1)
        sim = np.take_along_axis(sim, order[:, :, None], axis=1)

        spread_f = fsim[:, -1] - fsim[:, 0]
        spread_x = np.abs(sim - sim[:, :1, :]).max(axis=(1, 2))
        live = (spread_f > fatol) | (spread_x > xatol)
        live &= nfev + iter_cost <= budget
        if not live.any():
            break

        slots = np.flatnonzero(live)
        s_sim = sim[slots]
        s_f = fsim[slots]

        centroid = s_sim[:, :-1, :].mean(axis=1)
        worst = s_sim[:, -1, :]
        xr = centroid + alpha * (centroid - worst)
        fr = objective(xr, slots)
        nfev[slots] += 1

        new_vertex = xr.copy()
        new_f = fr.copy()
        shrink = np.zeros(slots.size, dtype=bool)

        expand = fr < s_f[:, 0]
        if expand.any():
            e = np.flatnonzero(expand)
            xe = centroid[e] + chi * (xr[e] - centroid[e])
            fe = objective(xe, slots[e])
            nfev[slots[e]] += 1
            better = fe < fr[e]
            new_vertex[e[better]] = xe[better]
            new_f[e[better]] = fe[better]

        # Middle case fr < second-worst keeps the reflection as-is.
        contract = ~expand & (fr >= s_f[:, -2])
        if contract.any():
            c = np.flatnonzero(contract)
            outside = fr[c] < s_f[c, -1]
            xc = np.where(
                outside[:, None],
                centroid[c] + gamma * (xr[c] - centroid[c]),
                centroid[c] - gamma * (centroid[c] - s_sim[c, -1, :]),
            )
            fc = objective(xc, slots[c])
            nfev[slots[c]] += 1
            # Outside contraction accepts ties with the reflection; inside
            # contraction must strictly beat the worst vertex.
            accept = np.where(outside, fc <= fr[c], fc < s_f[c, -1])
            new_vertex[c[accept]] = xc[accept]
            new_f[c[accept]] = fc[accept]
            shrink[c[~accept]] = True

        keep = ~shrink
        if keep.any():
            k = np.flatnonzero(keep)
            rows = slots[k]
            sim[rows, -1, :] = new_vertex[k]
            fsim[rows, -1] = new_f[k]

        if shrink.any():
            h = np.flatnonzero(shrink)
            rows = slots[h]
            best = sim[rows, :1, :]
            shrunk = best + sigma * (sim[rows, 1:, :] - best)
            sim[rows, 1:, :] = shrunk
            flat_slots = np.repeat(rows, n)
            fvals = objective(shrunk.reshape(-1, n), flat_slots)
            fsim[rows, 1:] = fvals.reshape(rows.size, n)
            nfev[rows] += n

    order = np.argsort(fsim, axis=1, kind="stable")
    fsim = np.take_along_axis(fsim, order, axis=1)
    sim = np.take_along_axis(sim, order[:, :, None], axis=1)
    return BatchResult(x=sim[:, 0, :].copy(), fun=fsim[:, 0].copy(), nfev=nfev)
