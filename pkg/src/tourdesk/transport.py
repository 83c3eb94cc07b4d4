"""Exact earth mover's distance between two small discrete distributions.

Solved with the transportation simplex (northwest-corner start, MODI
potentials, Bland's lowest-index rule for both entering and leaving cells,
which also rules out cycling on degenerate pivots). Sentence-sized problems
(n, m up to a few dozen) solve in well under a millisecond.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

MASS_TOLERANCE = 1e-9
_REDUCED_COST_EPS = 1e-10
_MAX_PIVOTS = 100_000

ArrayLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True, eq=False)
class Histogram:
    """Probability masses over n points; must sum to 1 within 1e-9 (then renormalized)."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("histogram needs a non-empty 1-d weight vector")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("histogram weights must be finite and nonnegative")
        total = float(w.sum())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"histogram weights sum to {total}, expected 1 within {MASS_TOLERANCE}")
        # absorb float dust so downstream marginal checks are exact
        object.__setattr__(self, "weights", w / total)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True, eq=False)
class TransportPlan:
    flows: np.ndarray
    cost: float


def solve_emd(mu: Histogram, nu: Histogram, cost_matrix: ArrayLike) -> TransportPlan:
    """Minimum-cost transport plan moving mass mu onto nu under the given costs.

    Returns the exact optimum; deterministic for identical inputs. The cost
    matrix must be (len(mu), len(nu)) with finite nonnegative entries.
    """
    a = mu.weights
    b = nu.weights
    cost = np.asarray(cost_matrix, dtype=np.float64)
    n, m = len(a), len(b)
    if cost.shape != (n, m):
        raise ValueError(f"cost matrix shape {cost.shape} does not match marginals ({n}, {m})")
    if not np.all(np.isfinite(cost)) or np.any(cost < 0):
        raise ValueError("cost entries must be finite and nonnegative")

    flows, basis = _northwest_corner(a, b)
    for _ in range(_MAX_PIVOTS):
        u, v = _potentials(cost, basis, n, m)
        entering = _entering_cell(cost, u, v, basis, n, m)
        if entering is None:
            break
        _pivot(flows, basis, entering, n, m)
    else:
        raise RuntimeError("transportation simplex failed to converge")

    total = float(np.sum(flows * cost))
    return TransportPlan(flows=flows, cost=total)


def _northwest_corner(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    n, m = len(a), len(b)
    flows = np.zeros((n, m), dtype=np.float64)
    basis: list[tuple[int, int]] = []
    ra = a.copy()
    rb = b.copy()
    i = j = 0
    while True:
        q = min(ra[i], rb[j])
        flows[i, j] = q
        basis.append((i, j))
        ra[i] -= q
        rb[j] -= q
        if i == n - 1 and j == m - 1:
            break
        if ra[i] <= rb[j] and i < n - 1:
            i += 1
        elif j < m - 1:
            j += 1
        else:
            i += 1
    assert len(basis) == n + m - 1
    return flows, basis


def _potentials(
    cost: np.ndarray, basis: list[tuple[int, int]], n: int, m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Solve u_i + v_j = cost[i, j] over the basis tree, anchored at u_0 = 0."""
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {k: [] for k in range(n + m)}
    for (i, j) in basis:
        adj[i].append((n + j, (i, j)))
        adj[n + j].append((i, (i, j)))
    u = np.zeros(n)
    v = np.zeros(m)
    seen = [False] * (n + m)
    seen[0] = True
    stack = [0]
    while stack:
        node = stack.pop()
        for neighbor, (i, j) in adj[node]:
            if seen[neighbor]:
                continue
            seen[neighbor] = True
            if neighbor >= n:
                v[neighbor - n] = cost[i, j] - u[i]
            else:
                u[neighbor] = cost[i, j] - v[j]
            stack.append(neighbor)
    return u, v


def _entering_cell(
    cost: np.ndarray,
    u: np.ndarray,
    v: np.ndarray,
    basis: list[tuple[int, int]],
    n: int,
    m: int,
) -> tuple[int, int] | None:
    reduced = cost - u[:, None] - v[None, :]
    in_basis = np.zeros((n, m), dtype=bool)
    for (i, j) in basis:
        in_basis[i, j] = True
    candidates = np.flatnonzero(~in_basis.ravel() & (reduced.ravel() < -_REDUCED_COST_EPS))
    if candidates.size == 0:
        return None
    flat = int(candidates[0])  # lowest index: Bland's entering rule
    return flat // m, flat % m


def _pivot(
    flows: np.ndarray,
    basis: list[tuple[int, int]],
    entering: tuple[int, int],
    n: int,
    m: int,
) -> None:
    cycle = _basis_cycle(basis, entering, n, m)
    # cycle alternates +, -, +, - ... starting at the entering cell
    minus_cells = cycle[1::2]
    theta = min(flows[i, j] for (i, j) in minus_cells)
    leaving = min(
        ((i, j) for (i, j) in minus_cells if flows[i, j] == theta),
        key=lambda cell: cell[0] * m + cell[1],
    )
    for idx, (i, j) in enumerate(cycle):
        flows[i, j] += theta if idx % 2 == 0 else -theta
    flows[leaving] = 0.0
    basis.remove(leaving)
    basis.append(entering)
    basis.sort()


def _basis_cycle(
    basis: list[tuple[int, int]], entering: tuple[int, int], n: int, m: int
) -> list[tuple[int, int]]:
    """Unique cycle created by adding the entering cell to the basis tree.

    Returned as the cell sequence around the cycle, entering cell first.
    """
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {k: [] for k in range(n + m)}
    for (i, j) in basis:
        adj[i].append((n + j, (i, j)))
        adj[n + j].append((i, (i, j)))
    start, goal = entering[0], n + entering[1]
    parent: dict[int, tuple[int, tuple[int, int]]] = {start: (-1, (-1, -1))}
    stack = [start]
    while stack:
        node = stack.pop()
        if node == goal:
            break
        for neighbor, edge in adj[node]:
            if neighbor not in parent:
                parent[neighbor] = (node, edge)
                stack.append(neighbor)
    path_cells: list[tuple[int, int]] = []
    node = goal
    while node != start:
        prev, edge = parent[node]
        path_cells.append(edge)
        node = prev
    # path runs goal -> start; prepending the entering cell closes the cycle
    return [entering] + path_cells
