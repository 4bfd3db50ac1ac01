"""Exact shortest-vector and closest-point searches.

Depth-first tree search on the Gram-Schmidt triangular system with
best-first (zig-zag) child ordering and radius pruning.  Every node visit
counts against an explicit budget; running out raises BudgetExceeded rather
than returning a silently truncated answer.  Equal-distance candidates are
resolved to the lexicographically smallest coefficient vector, so results
are deterministic.
"""

from __future__ import annotations

import numpy as np

from .basis import Basis, _as_matrix, gso_core, round_half_away
from .errors import BudgetExceeded

DEFAULT_BUDGET = 5_000_000

# relative slack that keeps exact ties alive under radius pruning
_TIE_REL = 1e-12


def _canonical_sign(x: list[int]) -> tuple[int, ...]:
    for v in x:
        if v != 0:
            return tuple(x) if v > 0 else tuple(-w for w in x)
    return tuple(x)


def _search(mu, gso_sq, coords, best_x, best_d, budget, *, exclude_zero, nonneg_top):
    """Core enumerator over integer combinations of a triangular system.

    mu: row-major unit lower-triangular list of lists, gso_sq: squared
    Gram-Schmidt norms, coords: target coordinates in the Gram-Schmidt
    frame.  best_x / best_d seed the search radius with an achievable
    candidate.  Returns (coefficients tuple, distance squared).
    """
    k = len(gso_sq)
    x = [0] * k
    delta = [1] * k
    center = [0.0] * k
    dist_above = [0.0] * k

    def canon(cand):
        return _canonical_sign(cand) if exclude_zero else tuple(cand)

    best_x = canon(list(best_x))
    tie_tol = _TIE_REL * (1.0 + best_d)

    j = k - 1
    center[j] = coords[j]
    x[j] = 0 if nonneg_top else int(round_half_away(center[j]))
    delta[j] = 1 if (nonneg_top or center[j] >= x[j]) else -1
    nodes = 0

    while True:
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
        r = center[j] - x[j]
        d = dist_above[j] + gso_sq[j] * r * r
        if d <= best_d + tie_tol:
            if j == 0:
                if not (exclude_zero and not any(x)):
                    cand = canon(x)
                    if d < best_d - tie_tol or (d <= best_d + tie_tol and cand < best_x):
                        best_x = cand
                        best_d = min(best_d, d)
                        tie_tol = _TIE_REL * (1.0 + best_d)
                x[0] += delta[0]
                delta[0] = -delta[0] - (1 if delta[0] > 0 else -1)
            else:
                j -= 1
                dist_above[j] = d
                c = coords[j]
                for t in range(j + 1, k):
                    c -= mu[t][j] * x[t]
                center[j] = c
                x[j] = int(round_half_away(c))
                delta[j] = 1 if c >= x[j] else -1
        else:
            j += 1
            if j >= k:
                return best_x, best_d
            if nonneg_top and j == k - 1:
                x[j] += 1
            else:
                x[j] += delta[j]
                delta[j] = -delta[j] - (1 if delta[j] > 0 else -1)


def _triangular_dist_sq(mu, gso_sq, coords, x):
    """Squared in-span distance between the target and the point with coefficients x."""
    k = len(gso_sq)
    d = 0.0
    for jj in range(k):
        y = x[jj]
        for t in range(jj + 1, k):
            y += mu[t][jj] * x[t]
        r = coords[jj] - y
        d += gso_sq[jj] * r * r
    return d


def svp_triangular(mu, gso_sq, budget=DEFAULT_BUDGET):
    """Shortest nonzero coefficients for a lattice given by (mu, gso_sq).

    Returns (coefficients, squared length).  The seed radius is the
    shortest column of the implied basis, so the search always has an
    achievable incumbent.
    """
    k = len(gso_sq)
    mu_l = [list(map(float, row)) for row in mu]
    gs = list(map(float, gso_sq))
    best_x = None
    best_d = np.inf
    for jj in range(k):
        csq = gs[jj]
        for t in range(jj):
            csq += mu_l[jj][t] ** 2 * gs[t]
        if csq < best_d:
            best_d = csq
            best_x = [0] * k
            best_x[jj] = 1
    coords = [0.0] * k
    return _search(mu_l, gs, coords, best_x, best_d, budget,
                   exclude_zero=True, nonneg_top=True)


def cvp_triangular(mu, gso_sq, coords, budget=DEFAULT_BUDGET):
    """Closest-point coefficients for a target with Gram-Schmidt coordinates `coords`.

    Seed incumbent is the rounding (Babai) point round(coefficients of the
    target), which is always achievable.
    """
    k = len(gso_sq)
    mu_l = [list(map(float, row)) for row in mu]
    gs = list(map(float, gso_sq))
    co = list(map(float, coords))
    # coefficients of the target: back-substitute coords = mu^T a
    a = [0.0] * k
    for jj in range(k - 1, -1, -1):
        v = co[jj]
        for t in range(jj + 1, k):
            v -= mu_l[t][jj] * a[t]
        a[jj] = v
    seed = [int(round_half_away(v)) for v in a]
    seed_d = _triangular_dist_sq(mu_l, gs, co, seed)
    return _search(mu_l, gs, co, seed, seed_d, budget,
                   exclude_zero=False, nonneg_top=False)


def shortest_vector(basis, budget=DEFAULT_BUDGET):
    """A nonzero lattice vector of minimum length; returns (vector, length).

    Among all shortest vectors the result is the one whose coefficient
    vector, sign-normalized so its first nonzero entry is positive, is
    lexicographically smallest.
    """
    e = _as_matrix(basis)
    _, norms_sq, mu = gso_core(e)
    coefs, dsq = svp_triangular(mu, norms_sq, budget)
    vec = e @ np.array(coefs, dtype=float)
    return vec, float(np.sqrt(dsq))


def first_minimum(basis, budget=DEFAULT_BUDGET) -> float:
    """Length of the shortest nonzero lattice vector."""
    return shortest_vector(basis, budget)[1]


def closest_point(basis, target, budget=DEFAULT_BUDGET) -> np.ndarray:
    """Integer coefficients of the lattice point closest to `target`.

    Distance ties are broken toward the lexicographically smallest
    coefficient vector.  The component of the target orthogonal to the
    basis span is constant over the lattice and is ignored.
    """
    e = _as_matrix(basis)
    bhat, norms_sq, mu = gso_core(e)
    t = np.asarray(target, dtype=float)
    coords = (bhat.T @ t) / norms_sq
    coefs, _ = cvp_triangular(mu, norms_sq, coords, budget)
    return np.array(coefs, dtype=int)


def closest_point_box(basis, target, lo=-4, hi=4) -> np.ndarray:
    """Exhaustive reference search over the coefficient box [lo, hi]^n.

    Independent of the tree search; used to validate it.  Same
    lexicographic tie rule.
    """
    e = _as_matrix(basis)
    n = e.shape[1]
    rng = np.arange(lo, hi + 1)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)  # lexicographic order
    diffs = pts @ e.T - np.asarray(target, dtype=float)
    dists = np.einsum("ij,ij->i", diffs, diffs)
    best = dists.min()
    idx = np.nonzero(dists <= best + _TIE_REL * (1.0 + best))[0][0]
    return pts[idx].astype(int)


def shortest_vector_box(basis, lo=-4, hi=4):
    """Exhaustive reference for the shortest vector over a coefficient box."""
    e = _as_matrix(basis)
    n = e.shape[1]
    rng = np.arange(lo, hi + 1)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    keep = np.any(pts != 0, axis=1)
    pts = pts[keep]
    vecs = pts @ e.T
    dists = np.einsum("ij,ij->i", vecs, vecs)
    best = dists.min()
    tie = dists <= best + _TIE_REL * (1.0 + best)
    cands = sorted(_canonical_sign(list(p)) for p in pts[tie])
    coefs = np.array(cands[0], dtype=int)
    return e @ coefs.astype(float), float(np.sqrt(best))
