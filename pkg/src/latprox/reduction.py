"""Basis reduction: size reduction, LLL, effective LLL, and KZ.

All reducers return the reduced basis together with the exact unimodular
transform that produced it, so reduced = input @ U always holds.  Dual-side
reduction reduces the reversed dual and maps the transform back to the
primal in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import (
    CHECK_EPS,
    Basis,
    GsoData,
    UnimodularTransform,
    _as_matrix,
    apply_transform,
    dual_basis,
    dual_transform_to_primal,
    gso_core,
    round_half_away,
)
from .enumeration import DEFAULT_BUDGET, svp_triangular
from .errors import ConfigInvalid, DimensionTooLarge, NonTermination

KZ_DIM_CAP = 12

_METHODS = ("size", "lll", "elll", "kz")
_SIDES = ("primal", "dual")


@dataclass(frozen=True)
class ReductionParams:
    method: str = "lll"
    delta: float = 0.75
    side: str = "primal"

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ConfigInvalid(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.side not in _SIDES:
            raise ConfigInvalid(f"side must be one of {_SIDES}, got {self.side!r}")
        if not (0.25 < self.delta <= 1.0):
            raise ConfigInvalid(f"delta must lie in (1/4, 1], got {self.delta}")

    @property
    def beta(self) -> float:
        return 1.0 / (self.delta - 0.25)


@dataclass(frozen=True, eq=False)
class ReductionReport:
    reduced: Basis
    transform: UnimodularTransform
    swaps: int = 0
    size_reductions: int = 0
    svp_calls: int = 0

    def to_dict(self) -> dict:
        return {
            "reduced": self.reduced.entries.tolist(),
            "transform": [[int(v) for v in row] for row in self.transform.entries],
            "swaps": self.swaps,
            "size_reductions": self.size_reductions,
            "svp_calls": self.svp_calls,
        }


def beta_from_delta(delta: float) -> float:
    if not (0.25 < delta <= 1.0):
        raise ConfigInvalid(f"delta must lie in (1/4, 1], got {delta}")
    return 1.0 / (delta - 0.25)


def _size_reduce_inplace(entries, u_obj, mu) -> int:
    """Full size reduction of every column against all earlier ones."""
    n = entries.shape[1]
    count = 0
    for k in range(1, n):
        for j in range(k - 1, -1, -1):
            q = int(round_half_away(mu[k, j]))
            if q != 0:
                entries[:, k] -= q * entries[:, j]
                u_obj[:, k] -= q * u_obj[:, j]
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
                count += 1
    return count


def _lll_engine(entries, delta, *, effective):
    """In-place LLL; returns (u_obj, swaps, size_reductions).

    Classic lowest-index sweep: size-reduce column k (fully, or only against
    k-1 in the effective variant), test the Lovasz condition with relative
    slack, swap and restart at max(k-1, 1) on violation.  Gram-Schmidt data
    is updated incrementally by the two-column swap formulas and refreshed
    from scratch every 64 swaps.
    """
    m, n = entries.shape
    u_obj = np.eye(n, dtype=object)
    _, gso_sq, mu = gso_core(entries)
    swaps = 0
    size_reds = 0
    slack = 1.0 - CHECK_EPS
    k = 1
    iters = 0
    iter_cap = max(1_000_000, 200 * n ** 3)
    swaps_since_refresh = 0
    while k < n:
        iters += 1
        if iters > iter_cap:
            raise NonTermination(f"no convergence after {iter_cap} sweep steps")
        js = [k - 1] if effective else range(k - 1, -1, -1)
        for j in js:
            q = int(round_half_away(mu[k, j]))
            if q != 0:
                entries[:, k] -= q * entries[:, j]
                u_obj[:, k] -= q * u_obj[:, j]
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
                size_reds += 1
        lhs = gso_sq[k] + mu[k, k - 1] ** 2 * gso_sq[k - 1]
        if lhs >= delta * gso_sq[k - 1] * slack:
            k += 1
        elif lhs < gso_sq[k - 1]:
            entries[:, [k - 1, k]] = entries[:, [k, k - 1]]
            u_obj[:, [k - 1, k]] = u_obj[:, [k, k - 1]]
            mu_old = mu[k, k - 1]
            b_k = gso_sq[k]
            b_k1 = gso_sq[k - 1]
            gso_sq[k - 1] = lhs
            mu[k, k - 1] = mu_old * b_k1 / lhs
            gso_sq[k] = b_k1 * b_k / lhs
            mu[[k - 1, k], : k - 1] = mu[[k, k - 1], : k - 1]
            for i in range(k + 1, n):
                t = mu[i, k]
                mu[i, k] = mu[i, k - 1] - mu_old * t
                mu[i, k - 1] = t + mu[k, k - 1] * mu[i, k]
            swaps += 1
            swaps_since_refresh += 1
            if swaps_since_refresh >= 64:
                _, gso_sq, mu = gso_core(entries)
                swaps_since_refresh = 0
            k = max(k - 1, 1)
        else:
            # a swap that would not shrink the potential: numerical breakdown
            raise NonTermination(
                f"potential failed to decrease at index {k} (lhs={lhs!r})")
    return u_obj, swaps, size_reds


def _xgcd(a: int, b: int):
    """Returns (g, p, q) with p*a + q*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unimodular_completion(z) -> list[list[int]]:
    """A unimodular integer matrix whose first column is the primitive vector z."""
    v = [int(t) for t in z]
    k = len(v)
    if not any(v):
        raise ConfigInvalid("cannot complete the zero vector")
    w = [[1 if r == c else 0 for c in range(k)] for r in range(k)]
    for i in range(1, k):
        a, b = v[0], v[i]
        if b == 0:
            continue
        g, p, q = _xgcd(a, b)
        a_g, b_g = a // g, b // g
        v[0], v[i] = g, 0
        for r in range(k):
            w0, wi = w[r][0], w[r][i]
            w[r][0] = w0 * a_g + wi * b_g
            w[r][i] = -w0 * q + wi * p
    if v[0] < 0:
        for r in range(k):
            w[r][0] = -w[r][0]
        v[0] = -v[0]
    if v[0] != 1:
        raise ConfigInvalid(f"vector is not primitive (gcd {v[0]})")
    return w


def size_reduce(basis, budget: int = DEFAULT_BUDGET) -> ReductionReport:
    """Make every |mu[i, j]| <= 1/2; Gram-Schmidt vectors are unchanged."""
    entries = _as_matrix(basis).copy()
    n = entries.shape[1]
    u_obj = np.eye(n, dtype=object)
    _, _, mu = gso_core(entries)
    count = _size_reduce_inplace(entries, u_obj, mu)
    return ReductionReport(reduced=Basis(entries),
                           transform=UnimodularTransform(u_obj),
                           size_reductions=count)


def lll_reduce(basis, delta: float = 0.75, budget: int = DEFAULT_BUDGET) -> ReductionReport:
    """LLL reduction: size-reduced plus the Lovasz condition at each adjacent pair."""
    beta_from_delta(delta)
    entries = _as_matrix(basis).copy()
    u_obj, swaps, size_reds = _lll_engine(entries, delta, effective=False)
    return ReductionReport(reduced=Basis(entries),
                           transform=UnimodularTransform(u_obj),
                           swaps=swaps, size_reductions=size_reds)


def effective_lll_reduce(basis, delta: float = 0.75,
                         budget: int = DEFAULT_BUDGET) -> ReductionReport:
    """LLL with only the subdiagonal size condition enforced.

    Same swap sequence as lll_reduce, hence identical Gram-Schmidt norms;
    cheaper because columns are never reduced against indices below k-1.
    """
    beta_from_delta(delta)
    entries = _as_matrix(basis).copy()
    u_obj, swaps, size_reds = _lll_engine(entries, delta, effective=True)
    return ReductionReport(reduced=Basis(entries),
                           transform=UnimodularTransform(u_obj),
                           swaps=swaps, size_reductions=size_reds)


def kz_reduce(basis, budget: int = DEFAULT_BUDGET,
              dim_cap: int = KZ_DIM_CAP) -> ReductionReport:
    """Korkine-Zolotarev reduction by successive shortest-vector searches.

    At each level i the shortest vector of the lattice projected orthogonal
    to the first i-1 columns is found by enumeration, lifted to a primitive
    combination of columns i..n, and installed via a unimodular completion.
    A final size-reduction pass enforces |mu| <= 1/2.  Runs LLL first so the
    searches start from a mild basis.
    """
    entries = _as_matrix(basis).copy()
    n = entries.shape[1]
    if n > dim_cap:
        raise DimensionTooLarge(f"KZ supported up to n = {dim_cap}, got {n}")
    u_obj, swaps, size_reds = _lll_engine(entries, 0.99, effective=False)
    svp_calls = 0
    for i in range(n):
        _, gso_sq, mu = gso_core(entries)
        block = [[mu[i + r, i + c] for c in range(r + 1)] for r in range(n - i)]
        # pad rows to full lower-triangular shape for the enumerator
        block = [row + [0.0] * (n - i - len(row)) for row in block]
        coefs, _ = svp_triangular(block, gso_sq[i:], budget)
        svp_calls += 1
        z = list(coefs)
        if z != [1] + [0] * (n - i - 1):
            w = unimodular_completion(z)
            wf = np.array(w, dtype=float)
            entries[:, i:] = entries[:, i:] @ wf
            u_obj[:, i:] = u_obj[:, i:] @ np.array(w, dtype=object)
    _, _, mu = gso_core(entries)
    size_reds += _size_reduce_inplace(entries, u_obj, mu)
    return ReductionReport(reduced=Basis(entries),
                           transform=UnimodularTransform(u_obj),
                           swaps=swaps, size_reductions=size_reds,
                           svp_calls=svp_calls)


def reduce_basis(basis, params: ReductionParams,
                 budget: int = DEFAULT_BUDGET) -> ReductionReport:
    """Dispatch on method and side.

    Dual-side reduction reduces the reversed dual basis, then maps the
    transform back so the returned report still satisfies
    reduced = input @ U.
    """
    basis = basis if isinstance(basis, Basis) else Basis(np.asarray(basis, dtype=float))
    if params.side == "dual":
        rep = _reduce_primal(dual_basis(basis), params, budget)
        u = dual_transform_to_primal(rep.transform)
        return ReductionReport(reduced=apply_transform(basis, u), transform=u,
                               swaps=rep.swaps,
                               size_reductions=rep.size_reductions,
                               svp_calls=rep.svp_calls)
    return _reduce_primal(basis, params, budget)


def _reduce_primal(basis, params: ReductionParams, budget: int) -> ReductionReport:
    if params.method == "size":
        return size_reduce(basis, budget)
    if params.method == "lll":
        return lll_reduce(basis, params.delta, budget)
    if params.method == "elll":
        return effective_lll_reduce(basis, params.delta, budget)
    return kz_reduce(basis, budget)


def is_size_reduced(basis, eps: float = CHECK_EPS) -> bool:
    _, _, mu = gso_core(_as_matrix(basis))
    n = mu.shape[0]
    off = mu[np.tril_indices(n, k=-1)]
    return bool(np.all(np.abs(off) <= 0.5 + eps))


def _lovasz_holds(gso_sq, mu, delta, eps):
    for k in range(1, len(gso_sq)):
        lhs = gso_sq[k] + mu[k, k - 1] ** 2 * gso_sq[k - 1]
        if lhs < delta * gso_sq[k - 1] * (1.0 - eps):
            return False
    return True


def is_lll_reduced(basis, delta: float = 0.75, eps: float = CHECK_EPS) -> bool:
    _, gso_sq, mu = gso_core(_as_matrix(basis))
    if not is_size_reduced(basis, eps):
        return False
    return _lovasz_holds(gso_sq, mu, delta, eps)


def is_effectively_lll_reduced(basis, delta: float = 0.75,
                               eps: float = CHECK_EPS) -> bool:
    _, gso_sq, mu = gso_core(_as_matrix(basis))
    n = len(gso_sq)
    for k in range(1, n):
        if abs(mu[k, k - 1]) > 0.5 + eps:
            return False
    return _lovasz_holds(gso_sq, mu, delta, eps)


def is_kz_reduced(basis, budget: int = DEFAULT_BUDGET,
                  eps: float = CHECK_EPS) -> bool:
    """Size-reduced and every Gram-Schmidt vector attains its projected minimum."""
    if not is_size_reduced(basis, eps):
        return False
    _, gso_sq, mu = gso_core(_as_matrix(basis))
    n = len(gso_sq)
    for i in range(n):
        block = [[mu[i + r, i + c] for c in range(r + 1)] for r in range(n - i)]
        block = [row + [0.0] * (n - i - len(row)) for row in block]
        _, lam_sq = svp_triangular(block, gso_sq[i:], budget)
        if gso_sq[i] > lam_sq * (1.0 + eps):
            return False
    return True
