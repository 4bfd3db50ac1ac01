"""Decision-region geometry of a basis: angles, facet distances, ratios.

The zero-forcing error distance of column i is half the distance from b_i
to the span of all the other columns, d_zf[i] = |b_i| sin(theta_i) / 2.
The successive-cancellation distance is half the Gram-Schmidt norm.  Both
satisfy exact identities against the reversed dual basis, which the tests
exercise as an independent route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .basis import Basis, _as_matrix, dual_basis, gso, gso_core
from .enumeration import DEFAULT_BUDGET, svp_triangular

SVP_DIM_CAP = 16


@dataclass(frozen=True, eq=False)
class DistanceSpectrum:
    """Per-index error distances; d_ld is None above the enumeration cap."""

    d_zf: np.ndarray
    d_sic: np.ndarray
    theta: np.ndarray  # radians
    d_ld: float | None

    @property
    def n(self) -> int:
        return len(self.d_zf)


def _inv_quadratic_diag(mu, gso_sq):
    """val[i] = first diagonal entry of the inverse trailing quadratic form.

    With M the trailing block of mu and L the trailing Gram-Schmidt norms,
    val[i] = e1^T (M L M^T)^{-1} e1 = sum_j (M^{-1})[j, 0]^2 / L[j], taken
    for every trailing block at once through the full inverse of mu.
    """
    n = len(gso_sq)
    w = solve_triangular(mu, np.eye(n), lower=True, unit_diagonal=True)
    return (w * w / gso_sq[:, None]).sum(axis=0)


def angle_theta(basis, i: int) -> float:
    """Angle (radians) between column i (1-based) and the span of the others.

    Uses the triangular identity sin^2 = 1 / (|b_i|^2 * q) where q is the
    leading diagonal entry of the inverted trailing quadratic form, computed
    by a single triangular solve against e1 (no explicit matrix inversion).
    """
    e = _as_matrix(basis)
    n = e.shape[1]
    if not 1 <= i <= n:
        raise IndexError(f"index {i} outside 1..{n}")
    _, gso_sq, mu = gso_core(e)
    k = i - 1
    m_block = mu[k:, k:]
    e1 = np.zeros(n - k)
    e1[0] = 1.0
    w = solve_triangular(m_block, e1, lower=True, unit_diagonal=True)
    q = float(np.sum(w * w / gso_sq[k:]))
    nsq = float(e[:, k] @ e[:, k])
    sin_sq = 1.0 / (nsq * q)
    return float(np.arcsin(np.sqrt(np.clip(sin_sq, 0.0, 1.0))))


def distance_spectrum(basis, budget: int = DEFAULT_BUDGET,
                      svp_cap: int = SVP_DIM_CAP) -> DistanceSpectrum:
    """All per-index ZF/SIC distances plus half the first lattice minimum.

    For n above svp_cap the exact minimum is not searched and d_ld is None.
    """
    e = _as_matrix(basis)
    _, gso_sq, mu = gso_core(e)
    val = _inv_quadratic_diag(mu, gso_sq)
    d_zf = 0.5 / np.sqrt(val)
    d_sic = 0.5 * np.sqrt(gso_sq)
    col_sq = np.einsum("ij,ij->j", e, e)
    sin_sq = np.clip(1.0 / (col_sq * val), 0.0, 1.0)
    theta = np.arcsin(np.sqrt(sin_sq))
    d_ld = None
    if e.shape[1] <= svp_cap:
        _, lam_sq = svp_triangular(mu, gso_sq, budget)
        d_ld = 0.5 * float(np.sqrt(lam_sq))
    return DistanceSpectrum(d_zf=d_zf, d_sic=d_sic, theta=theta, d_ld=d_ld)


def dual_distance_identities(basis) -> float:
    """Max relative mismatch between primal-side and dual-side distances.

    Primal route: angles and Gram-Schmidt norms of the basis itself.  Dual
    route: reciprocal column norms and reciprocal Gram-Schmidt norms of the
    reversed dual, computed from scratch on the dual matrix.
    """
    spec = distance_spectrum(basis, svp_cap=0)
    dual = dual_basis(basis)
    de = dual.entries
    d_zf_dual = (0.5 / np.linalg.norm(de, axis=0))[::-1]
    dual_gso_data = gso(dual)
    d_sic_dual = (0.5 / np.sqrt(dual_gso_data.gso_norms_sq))[::-1]
    rel_zf = np.abs(spec.d_zf - d_zf_dual) / spec.d_zf
    rel_sic = np.abs(spec.d_sic - d_sic_dual) / spec.d_sic
    return float(max(rel_zf.max(), rel_sic.max()))


def proximity_ratios(basis, budget: int = DEFAULT_BUDGET):
    """Per-index squared ratios (d_ld / d_zf)^2 and (d_ld / d_sic)^2."""
    spec = distance_spectrum(basis, budget=budget, svp_cap=64)
    rho_zf = (spec.d_ld / spec.d_zf) ** 2
    rho_sic = (spec.d_ld / spec.d_sic) ** 2
    return rho_zf, rho_sic
