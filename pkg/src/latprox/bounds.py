"""Closed-form proximity-factor bounds for reduction-aided decoding.

Worst-case ratios sup (d_ld / d_det)^2 over reduced bases, per basis index
and overall, for the eight combinations of {LLL, KZ} x {ZF, SIC} x
{primal, dual}.  LLL bounds are parameterized by beta = 1/(delta - 1/4);
KZ bounds use Hermite constants (exact up to dimension 8, Blichfeldt's
estimate above) and the KZ sphere-packing constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import ConfigInvalid, UnknownMethod
from .reduction import beta_from_delta

HERMITE_EXACT_MAX = 8

# squared Hermite constants are known exactly up to dimension 8:
# gamma_n^n = 1, 4/3, 2, 4, 8, 64/3, 64, 256
_HERMITE_EXACT = (
    1.0,
    (4.0 / 3.0) ** 0.5,
    2.0 ** (1.0 / 3.0),
    2.0 ** 0.5,
    8.0 ** 0.2,
    (64.0 / 3.0) ** (1.0 / 6.0),
    64.0 ** (1.0 / 7.0),
    2.0,
)

BOUND_KEYS = (
    "primal-lll-zf", "primal-lll-sic", "primal-kz-zf", "primal-kz-sic",
    "dual-lll-zf", "dual-lll-sic", "dual-kz-zf", "dual-kz-sic",
)


def hermite_upper(n: int) -> float:
    """Hermite constant gamma_n: exact for n <= 8, Blichfeldt's bound above.

    Blichfeldt: gamma_n <= (2/pi) * Gamma(2 + n/2)^(2/n), evaluated through
    log-gamma so large n stays finite.
    """
    if n < 1:
        raise UnknownMethod(f"dimension must be >= 1, got {n}")
    if n <= HERMITE_EXACT_MAX:
        return _HERMITE_EXACT[n - 1]
    return (2.0 / math.pi) * math.exp((2.0 / n) * float(gammaln(2.0 + n / 2.0)))


def kz_constant_upper(n: int) -> float:
    """Upper bound on the squared KZ length ratio constant xi_n.

    Exact for n <= 3 (1, 4/3, 3/2); otherwise the smaller of the Hermite
    product bound gamma_n^(1+1/(n-1)) * prod_{j<n} gamma_j^(1/(j-1)) and the
    subexponential n^(1 + ln n).
    """
    if n < 1:
        raise UnknownMethod(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 1.0
    if n == 2:
        return 4.0 / 3.0
    if n == 3:
        return 1.5
    log_prod = (1.0 + 1.0 / (n - 1)) * math.log(hermite_upper(n))
    for j in range(2, n):
        log_prod += math.log(hermite_upper(j)) / (j - 1)
    return min(math.exp(log_prod), n ** (1.0 + math.log(n)))


# ---------------------------------------------------------------- LLL, primal

def lll_sic_bound(i: int, beta: float) -> float:
    """Worst-case (d_ld/d_sic)^2 at index i (1-based) after primal LLL."""
    return 1.0 + (beta ** i - beta) / (4.0 * (beta - 1.0))


def _zf_gain_bracket(i: int, n: int, beta: float) -> float:
    """Growth factor separating the ZF distance from the SIC one at index i."""
    c = 9.0 * beta - 4.0
    return (beta / c) * (9.0 * beta / 4.0) ** (n - i) + (8.0 * beta - 4.0) / c


def lll_zf_bound(i: int, n: int, beta: float) -> float:
    """Worst-case (d_ld/d_zf)^2 at index i (1-based) after primal LLL."""
    return _zf_gain_bracket(i, n, beta) * lll_sic_bound(i, beta)


def babai_sin_sq_lower(i: int, n: int, beta: float) -> float:
    """Worst-case lower bound on sin^2(theta_i) over LLL-reduced bases.

    Tight when the Gram-Schmidt norms decay geometrically with ratio beta
    and every subdiagonal mu equals -1/2.
    """
    return 1.0 / (_zf_gain_bracket(i, n, beta) * lll_sic_bound(i, beta))


# ------------------------------------------------------------------ KZ, primal

def kz_sic_bound(i: int) -> float:
    """Worst-case (d_ld/d_sic)^2 at index i after primal KZ."""
    return kz_constant_upper(i)


def kz_zf_bound(i: int, n: int) -> float:
    """Worst-case (d_ld/d_zf)^2 at index i after primal KZ."""
    total = kz_constant_upper(i)
    for j in range(1, n - i + 1):
        total += (1.0 / 9.0) * (9.0 / 4.0) ** j * kz_constant_upper(i + j)
    return total


# -------------------------------------------------------------------- LLL, dual

def dual_lll_sic_bound(i: int, beta: float) -> float:
    """Worst-case (d_ld/d_sic)^2 at index i after dual LLL."""
    return beta ** (i - 1)


def dual_lll_zf_bound(i: int, n: int, beta: float) -> float:
    """Worst-case (d_ld/d_zf)^2 at index i after dual LLL."""
    if n > i:
        geo = (beta / 4.0) * (beta ** (n - i) - 1.0) / (beta - 1.0)
    else:
        geo = 0.0
    return (1.0 + geo) * beta ** (i - 1)


# --------------------------------------------------------------------- KZ, dual

def dual_kz_sic_bound(i: int) -> float:
    """Worst-case (d_ld/d_sic)^2 at index i after dual KZ."""
    return hermite_upper(i) ** 2


def dual_kz_zf_bound(i: int, n: int) -> float:
    """Worst-case (d_ld/d_zf)^2 at index i after dual KZ."""
    total = hermite_upper(i) ** 2
    for j in range(i + 1, n + 1):
        total += 0.25 * hermite_upper(j) ** 2
    return total


# -------------------------------------------------------------- inverse entries

def minv_entry_bound(i: int, j: int) -> float:
    """Entrywise bound |(mu^{-1})[i, j]| <= (1/3) (3/2)^(i-j) for size-reduced mu.

    Achieved when every strictly-lower entry of mu equals -1/2.  Indices are
    1-based with i > j; i == j returns 1.
    """
    if i == j:
        return 1.0
    if i < j:
        return 0.0
    return (1.0 / 3.0) * 1.5 ** (i - j)


# ------------------------------------------------------------------ table driver

@dataclass(frozen=True, eq=False)
class ProximityBoundTable:
    """Per-index and overall bounds, all eight reduction/detector/side combos."""

    n: int
    delta: float
    per_index: dict = field(default_factory=dict)
    overall: dict = field(default_factory=dict)
    hermite_estimated: bool = False


def bound_table(n: int, delta: float = 1.0) -> ProximityBoundTable:
    if n < 1:
        raise ConfigInvalid(f"table needs n >= 1, got {n}")
    beta = beta_from_delta(delta)
    idx = range(1, n + 1)
    per = {
        "primal-lll-zf": np.array([lll_zf_bound(i, n, beta) for i in idx]),
        "primal-lll-sic": np.array([lll_sic_bound(i, beta) for i in idx]),
        "primal-kz-zf": np.array([kz_zf_bound(i, n) for i in idx]),
        "primal-kz-sic": np.array([kz_sic_bound(i) for i in idx]),
        "dual-lll-zf": np.array([dual_lll_zf_bound(i, n, beta) for i in idx]),
        "dual-lll-sic": np.array([dual_lll_sic_bound(i, beta) for i in idx]),
        "dual-kz-zf": np.array([dual_kz_zf_bound(i, n) for i in idx]),
        "dual-kz-sic": np.array([dual_kz_sic_bound(i) for i in idx]),
    }
    overall = {key: float(vals.max()) for key, vals in per.items()}
    return ProximityBoundTable(n=n, delta=delta, per_index=per, overall=overall,
                               hermite_estimated=n > HERMITE_EXACT_MAX)


def explicit_table2(n: int, key: str) -> float:
    """Simple closed-form envelopes of the overall bounds at delta = 3/4.

    Looser than bound_table but transparent: exponential for LLL, polynomial
    (dual) or subexponential (primal) for KZ.
    """
    subexp = n ** (1.0 + math.log(n))
    table = {
        "primal-lll-zf": 4.5 ** n,
        "primal-lll-sic": 2.0 ** n,
        "primal-kz-zf": 2.25 ** n * subexp,
        "primal-kz-sic": subexp,
        "dual-lll-zf": 2.0 ** n,
        "dual-lll-sic": 2.0 ** n,
        "dual-kz-zf": float(n) ** 3,
        "dual-kz-sic": float(n) ** 2,
    }
    if key not in table:
        raise UnknownMethod(f"unknown bound key {key!r}")
    return table[key]
