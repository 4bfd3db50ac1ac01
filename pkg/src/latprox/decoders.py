"""Suboptimal lattice decoders and their reduction-aided variants.

zf_decode rounds the least-squares coefficients; sic_decode runs nulling and
cancellation through the QR factorization (decision order n..1); the
reduction-aided wrapper reduces the basis first, detects in the reduced
coordinates ignoring any alphabet boundary, and maps back with the exact
transform.  MMSE variants are realized by decoding an augmented system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Basis, _as_matrix, augment_mmse, round_half_away
from .enumeration import DEFAULT_BUDGET, closest_point
from .errors import BudgetExceeded, ConfigInvalid, NonPositiveSigma, UnknownMethod
from .reduction import ReductionParams, reduce_basis

_DETECTORS = ("zf", "sic", "ld")
_CRITERIA = ("plain", "mmse")
_BOUNDARIES = ("ignore", "clamp")


@dataclass(frozen=True, eq=False)
class DecodeInstance:
    """One received vector y over the lattice generated by `basis`.

    sigma is the per-component noise standard deviation (needed only for
    MMSE); alphabet is an inclusive integer interval (lo, hi) applied per
    coordinate, or None for the unconstrained lattice.
    """

    basis: Basis
    y: np.ndarray
    sigma: float | None = None
    alphabet: tuple[int, int] | None = None

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float).ravel()
        if y.shape[0] != self.basis.m:
            raise ConfigInvalid(
                f"y has length {y.shape[0]}, basis rows {self.basis.m}")
        if self.sigma is not None and self.sigma <= 0:
            raise NonPositiveSigma(f"sigma must be positive, got {self.sigma}")
        if self.alphabet is not None:
            lo, hi = self.alphabet
            if int(lo) != lo or int(hi) != hi or lo > hi:
                raise ConfigInvalid(f"alphabet must be an integer interval, got {self.alphabet}")
            object.__setattr__(self, "alphabet", (int(lo), int(hi)))
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class DecoderChain:
    """What to run: detector, MMSE or plain, optional reduction, boundary rule."""

    detector: str = "zf"
    criterion: str = "plain"
    reduction: ReductionParams | None = None
    boundary: str = "ignore"

    def __post_init__(self):
        if self.detector not in _DETECTORS:
            raise ConfigInvalid(f"detector must be one of {_DETECTORS}, got {self.detector!r}")
        if self.criterion not in _CRITERIA:
            raise ConfigInvalid(f"criterion must be one of {_CRITERIA}, got {self.criterion!r}")
        if self.boundary not in _BOUNDARIES:
            raise ConfigInvalid(f"boundary must be one of {_BOUNDARIES}, got {self.boundary!r}")

    @property
    def label(self) -> str:
        parts = []
        if self.criterion == "mmse":
            parts.append("mmse")
        if self.reduction is not None:
            r = self.reduction
            tag = r.method if r.method != "lll" else f"lll{r.delta:g}"
            parts.append(f"{tag}-{r.side}")
        parts.append(self.detector)
        return "-".join(parts)


def _clamp(x: np.ndarray, alphabet) -> np.ndarray:
    if alphabet is None:
        return x
    return np.clip(x, alphabet[0], alphabet[1])


def zf_decode(instance: DecodeInstance, boundary: str = "ignore") -> np.ndarray:
    """Round the least-squares (pseudoinverse) coefficients componentwise."""
    coefs, *_ = np.linalg.lstsq(instance.basis.entries, instance.y, rcond=None)
    x = round_half_away(coefs).astype(int)
    if boundary == "clamp":
        x = _clamp(x, instance.alphabet)
    return x


def _signed_qr(entries: np.ndarray):
    q, r = np.linalg.qr(entries)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs, signs[:, None] * r


def sic_decode(instance: DecodeInstance, boundary: str = "ignore") -> np.ndarray:
    """Nulling and cancellation: decide coefficient n first, back-substitute."""
    e = instance.basis.entries
    q, r = _signed_qr(e)
    yp = q.T @ instance.y
    n = e.shape[1]
    x = np.zeros(n, dtype=int)
    for i in range(n - 1, -1, -1):
        resid = yp[i] - r[i, i + 1:] @ x[i + 1:]
        x[i] = int(round_half_away(resid / r[i, i]))
    if boundary == "clamp":
        x = _clamp(x, instance.alphabet)
    return x


def mmse_wrap(instance: DecodeInstance) -> DecodeInstance:
    """Augmented system [B; sigma I], y padded with n zeros.

    Plain ZF/SIC on the wrapped instance realize the MMSE and MMSE-SIC
    decisions for the original one.
    """
    if instance.sigma is None or instance.sigma <= 0:
        raise NonPositiveSigma(f"MMSE needs sigma > 0, got {instance.sigma}")
    aug = augment_mmse(instance.basis, instance.sigma)
    y_aug = np.concatenate([instance.y, np.zeros(instance.basis.n)])
    return DecodeInstance(basis=aug, y=y_aug, sigma=instance.sigma,
                          alphabet=instance.alphabet)


def lr_aided_decode(instance: DecodeInstance, chain: DecoderChain,
                    budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Run one decoder chain and return coefficients of the original basis.

    Reduction (when configured) is applied to the working basis - the MMSE
    augmented one if the chain asks for it - and detection happens in the
    reduced coordinates with the boundary ignored; the integer transform
    maps the decision back, and only then is the alphabet clamp applied.
    """
    work = mmse_wrap(instance) if chain.criterion == "mmse" else instance
    if chain.reduction is None:
        if chain.detector == "zf":
            x = zf_decode(work)
        elif chain.detector == "sic":
            x = sic_decode(work)
        else:
            x = closest_point(work.basis, work.y, budget)
    else:
        rep = reduce_basis(work.basis, chain.reduction, budget)
        inner = DecodeInstance(basis=rep.reduced, y=work.y, sigma=work.sigma)
        if chain.detector == "zf":
            xp = zf_decode(inner)
        elif chain.detector == "sic":
            xp = sic_decode(inner)
        else:
            xp = closest_point(inner.basis, inner.y, budget)
        u = rep.transform.entries
        x = np.array([int(sum(u[r][c] * int(xp[c]) for c in range(len(xp))))
                      for r in range(len(xp))], dtype=int)
    if chain.boundary == "clamp":
        x = _clamp(x, instance.alphabet)
    return x


def ml_decode_finite(instance: DecodeInstance,
                     budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Exhaustive maximum-likelihood scan over the alphabet box."""
    if instance.alphabet is None:
        raise ConfigInvalid("finite ML needs an alphabet interval")
    lo, hi = instance.alphabet
    n = instance.basis.n
    count = (hi - lo + 1) ** n
    if count > budget:
        raise BudgetExceeded(f"alphabet box has {count} points, budget {budget}")
    rng = np.arange(lo, hi + 1)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    diffs = pts @ instance.basis.entries.T - instance.y
    dists = np.einsum("ij,ij->i", diffs, diffs)
    best = dists.min()
    idx = np.nonzero(dists <= best + 1e-12 * (1.0 + best))[0][0]
    return pts[idx].astype(int)


# ------------------------------------------------------------- batched variants
# Vectorized decision rules over many received vectors with one fixed basis;
# used by the Monte Carlo harness.  Y has one received vector per column.

def zf_coefs_batch(entries: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Unbounded ZF coefficients for many targets; ys holds one target per column."""
    pinv = np.linalg.pinv(entries)
    return round_half_away(pinv @ ys).astype(int)


def sic_coefs_batch(entries: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Unbounded SIC coefficients for many targets; ys holds one target per column."""
    q, r = _signed_qr(entries)
    yp = q.T @ ys
    n = entries.shape[1]
    x = np.zeros((n, ys.shape[1]), dtype=int)
    for i in range(n - 1, -1, -1):
        resid = yp[i] - r[i, i + 1:] @ x[i + 1:]
        x[i] = round_half_away(resid / r[i, i]).astype(int)
    return x
