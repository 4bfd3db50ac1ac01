"""Experiment drivers: error-probability bounds, proximity ensembles, BER.

Randomness is counter-based: every trial owns a Philox stream keyed by
(seed, trial index), so results do not depend on how trials are scheduled
and any single trial can be replayed in isolation.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox
from scipy.special import erfc

from .basis import Basis, augment_mmse, complex_to_real
from .bounds import BOUND_KEYS, bound_table, explicit_table2
from .decoders import DecoderChain, sic_coefs_batch, zf_coefs_batch
from .enumeration import DEFAULT_BUDGET, closest_point
from .errors import BoundViolation, ConfigInvalid, RankDeficient
from .geometry import distance_spectrum, proximity_ratios
from .modulation import bit_errors, bits_per_pam, pam_order, symbol_energy
from .reduction import ReductionParams, reduce_basis

_MASK64 = (1 << 64) - 1


def trial_rng(seed: int, index: int) -> Generator:
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    return Generator(Philox(key=key))


def q_function(x):
    """Gaussian tail probability Q(x) = erfc(x / sqrt 2) / 2."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / np.sqrt(2.0))


def union_bounds(basis, sigma: float, budget: int = DEFAULT_BUDGET):
    """(lattice-decoding lower bound, ZF union bound, SIC union bound).

    The lower bound 2 Q(d_ld / sigma) holds for infinite-lattice decoding;
    the union bounds 2 sum_i Q(d_i / sigma) cap the respective detectors.
    """
    if sigma <= 0:
        raise ConfigInvalid(f"sigma must be positive, got {sigma}")
    spec = distance_spectrum(basis, budget=budget, svp_cap=64)
    ld_lower = float(2.0 * q_function(spec.d_ld / sigma))
    zf_upper = float(2.0 * q_function(spec.d_zf / sigma).sum())
    sic_upper = float(2.0 * q_function(spec.d_sic / sigma).sum())
    return ld_lower, zf_upper, sic_upper


# --------------------------------------------------------- proximity ensembles

@dataclass(frozen=True)
class ProxRecord:
    n: int
    method: str
    trials: int
    max_ratio_zf: float
    max_ratio_sic: float
    bound_zf: float
    bound_sic: float


def empirical_proximity(n: int, trials: int, params: ReductionParams,
                        seed: int = 0, budget: int = DEFAULT_BUDGET) -> ProxRecord:
    """Max observed (d_ld/d_det)^2 over an i.i.d. Gaussian basis ensemble.

    Every basis is reduced with `params`; a ratio above the proven bound
    raises BoundViolation with the offending basis in the message.
    """
    if params.method not in ("lll", "kz"):
        raise ConfigInvalid(f"proximity ensembles support lll or kz, got {params.method!r}")
    table = bound_table(n, params.delta)
    key_zf = f"{params.side}-{params.method}-zf"
    key_sic = f"{params.side}-{params.method}-sic"
    bound_zf = table.overall[key_zf]
    bound_sic = table.overall[key_sic]
    method = f"{params.method}-{params.side}" + (
        f"-d{params.delta:g}" if params.method == "lll" else "")
    max_zf = 0.0
    max_sic = 0.0
    for t in range(trials):
        rng = trial_rng(seed, t)
        while True:
            entries = rng.standard_normal((n, n))
            try:
                basis = Basis(entries)
                break
            except RankDeficient:
                continue
        rep = reduce_basis(basis, params, budget)
        rho_zf, rho_sic = proximity_ratios(rep.reduced, budget)
        r_zf = float(rho_zf.max())
        r_sic = float(rho_sic.max())
        if r_zf > bound_zf or r_sic > bound_sic:
            raise BoundViolation(
                f"ratio above bound for {method} at trial {t} (seed {seed}): "
                f"zf {r_zf} vs {bound_zf}, sic {r_sic} vs {bound_sic}; basis rows "
                f"{basis.entries.tolist()}")
        max_zf = max(max_zf, r_zf)
        max_sic = max(max_sic, r_sic)
    return ProxRecord(n=n, method=method, trials=trials,
                      max_ratio_zf=max_zf, max_ratio_sic=max_sic,
                      bound_zf=bound_zf, bound_sic=bound_sic)


# ------------------------------------------------------------------ BER driver

@dataclass(frozen=True)
class SimConfig:
    """Flat-fading Monte Carlo setup.

    snr_db is n_t * E[|x|^2] / sigma^2 with sigma^2 the per-real-component
    noise variance; each trial draws one channel and `frame_symbols` symbol
    vectors through it.  Decoding stops per chain at max_errors bit errors.
    """

    n_t: int
    n_r: int
    qam_order: int
    snr_grid_db: tuple
    chains: tuple
    max_trials: int = 10_000
    max_errors: int = 200
    frame_symbols: int = 1
    gray: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.n_t < 1 or self.n_r < self.n_t:
            raise ConfigInvalid(f"need n_r >= n_t >= 1, got n_t={self.n_t} n_r={self.n_r}")
        pam_order(self.qam_order)
        if len(self.snr_grid_db) == 0:
            raise ConfigInvalid("snr_grid_db is empty")
        grid = [float(s) for s in self.snr_grid_db]
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigInvalid("snr_grid_db must be strictly increasing")
        if len(self.chains) == 0:
            raise ConfigInvalid("no decoder chains configured")
        if self.max_trials < 1 or self.max_errors < 1 or self.frame_symbols < 1:
            raise ConfigInvalid("max_trials, max_errors, frame_symbols must be >= 1")
        if not (0 <= self.seed < 2 ** 64):
            raise ConfigInvalid("seed must fit in 64 bits")
        object.__setattr__(self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db))
        object.__setattr__(self, "chains", tuple(self.chains))


@dataclass(frozen=True)
class BerRecord:
    snr_db: float
    chain: str
    bit_errors: int
    bits_sent: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_sent if self.bits_sent else 0.0

    @property
    def ci95(self) -> float:
        if not self.bits_sent:
            return 0.0
        p = self.ber
        return 1.96 * math.sqrt(max(p * (1.0 - p), 0.0) / self.bits_sent)


def _prepare_chain(chain: DecoderChain, basis: Basis, sigma_eff: float,
                   cache: dict, budget: int):
    """Reduce (and augment) once per trial; reuse across chains and symbols."""
    key = (chain.criterion, chain.reduction)
    if key not in cache:
        work = augment_mmse(basis, sigma_eff) if chain.criterion == "mmse" else basis
        if chain.reduction is None:
            cache[key] = (work, None)
        else:
            rep = reduce_basis(work, chain.reduction, budget)
            cache[key] = (work, rep)
    return cache[key]


def _decode_with(chain: DecoderChain, work: Basis, rep, y_eff: np.ndarray,
                 m_pam: int, budget: int) -> np.ndarray:
    basis = rep.reduced if rep is not None else work
    if chain.detector == "zf":
        xp = zf_coefs_batch(basis.entries, y_eff[:, None])[:, 0]
    elif chain.detector == "sic":
        xp = sic_coefs_batch(basis.entries, y_eff[:, None])[:, 0]
    else:
        xp = closest_point(basis, y_eff, budget)
    if rep is not None:
        u = rep.transform.entries
        xp = np.array([int(sum(u[r][c] * int(xp[c]) for c in range(len(xp))))
                       for r in range(len(xp))], dtype=int)
    if chain.boundary == "clamp":
        xp = np.clip(xp, 0, m_pam - 1)
    return xp


def ber_sim(cfg: SimConfig, budget: int = DEFAULT_BUDGET) -> list[BerRecord]:
    """Monte Carlo bit error rates for every (SNR point, chain) pair.

    Per trial: one complex Gaussian channel, embedded as the real model,
    then frame_symbols Gray-labeled QAM vectors through it.  All chains see
    the same channel and noise, so chain comparisons are paired.
    """
    m_pam = pam_order(cfg.qam_order)
    bpp = bits_per_pam(cfg.qam_order)
    es = symbol_energy(cfg.qam_order)
    n_real = 2 * cfg.n_t
    records = []
    for si, snr_db in enumerate(cfg.snr_grid_db):
        sigma = math.sqrt(cfg.n_t * es / 10.0 ** (snr_db / 10.0))
        sigma_eff = sigma / 2.0  # integer-domain model: y_tilde = B u + noise/2
        errors = {c: 0 for c in cfg.chains}
        bits = {c: 0 for c in cfg.chains}
        active = set(cfg.chains)
        for trial in range(cfg.max_trials):
            if not active:
                break
            rng = trial_rng(cfg.seed, (si << 40) | trial)
            h = (rng.standard_normal((cfg.n_r, cfg.n_t))
                 + 1j * rng.standard_normal((cfg.n_r, cfg.n_t))) / math.sqrt(2.0)
            try:
                basis = complex_to_real(h)
            except RankDeficient:
                continue
            e = basis.entries
            shift = (m_pam - 1) * e.sum(axis=1)
            cache = {}
            for _ in range(cfg.frame_symbols):
                u = rng.integers(0, m_pam, size=n_real)
                noise = rng.standard_normal(2 * cfg.n_r) * sigma
                y = e @ (2 * u - (m_pam - 1)).astype(float) + noise
                y_til = 0.5 * (y + shift)
                for chain in list(active):
                    work, rep = _prepare_chain(chain, basis, sigma_eff, cache, budget)
                    y_eff = y_til
                    if chain.criterion == "mmse":
                        y_eff = np.concatenate([y_til, np.zeros(work.n)])
                    u_hat = _decode_with(chain, work, rep, y_eff, m_pam, budget)
                    # bits are demapped from the nearest valid index either way
                    errors[chain] += bit_errors(u, np.clip(u_hat, 0, m_pam - 1),
                                                gray=cfg.gray)
                    bits[chain] += n_real * bpp
            for chain in list(active):
                if errors[chain] >= cfg.max_errors:
                    active.discard(chain)
        for chain in cfg.chains:
            records.append(BerRecord(snr_db=snr_db, chain=chain.label,
                                     bit_errors=errors[chain], bits_sent=bits[chain]))
    return records


# ------------------------------------------------------------------ bound curves

def emit_bound_curves(n_max: int, delta: float = 1.0) -> str:
    """CSV of every overall bound (and its explicit envelope) for n = 2..n_max.

    Linear and dB columns per combination; the `constants` column records
    whether Hermite constants at that n are exact or Blichfeldt estimates.
    """
    if n_max < 2:
        raise ConfigInvalid(f"n_max must be >= 2, got {n_max}")
    buf = io.StringIO()
    cols = ["n", "constants"]
    for key in BOUND_KEYS:
        cols += [f"{key}-lin", f"{key}-db"]
    for key in BOUND_KEYS:
        cols += [f"env-{key}-lin", f"env-{key}-db"]
    writer = csv.writer(buf)
    writer.writerow(cols)
    for n in range(2, n_max + 1):
        table = bound_table(n, delta)
        row = [n, "estimate" if table.hermite_estimated else "exact"]
        for key in BOUND_KEYS:
            v = table.overall[key]
            row += [f"{v:.17g}", f"{10.0 * math.log10(v):.12g}"]
        for key in BOUND_KEYS:
            v = explicit_table2(n, key)
            row += [f"{v:.17g}", f"{10.0 * math.log10(v):.12g}"]
        writer.writerow(row)
    return buf.getvalue()
