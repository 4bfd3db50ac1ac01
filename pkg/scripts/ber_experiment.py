#!/usr/bin/env python3
"""Simulate bit error rates for reduction-aided MIMO detectors.

The default run is a desk-scale 4x4 system with 16QAM and a coarse SNR grid;
it finishes in a few minutes on one core and already shows the dual-reduction
ZF chain at or below the primal-reduction ZF chain, with LR-aided SIC running
close to the slope of unconstrained lattice decoding.

--long-run switches to the 8x8 system with 64QAM and pushes the waterfall
down toward BER 1e-5.  Expect this to take several hours single-core: the
floor of the grid needs a few hundred thousand trials per point before 200
bit errors accumulate.  Use --snr-grid / --max-trials to trim or extend, and
--no-ld to drop the (slowest) exact lattice-decoding chain.

Typical use:

    python scripts/ber_experiment.py
    python scripts/ber_experiment.py --long-run --no-ld
"""

import argparse
import csv
import pathlib
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from latprox.decoders import DecoderChain
from latprox.harness import SimConfig, ber_sim
from latprox.reduction import ReductionParams


def build_chains(include_ld: bool) -> tuple[DecoderChain, ...]:
    primal = ReductionParams(method="lll", delta=0.75, side="primal")
    dual = ReductionParams(method="lll", delta=0.75, side="dual")
    chains = [
        DecoderChain(detector="zf", criterion="plain", reduction=primal,
                     boundary="clamp"),
        DecoderChain(detector="zf", criterion="plain", reduction=dual,
                     boundary="clamp"),
        DecoderChain(detector="sic", criterion="plain", reduction=primal,
                     boundary="clamp"),
    ]
    if include_ld:
        chains.append(DecoderChain(detector="ld", criterion="plain",
                                   reduction=primal, boundary="clamp"))
    return tuple(chains)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--long-run", action="store_true",
                    help="8x8 with 64QAM down toward BER 1e-5 (hours)")
    ap.add_argument("--snr-grid", default=None,
                    help="comma-separated SNR points in dB, overrides preset")
    ap.add_argument("--max-trials", type=int, default=None)
    ap.add_argument("--max-errors", type=int, default=None)
    ap.add_argument("--no-ld", action="store_true",
                    help="skip the exact lattice-decoding chain")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()

    if args.long_run:
        n_t, qam = 8, 64
        grid = tuple(range(24, 49, 2))
        max_trials = 400_000
        max_errors = 200
        tag = "ber_8x8_64qam"
    else:
        n_t, qam = 4, 16
        grid = tuple(range(12, 33, 4))
        max_trials = 20_000
        max_errors = 200
        tag = "ber_4x4_16qam"
    if args.snr_grid is not None:
        grid = tuple(float(s) for s in args.snr_grid.split(","))
    if args.max_trials is not None:
        max_trials = args.max_trials
    if args.max_errors is not None:
        max_errors = args.max_errors

    cfg = SimConfig(n_t=n_t, n_r=n_t, qam_order=qam, snr_grid_db=grid,
                    chains=build_chains(not args.no_ld),
                    max_trials=max_trials, max_errors=max_errors,
                    seed=args.seed)

    t0 = time.monotonic()
    records = ber_sim(cfg)
    elapsed = time.monotonic() - t0

    args.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = args.out_dir / f"{tag}.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["snr-db", "chain", "bit-errors", "bits-sent", "ber", "ci95"])
        for r in records:
            w.writerow([r.snr_db, r.chain, r.bit_errors, r.bits_sent,
                        f"{r.ber:.6g}", f"{r.ci95:.3g}"])

    fig, ax = plt.subplots(figsize=(6.5, 5))
    for chain in {r.chain for r in records}:
        pts = sorted((r.snr_db, r.ber) for r in records if r.chain == chain)
        ax.semilogy([p[0] for p in pts], [max(p[1], 1e-12) for p in pts],
                    marker="o", label=chain)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("bit error rate")
    ax.set_title(f"{n_t}x{n_t}, {qam}QAM, Gray mapping")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    png_path = args.out_dir / f"{tag}.png"
    fig.savefig(png_path, dpi=150)

    print(f"wrote {csv_path} and {png_path} "
          f"({len(records)} records, {elapsed:.0f}s)")


if __name__ == "__main__":
    main()
