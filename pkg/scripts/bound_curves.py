#!/usr/bin/env python3
"""Emit worst-case proximity-factor bound curves and plot them.

Writes one CSV row per dimension with every bound family in linear and dB
form, then renders a two-panel figure (ZF on the left, SIC on the right)
comparing primal against dual and LLL against KZ envelopes.

Typical use:

    python scripts/bound_curves.py --n-max 32 --delta 0.75 --out-dir results
"""

import argparse
import io
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from latprox.harness import emit_bound_curves

FAMILIES = {
    "zf": ["primal-lll-zf", "dual-lll-zf", "primal-kz-zf", "dual-kz-zf"],
    "sic": ["primal-lll-sic", "dual-lll-sic", "primal-kz-sic", "dual-kz-sic"],
}


def parse_rows(csv_text: str):
    rows = []
    header = None
    for line in csv_text.splitlines():
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(dict(zip(header, line.split(","))))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=32)
    ap.add_argument("--delta", type=float, default=1.0,
                    help="Lovasz parameter used for the LLL envelopes")
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    csv_text = emit_bound_curves(args.n_max, delta=args.delta)
    csv_path = args.out_dir / "bound_curves.csv"
    csv_path.write_text(csv_text)

    rows = parse_rows(csv_text)
    ns = [int(r["n"]) for r in rows]

    fig, axes = plt.subplots(1, 2, figsize=(11, 4.5), sharex=True)
    for ax, (det, keys) in zip(axes, FAMILIES.items()):
        for key in keys:
            ax.plot(ns, [float(r[f"{key}-db"]) for r in rows],
                    marker=".", label=key)
        ax.set_xlabel("dimension n")
        ax.set_ylabel("worst-case ratio bound (dB)")
        ax.set_title(f"{det.upper()} detectors, delta = {args.delta}")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    png_path = args.out_dir / "bound_curves.png"
    fig.savefig(png_path, dpi=150)

    print(f"wrote {csv_path} and {png_path} ({len(rows)} dimensions)")


if __name__ == "__main__":
    main()
