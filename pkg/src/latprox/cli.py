"""Command-line front end.

Subcommands: reduce, spectrum, bounds, prox, ber, decode.  Every CSV output
starts with comment lines echoing the tool version and the exact
configuration, so a result file is self-describing.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .basis import read_basis_csv, read_vector_csv
from .decoders import DecodeInstance, DecoderChain, lr_aided_decode
from .enumeration import DEFAULT_BUDGET
from .errors import ConfigInvalid, LatproxError
from .geometry import distance_spectrum
from .harness import SimConfig, ber_sim, emit_bound_curves, empirical_proximity
from .reduction import ReductionParams, reduce_basis


def _header_lines(cmd: str, cfg: dict) -> str:
    return (f"# latprox {__version__}\n"
            f"# {cmd} config: {json.dumps(cfg, sort_keys=True)}\n")


def _write_out(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _seed_type(value: str) -> int:
    s = int(value)
    if not 0 <= s < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit int")
    return s


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output file ('-' or omitted: stdout)")
    p.add_argument("--seed", type=_seed_type, default=0, help="RNG seed (unsigned 64-bit)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="enumeration node budget")


def _reduction_from_args(args) -> ReductionParams | None:
    if args.reduction == "none":
        return None
    return ReductionParams(method=args.reduction, delta=args.delta, side=args.side)


def cmd_reduce(args) -> int:
    basis = read_basis_csv(args.basis)
    params = ReductionParams(method=args.method, delta=args.delta, side=args.side)
    rep = reduce_basis(basis, params, args.budget)
    payload = {
        "version": __version__,
        "config": {"basis": args.basis, "method": args.method,
                   "delta": args.delta, "side": args.side, "budget": args.budget},
        **rep.to_dict(),
    }
    _write_out(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_spectrum(args) -> int:
    basis = read_basis_csv(args.basis)
    spec = distance_spectrum(basis, budget=args.budget, svp_cap=args.svp_cap)
    cfg = {"basis": args.basis, "budget": args.budget, "svp_cap": args.svp_cap}
    lines = [_header_lines("spectrum", cfg).rstrip("\n"),
             "i,d_zf,d_sic,theta_deg,ratio_zf,ratio_sic"]
    for k in range(spec.n):
        deg = math.degrees(spec.theta[k])
        if spec.d_ld is None:
            rz = rs = ""
        else:
            rz = f"{(spec.d_ld / spec.d_zf[k]) ** 2:.17g}"
            rs = f"{(spec.d_ld / spec.d_sic[k]) ** 2:.17g}"
        lines.append(f"{k + 1},{spec.d_zf[k]:.17g},{spec.d_sic[k]:.17g},"
                     f"{deg:.17g},{rz},{rs}")
    lines.append("d_ld," + ("" if spec.d_ld is None else f"{spec.d_ld:.17g}") + ",,,,")
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_bounds(args) -> int:
    cfg = {"n_max": args.n_max, "delta": args.delta}
    text = _header_lines("bounds", cfg) + emit_bound_curves(args.n_max, args.delta)
    _write_out(args.out, text)
    return 0


def cmd_prox(args) -> int:
    params = ReductionParams(method=args.method, delta=args.delta, side=args.side)
    rec = empirical_proximity(args.n, args.trials, params,
                              seed=args.seed, budget=args.budget)
    cfg = {"n": args.n, "trials": args.trials, "method": args.method,
           "delta": args.delta, "side": args.side, "seed": args.seed,
           "budget": args.budget}

    def db(v):
        return f"{10.0 * math.log10(v):.12g}" if v > 0 else ""

    lines = [_header_lines("prox", cfg).rstrip("\n"),
             "n,method,trials,max_ratio_zf,max_ratio_zf_db,bound_zf,bound_zf_db,"
             "max_ratio_sic,max_ratio_sic_db,bound_sic,bound_sic_db",
             f"{rec.n},{rec.method},{rec.trials},"
             f"{rec.max_ratio_zf:.17g},{db(rec.max_ratio_zf)},"
             f"{rec.bound_zf:.17g},{db(rec.bound_zf)},"
             f"{rec.max_ratio_sic:.17g},{db(rec.max_ratio_sic)},"
             f"{rec.bound_sic:.17g},{db(rec.bound_sic)}"]
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def _chain_from_dict(d: dict) -> DecoderChain:
    red = d.get("reduction")
    params = None
    if red is not None:
        params = ReductionParams(method=red.get("method", "lll"),
                                 delta=float(red.get("delta", 0.75)),
                                 side=red.get("side", "primal"))
    return DecoderChain(detector=d.get("detector", "zf"),
                        criterion=d.get("criterion", "plain"),
                        reduction=params,
                        boundary=d.get("boundary", "clamp"))


def sim_config_from_dict(doc: dict, seed_override: int | None = None) -> SimConfig:
    try:
        chains = tuple(_chain_from_dict(c) for c in doc["chains"])
        return SimConfig(
            n_t=int(doc["n_t"]), n_r=int(doc["n_r"]),
            qam_order=int(doc["qam_order"]),
            snr_grid_db=tuple(float(s) for s in doc["snr_grid_db"]),
            chains=chains,
            max_trials=int(doc.get("max_trials", 10_000)),
            max_errors=int(doc.get("max_errors", 200)),
            frame_symbols=int(doc.get("frame_symbols", 1)),
            gray=bool(doc.get("gray", True)),
            seed=int(doc["seed"]) if seed_override is None and "seed" in doc
            else (seed_override or 0),
        )
    except KeyError as exc:
        raise ConfigInvalid(f"BER config missing key {exc}") from exc


def cmd_ber(args) -> int:
    with open(args.config) as fh:
        doc = json.load(fh)
    cfg = sim_config_from_dict(doc, seed_override=args.seed if args.seed else None)
    records = ber_sim(cfg, budget=args.budget)
    echo = {"config_file": args.config, "seed": cfg.seed, "n_t": cfg.n_t,
            "n_r": cfg.n_r, "qam_order": cfg.qam_order,
            "snr_grid_db": list(cfg.snr_grid_db),
            "max_trials": cfg.max_trials, "max_errors": cfg.max_errors,
            "frame_symbols": cfg.frame_symbols, "gray": cfg.gray,
            "chains": [c.label for c in cfg.chains]}
    lines = [_header_lines("ber", echo).rstrip("\n"),
             "snr_db,chain,bit_errors,bits_sent,ber,ci95"]
    for r in records:
        lines.append(f"{r.snr_db:g},{r.chain},{r.bit_errors},{r.bits_sent},"
                     f"{r.ber:.17g},{r.ci95:.17g}")
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def _vector_arg(text: str) -> np.ndarray:
    """Inline comma-separated floats, falling back to a CSV file path."""
    try:
        return np.array([float(tok) for tok in text.split(",")])
    except ValueError:
        return read_vector_csv(text)


def cmd_decode(args) -> int:
    basis = read_basis_csv(args.basis)
    y = _vector_arg(args.y)
    alphabet = None
    if args.alphabet:
        lo, hi = args.alphabet.split(":")
        alphabet = (int(lo), int(hi))
    inst = DecodeInstance(basis=basis, y=y, sigma=args.sigma, alphabet=alphabet)
    chain = DecoderChain(detector=args.detector, criterion=args.criterion,
                         reduction=_reduction_from_args(args),
                         boundary=args.boundary)
    x = lr_aided_decode(inst, chain, args.budget)
    cfg = {"basis": args.basis, "y": args.y, "detector": args.detector,
           "criterion": args.criterion, "reduction": args.reduction,
           "side": args.side, "delta": args.delta, "boundary": args.boundary,
           "alphabet": args.alphabet, "sigma": args.sigma}
    text = _header_lines("decode", cfg) + ",".join(str(int(v)) for v in x) + "\n"
    _write_out(args.out, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latprox",
                                 description="lattice reduction-aided decoding toolkit")
    ap.add_argument("--version", action="version", version=f"latprox {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a basis and report the transform")
    p.add_argument("--basis", required=True)
    p.add_argument("--method", default="lll", choices=["size", "lll", "elll", "kz"])
    p.add_argument("--delta", type=float, default=0.75)
    p.add_argument("--side", default="primal", choices=["primal", "dual"])
    _add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("spectrum", help="per-index decoding distances of a basis")
    p.add_argument("--basis", required=True)
    p.add_argument("--svp-cap", type=int, default=16, dest="svp_cap")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", help="closed-form proximity bound curves")
    p.add_argument("--n-max", type=int, default=32, dest="n_max")
    p.add_argument("--delta", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("prox", help="empirical proximity maxima over a Gaussian ensemble")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--method", default="lll", choices=["lll", "kz"])
    p.add_argument("--delta", type=float, default=0.75)
    p.add_argument("--side", default="primal", choices=["primal", "dual"])
    _add_common(p)
    p.set_defaults(func=cmd_prox)

    p = sub.add_parser("ber", help="Monte Carlo bit error rates from a JSON config")
    p.add_argument("--config", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_ber)

    p = sub.add_parser("decode", help="decode one received vector")
    p.add_argument("--basis", required=True)
    p.add_argument("--y", required=True,
                   help="received vector: inline comma-separated floats "
                        "(use --y=-1.2,... when the first entry is negative) "
                        "or a CSV file path")
    p.add_argument("--detector", default="zf", choices=["zf", "sic", "ld"])
    p.add_argument("--criterion", default="plain", choices=["plain", "mmse"])
    p.add_argument("--reduction", default="none",
                   choices=["none", "size", "lll", "elll", "kz"])
    p.add_argument("--side", default="primal", choices=["primal", "dual"])
    p.add_argument("--delta", type=float, default=0.75)
    p.add_argument("--boundary", default="ignore", choices=["ignore", "clamp"])
    p.add_argument("--alphabet", default=None, help="integer interval lo:hi")
    p.add_argument("--sigma", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_decode)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LatproxError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
