"""Command-line front end.

Commands:
    coeffs <spec.json>                 characteristic coefficients + diversity
    sweep <spec.json> --quantity ...   CSV sweep over p / threshold / SNR scale
    validate <spec.json> ...           analytic vs Monte Carlo at 4 std errors
    asym <spec.json> --grid ...        exact vs asymptotic comparison

Exit codes: 0 success, 2 parse error, 3 parameter/invariant violation,
4 validation failure, 5 unsupported sampler.  The FADINGLAB_TOL
environment variable overrides the default quadrature tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .analysis import (
    WeightedGaussianSum,
    average_ep,
    diversity_order,
    outage,
    q_asymptotic,
    q_transform,
)
from .channels import (
    ChannelParameterError,
    SpecFormatError,
    UnsupportedSamplerError,
    spec_from_dict,
    to_mgf,
    to_sampler,
)
from .mgfcore import simplify
from .oracle import mc_average_ep, mc_outage, mc_q_transform
from .specfun import QuadratureConfig

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_VALIDATION = 4
EXIT_SAMPLER = 5

BPSK_WEIGHTS = ((1.0, 2.0),)


def _fmt(value: float) -> str:
    """10 significant digits, trailing zeros kept (locale independent)."""
    return format(value, "#.10g")


def _parse_grid(text: str, use_db: bool) -> list[tuple[float, float]]:
    """Parse 'start:stop:step' into (printed value, linear value) pairs."""
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecFormatError(f"grid {text!r} must have the form start:stop:step")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError as exc:
        raise SpecFormatError(f"grid {text!r} has a non-numeric field") from exc
    if step <= 0:
        raise SpecFormatError("grid step must be positive")
    if stop < start:
        raise SpecFormatError("grid stop must not precede start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + i * step for i in range(count)]
    if use_db:
        return [(v, 10.0 ** (v / 10.0)) for v in values]
    return [(v, v) for v in values]


def _load_spec(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return spec_from_dict(json.load(handle))


def _load_weights(args) -> WeightedGaussianSum:
    if args.weights is not None:
        with open(args.weights, "r", encoding="utf-8") as handle:
            pairs = json.load(handle)
        if not isinstance(pairs, list) or not pairs:
            raise SpecFormatError("weights file must hold a nonempty list of [w, p] pairs")
        return WeightedGaussianSum(tuple((float(w), float(p)) for w, p in pairs))
    if args.modulation == "bpsk":
        return WeightedGaussianSum(BPSK_WEIGHTS)
    raise SpecFormatError(
        "quantity 'aep' requires --modulation bpsk or an explicit --weights file"
    )


def _quad_cfg() -> QuadratureConfig | None:
    raw = os.environ.get("FADINGLAB_TOL")
    if raw is None:
        return None
    return QuadratureConfig(tol=float(raw))


def cmd_coeffs(args) -> int:
    spec = _load_spec(args.spec)
    mgf = simplify(to_mgf(spec))
    print(json.dumps(mgf.to_dict(), separators=(",", ":")))
    print(f"diversity_order: {diversity_order(mgf):g}")
    return EXIT_OK


def _sweep_row(quantity, mgf, linear, cfg, weights):
    """Return (exact, asymptotic or None, method tag) for one grid point."""
    if quantity == "qtransform":
        res = q_transform(mgf, linear, cfg)
        asym = q_asymptotic(mgf, linear) if linear > 0 else None
        return res.value, asym, res.method
    if quantity == "outage":
        res = outage(mgf, linear)
        return res.value, None, res.method
    exact = math.fsum(
        w * q_transform(mgf, linear * p, cfg).value for w, p in weights.terms
    )
    asym = math.fsum(w * q_asymptotic(mgf, linear * p) for w, p in weights.terms)
    return exact, asym, "euler-integral"


def _sweep_mc(quantity, spec, linear, weights, n, seed):
    if quantity == "qtransform":
        est = mc_q_transform(spec, linear, n, seed)
    elif quantity == "outage":
        est = mc_outage(spec, linear, n, seed)
    else:
        est = mc_average_ep(spec, weights, n, seed, p_scale=linear)
    return est.estimate, est.std_error


def cmd_sweep(args) -> int:
    spec = _load_spec(args.spec)
    mgf = to_mgf(spec)
    cfg = _quad_cfg()
    weights = _load_weights(args) if args.quantity == "aep" else None
    grid = _parse_grid(args.grid, args.db)
    print("grid,exact,asymptotic,mc,mc_stderr,method", flush=True)
    for index, (shown, linear) in enumerate(grid):
        exact, asym, method = _sweep_row(args.quantity, mgf, linear, cfg, weights)
        if args.mc:
            est, se = _sweep_mc(args.quantity, spec, linear, weights, args.mc,
                                args.seed + index)
            mc_cols = f"{_fmt(est)},{_fmt(se)}"
        else:
            mc_cols = ","
        asym_col = _fmt(asym) if asym is not None else ""
        print(f"{shown:g},{_fmt(exact)},{asym_col},{mc_cols},{method}", flush=True)
    return EXIT_OK


def cmd_validate(args) -> int:
    spec = _load_spec(args.spec)
    mgf = to_mgf(spec)
    to_sampler(spec)  # fail fast (exit 5) before any output
    cfg = _quad_cfg()
    weights = _load_weights(args) if args.quantity == "aep" else None
    grid = _parse_grid(args.grid, args.db)
    print("grid,analytic,mc,mc_stderr,status", flush=True)
    failures = 0
    for index, (shown, linear) in enumerate(grid):
        analytic, _, _ = _sweep_row(args.quantity, mgf, linear, cfg, weights)
        est, se = _sweep_mc(args.quantity, spec, linear, weights, args.mc,
                            args.seed + index)
        ok = abs(analytic - est) <= 4.0 * se + 1e-15
        failures += 0 if ok else 1
        status = "PASS" if ok else "FAIL"
        print(f"{shown:g},{_fmt(analytic)},{_fmt(est)},{_fmt(se)},{status}", flush=True)
    total = len(grid)
    verdict = "PASS" if failures == 0 else "FAIL"
    print(f"RESULT: {verdict} ({total - failures}/{total} points within 4 std errors)")
    return EXIT_OK if failures == 0 else EXIT_VALIDATION


def cmd_asym(args) -> int:
    spec = _load_spec(args.spec)
    mgf = to_mgf(spec)
    cfg = _quad_cfg()
    grid = _parse_grid(args.grid, args.db)
    print("grid,exact,asymptotic,ratio", flush=True)
    for shown, linear in grid:
        exact = q_transform(mgf, linear, cfg).value
        asym = q_asymptotic(mgf, linear)
        ratio = exact / asym if asym != 0 else float("nan")
        print(f"{shown:g},{_fmt(exact)},{_fmt(asym)},{_fmt(ratio)}", flush=True)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fadinglab",
        description="Error probability and outage analysis for posynomial-MGF fading channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeffs = sub.add_parser("coeffs", help="print characteristic coefficients")
    p_coeffs.add_argument("spec", help="channel spec JSON file")
    p_coeffs.set_defaults(func=cmd_coeffs)

    def add_common(p, with_quantity=True):
        p.add_argument("spec", help="channel spec JSON file")
        if with_quantity:
            p.add_argument("--quantity", required=True,
                           choices=("aep", "outage", "qtransform"))
        p.add_argument("--grid", required=True, help="start:stop:step")
        p.add_argument("--db", action="store_true",
                       help="interpret the grid in dB (linear = 10^(v/10))")

    p_sweep = sub.add_parser("sweep", help="CSV sweep of a quantity over a grid")
    add_common(p_sweep)
    p_sweep.add_argument("--modulation", choices=("bpsk",))
    p_sweep.add_argument("--weights", help="JSON file with [weight, p] pairs")
    p_sweep.add_argument("--mc", type=int, default=0, metavar="N",
                         help="add Monte Carlo columns with N samples per row")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="analytic vs Monte Carlo check")
    add_common(p_val)
    p_val.add_argument("--modulation", choices=("bpsk",))
    p_val.add_argument("--weights", help="JSON file with [weight, p] pairs")
    p_val.add_argument("--mc", type=int, default=10**6, metavar="N")
    p_val.add_argument("--seed", type=int, default=0)
    p_val.set_defaults(func=cmd_validate)

    p_asym = sub.add_parser("asym", help="exact vs asymptotic error probability")
    add_common(p_asym, with_quantity=False)
    p_asym.set_defaults(func=cmd_asym)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (json.JSONDecodeError, SpecFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedSamplerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLER
    except (ChannelParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
