"""Command-line surface: threshold sweeps, region clouds, verification
sweeps, approximation runs, and the oracle-vs-closed-form comparison.

Exit codes: 0 success, 1 verification failure, 2 usage or regime error.
Flags win over values from an optional TOML config file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import SpinZeroError
from .geometry import (
    OracleProblem,
    build_geometry,
    kd_boundary_cloud,
    lambda_star_d,
    oracle_min_product,
    thresholds,
)
from .graphs import read_edge_list, read_fields
from .partition import SpinParams, uniform_fields, z_exact
from .fptas import approx_z
from .verification import verify_sweep

EXACT_COMPARE_BUDGET = 16


def _fmt(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.15g}"


def _write(out, text: str):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def cmd_thresholds(args) -> int:
    beta = args.beta
    lines = ["gamma,lambda_mcmc,d_c,lambda_c,d_star,lambda_star"]
    g = args.gamma_min
    while g <= args.gamma_max + 1e-12:
        gamma = round(g, 12)
        if gamma <= 0 or beta * gamma <= 1 or gamma > beta:
            print(f"skipping gamma={_fmt(gamma)}: outside the ferromagnetic range",
                  file=sys.stderr)
            g += args.step
            continue
        t = thresholds(SpinParams(beta, gamma))
        lines.append(",".join(_fmt(v) for v in (
            gamma, t.lambda_mcmc, t.d_c, t.lambda_c, t.d_star, t.lambda_star
        )))
        g += args.step
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_regions(args) -> int:
    params = SpinParams(args.beta, args.gamma)
    geometry = build_geometry(params)
    d_list = [int(d) for d in args.d_list.split(",")]
    clouds = {}
    for d in d_list:
        pts = kd_boundary_cloud(geometry, d, angle_samples=args.samples, seed=args.seed)
        clouds[str(d)] = [[z.real, z.imag] for z in pts]
    doc = {
        "beta": params.beta,
        "gamma": params.gamma,
        "lambda_star": geometry.lambda_star,
        "d_star": geometry.d_star,
        "clouds": clouds,
    }
    _write(args.out, _dump_json(doc))
    return 0


def _parse_params_list(text: str) -> list:
    out = []
    for chunk in text.split(","):
        b, g = chunk.split(":")
        out.append(SpinParams(float(b), float(g)))
    return out


def cmd_verify(args) -> int:
    params_list = _parse_params_list(args.params)
    summary = verify_sweep(
        count=args.count,
        n_max=args.n_max,
        deg_max=args.deg_max,
        params_list=params_list,
        seed=args.seed,
        safety=args.safety,
    )
    _write(args.out, _dump_json(summary.to_json_dict()))
    return 0 if summary.passed == summary.total else 1


def cmd_approx(args) -> int:
    params = SpinParams(args.beta, args.gamma)
    with open(args.graph, encoding="utf-8") as fh:
        g = read_edge_list(fh.read())
    if args.fields is not None:
        with open(args.fields, encoding="utf-8") as fh:
            fields = read_fields(fh.read(), g.n)
    else:
        fields = uniform_fields(g.n, args.lam)
    result = approx_z(g, params, fields, args.epsilon)
    doc = result.to_json_dict()
    if g.n <= EXACT_COMPARE_BUDGET:
        exact = z_exact(g, params, fields)
        exact = float(exact.real) if isinstance(exact, complex) else float(exact)
        doc["exact"] = exact
        doc["relative_error"] = abs(result.value - exact) / abs(exact)
    _write(args.out, _dump_json(doc))
    return 0


def cmd_oracle(args) -> int:
    params = SpinParams(args.beta, args.gamma)
    geometry = build_geometry(params)
    lines = ["d,closed_form,oracle,relative_gap"]
    for d in range(2, args.d_max + 1):
        closed = lambda_star_d(geometry, d)
        problem = OracleProblem(region=geometry.region, d=d)
        if math.isinf(closed):
            lines.append(f"{d},inf,inf,0")
            continue
        val, _ = oracle_min_product(problem, restarts=args.restarts, seed=args.seed)
        gap = abs(val - closed) / closed
        lines.append(f"{d},{_fmt(closed)},{_fmt(val)},{_fmt(gap)}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinzero",
        description="Zero-free regions and deterministic approximation for "
                    "ferromagnetic 2-spin partition functions",
    )
    parser.add_argument("--config", help="TOML config file; flags win over it")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thresholds", help="threshold sweep CSV over gamma")
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--gamma-min", type=float, default=0.51)
    p.add_argument("--gamma-max", type=float, default=2.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("regions", help="product-region boundary clouds as JSON")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--d-list", default="2,3,4")
    p.add_argument("--samples", type=int, default=180)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("verify", help="zero-freeness sweep on random graphs")
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--deg-max", type=int, default=4)
    p.add_argument("--params", default="3:1.3333333333333333,4:0.5",
                   help="comma-separated beta:gamma pairs")
    p.add_argument("--safety", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("approx", help="deterministic approximation of Z")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--fields", help="per-vertex field file")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="uniform field when no field file is given")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=1e-2)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("oracle", help="oracle vs closed-form intercepts CSV")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_oracle)
    return parser


def _apply_config(parser, args, argv):
    if not args.config:
        return args
    with open(args.config, "rb") as fh:
        conf = tomllib.load(fh)
    section = conf.get(args.command, {})
    for key, value in section.items():
        attr = "lam" if key == "lambda" else key.replace("-", "_")
        if not hasattr(args, attr):
            raise ValueError(f"unknown config key {key!r} for {args.command}")
        # flags win over the config file
        if f"--{key.replace('_', '-')}" in argv:
            continue
        setattr(args, attr, value)
    return args


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config(parser, args, argv)
        return args.func(args)
    except SpinZeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
