"""Command-line surface: analyze, sweep, project, dualcheck, verdict.

Outputs are byte-stable for a fixed (config, seed, version): no timestamps,
'.' decimals, floats at 17 significant digits, and every file embeds the
resolved configuration and tool version.  Exit codes: 0 success, 2 config
or input error, 3 budget exhaustion under --strict.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .blocks import make_generator
from .characterize import ClassifyConfig, classify, growth_table
from .config import DEFAULT_BUDGET, DEFAULT_DUAL_BUDGET, N_MAX
from .duality import dual_norm
from .equivalence import default_generators, uniform_sweep
from .errors import BasisLabError, ConfigError, InputError
from .projections import norming_functional, projection_norm, summing_projection
from .spaces import SpaceSpec, norm

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _fmt_vec(v) -> str:
    return ";".join(f"{x:.17g}" for x in np.asarray(v, dtype=float))


def _parse_vec(text: str) -> np.ndarray:
    try:
        return np.asarray([float(t) for t in text.replace(";", ",").split(",") if t.strip() != ""])
    except ValueError as exc:
        raise InputError(f"cannot parse vector {text!r}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header_lines(args, spec_dict: dict) -> list[str]:
    cfg = {
        "space": spec_dict,
        "nmax": args.nmax,
        "mmax": args.mmax,
        "budget": args.budget,
        "seed": args.seed,
        "threads": args.threads,
    }
    return [
        f"# basislab {__version__}",
        f"# config {json.dumps(cfg, sort_keys=True)}",
    ]


def _dyadic(n: int) -> list[int]:
    out, k = [], 2
    while k <= n:
        out.append(k)
        k *= 2
    return out


def _load_space(args) -> SpaceSpec:
    if not args.space:
        raise ConfigError("--space PATH is required for this command")
    if not os.path.exists(args.space):
        raise ConfigError(f"space file not found: {args.space}")
    return SpaceSpec.load(args.space)


def cmd_analyze(args) -> int:
    spec = _load_space(args)
    grid = _dyadic(args.nmax)
    table = growth_table(spec, grid, budget=args.budget, seed=args.seed, n_max=N_MAX)
    if args.format == "json":
        doc = {
            "version": __version__,
            "config": {"space": spec.to_dict(), "nmax": args.nmax, "budget": args.budget, "seed": args.seed},
            "rows": [[r.n, r.lam, r.mu, r.bracket] for r in table.rows],
            "ratios": [[m, n, v] for (m, n), v in sorted(table.ratios.items())],
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
        return EXIT_OK
    buf = io.StringIO()
    for line in _header_lines(args, spec.to_dict()):
        buf.write(line + "\n")
    buf.write("n,lambda,mu,bracket\n")
    for r in table.rows:
        buf.write(f"{r.n},{_fmt(r.lam)},{_fmt(r.mu)},{_fmt(r.bracket)}\n")
    buf.write("# ratios\n")
    buf.write("m,n,ratio\n")
    for (m, n), v in sorted(table.ratios.items()):
        buf.write(f"{m},{n},{_fmt(v)}\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = _load_space(args)
    m_values = [m for m in _dyadic(args.mmax) if m * args.nmax <= N_MAX] or [1]
    if 1 not in m_values:
        m_values = [1] + m_values
    gens = default_generators(spec, m_values, seed=args.seed)
    result = uniform_sweep(
        spec, gens, args.nmax, budget=args.budget, seed=args.seed, threads=args.threads
    )
    exhausted = any(e.exhausted for e in result.estimates)
    if args.format == "json":
        doc = {
            "version": __version__,
            "config": {"space": spec.to_dict(), "N": args.nmax, "mmax": args.mmax, "budget": args.budget, "seed": args.seed},
            "K_sup": result.K_sup,
            "estimates": [
                {
                    "family": spec.family,
                    "m": gens[i].m,
                    "N": args.nmax,
                    "K_lower": e.K_lower,
                    "witness_up": e.witness_up.tolist(),
                    "witness_down": e.witness_down.tolist(),
                    "seed": e.seed,
                }
                for i, e in enumerate(result.estimates)
            ],
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        for line in _header_lines(args, spec.to_dict()):
            buf.write(line + "\n")
        buf.write("family,m,N,K_lower,witness_up,witness_down,seed\n")
        for i, e in enumerate(result.estimates):
            buf.write(
                f"{spec.family},{gens[i].m},{args.nmax},{_fmt(e.K_lower)},"
                f"{_fmt_vec(e.witness_up)},{_fmt_vec(e.witness_down)},{e.seed}\n"
            )
        _emit(buf.getvalue(), args.out)
    if args.strict and exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_dualcheck(args) -> int:
    spec = _load_space(args)
    grid = _dyadic(args.nmax)
    buf = io.StringIO()
    rows = []
    from .spaces import fundamental_function, ones

    for n in grid:
        lam = fundamental_function(spec, n)
        ev = dual_norm(spec, ones(n), budget=args.budget, seed=args.seed)
        rows.append((n, lam, ev.value, lam * ev.value / n, ev.analytic, ev.gap))
    if args.format == "json":
        doc = {
            "version": __version__,
            "config": {"space": spec.to_dict(), "nmax": args.nmax, "budget": args.budget, "seed": args.seed},
            "rows": [
                {"n": n, "lambda": lam, "mu": mu, "bracket": br, "analytic": an, "gap": gap}
                for n, lam, mu, br, an, gap in rows
            ],
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
        return EXIT_OK
    for line in _header_lines(args, spec.to_dict()):
        buf.write(line + "\n")
    buf.write("n,lambda,mu,bracket,analytic,gap\n")
    for n, lam, mu, br, an, gap in rows:
        buf.write(f"{n},{_fmt(lam)},{_fmt(mu)},{_fmt(br)},{int(an)},{_fmt(gap)}\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_project(args) -> int:
    if args.mode == "summing":
        if not args.coeffs or not args.boundaries:
            raise ConfigError("summing mode needs --coeffs and --boundaries")
        a = _parse_vec(args.coeffs)
        bounds = [int(b) for b in args.boundaries.replace(";", ",").split(",")]
        pa = summing_projection(a, bounds)
        summing = SpaceSpec.summing()
        doc = {
            "version": __version__,
            "config": {"mode": "summing", "coeffs": a.tolist(), "boundaries": bounds},
            "projected": pa.tolist(),
            "norm_before": norm(summing, a),
            "norm_after": norm(summing, pa),
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
        return EXIT_OK
    spec = _load_space(args)
    if not args.alpha:
        raise ConfigError("block mode needs --alpha")
    alpha = _parse_vec(args.alpha)
    bspec = make_generator(spec, alpha, unit=True)
    nf = norming_functional(spec, bspec.alpha, budget=args.budget, seed=args.seed)
    N = max(1, args.nmax // bspec.m)
    report = projection_norm(spec, bspec, nf.beta, N, budget=args.budget, seed=args.seed)
    doc = {
        "version": __version__,
        "config": {
            "mode": "block",
            "space": spec.to_dict(),
            "alpha": bspec.alpha.tolist(),
            "N": N,
            "budget": args.budget,
            "seed": args.seed,
        },
        "beta": nf.beta.tolist(),
        "beta_dual_bound": nf.dual_bound,
        "beta_certified": nf.certified,
        "norm_lower": report.norm_lower,
        "idempotency_residual": report.idempotency_residual,
        "witness": report.witness.tolist(),
    }
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    if args.strict and report.exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verdict(args) -> int:
    spec = _load_space(args)
    cfg = ClassifyConfig(
        n_max=args.nmax,
        sweep_budget=args.budget,
        seed=args.seed,
        threads=args.threads,
        m_values=tuple(m for m in (1, 2, 4, 8, 16, 32, 64) if m <= args.mmax),
    )
    verdict = classify(spec, cfg)
    doc = {"version": __version__, **verdict.to_dict()}
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basislab",
        description="Numerical laboratory for Schauder-basis geometry",
    )
    parser.add_argument("--version", action="version", version=f"basislab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, nmax_default: int) -> None:
        p.add_argument("--space", type=str, default=None, help="path to a space JSON file")
        p.add_argument("--nmax", type=int, default=nmax_default)
        p.add_argument("--mmax", type=int, default=64)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--seed", type=int, default=0)
        # >1 rarely pays off here: the kernels are many small numpy calls
        # that stay GIL-bound, so the default is serial
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--strict", action="store_true")

    p = sub.add_parser("analyze", help="growth table: n, lambda, mu, bracket, ratios")
    common(p, 256)
    p.set_defaults(func=cmd_analyze, budget=DEFAULT_DUAL_BUDGET)

    p = sub.add_parser("sweep", help="uniform equivalence sweep over generators")
    common(p, 64)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dualcheck", help="dual growth function and bracket per n")
    common(p, 256)
    p.set_defaults(func=cmd_dualcheck, budget=DEFAULT_DUAL_BUDGET)

    p = sub.add_parser("project", help="block projection norm or summing projection")
    common(p, 64)
    p.add_argument("--mode", choices=("block", "summing"), default="block")
    p.add_argument("--alpha", type=str, default=None, help="generator, comma-separated")
    p.add_argument("--coeffs", type=str, default=None, help="summing coefficients")
    p.add_argument("--boundaries", type=str, default=None, help="summing boundaries")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verdict", help="full classification pipeline")
    common(p, N_MAX)
    p.set_defaults(func=cmd_verdict)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BasisLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
