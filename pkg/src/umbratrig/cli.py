"""Command-line front end: tables, figure data, identity verification."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

import numpy as np

from .errors import UmbraTrigError
from .gtrig_identities import (CIRCULAR_PAIR, IdentityTag, all_kinds, identity_residual,
                               lissajous_points, sector_area)
from .series_core import EvalConfig, SeriesFamily, Tag, coefficients, evaluate
from .transforms_diffusion import (SpectralDensity, borel_transform, g_alpha_integral,
                                   heat_spectral, laguerre_heat_closed, ll_heat_umbral)
from .umbral_algebra import j0_term, napier_term

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(out: TextIO, header: Sequence[str], rows) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")


def parse_grid(text: str) -> np.ndarray:
    """``min:max:steps`` -> evenly spaced points including both ends."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must look like min:max:steps, got {text!r}")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if lo > hi or steps < 2:
        raise argparse.ArgumentTypeError("grid needs min <= max and steps >= 2")
    return np.linspace(lo, hi, steps)


def parse_floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


def parse_ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def family_from_args(args) -> SeriesFamily:
    return SeriesFamily(Tag(args.family), alpha=args.alpha, beta=args.beta, k=args.k, m=args.m)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="\n", encoding="utf-8"), True


def svg_polyline(points: Sequence[tuple[float, float]], size: int = 600) -> str:
    """One-polyline SVG 1.1 document; the y axis is flipped to point up."""
    xs = [p[0] for p in points]
    ys = [-p[1] for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = max(x1 - x0, 1e-12)
    h = max(y1 - y0, 1e-12)
    pad = 0.05 * max(w, h)
    view = f"{fmt(x0 - pad)} {fmt(y0 - pad)} {fmt(w + 2 * pad)} {fmt(h + 2 * pad)}"
    coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in zip(xs, ys))
    stroke = fmt(max(w, h) / 400.0)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{size}" viewBox="{view}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="{stroke}" points="{coords}"/>\n'
        "</svg>\n"
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_eval(args, cfg: EvalConfig) -> int:
    v = evaluate(family_from_args(args), args.x, cfg).value
    print(fmt(v.real))
    return EXIT_OK


def cmd_table(args, cfg: EvalConfig) -> int:
    fam = family_from_args(args)
    rows = [(x, evaluate(fam, x, cfg).value.real) for x in args.grid]
    out, close = _open_out(args.output)
    try:
        write_csv(out, ("x", "value"), rows)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_lissajous(args, cfg: EvalConfig) -> int:
    pts = lissajous_points(args.xmax, args.steps, cfg)
    out, close = _open_out(args.output)
    try:
        if args.format == "svg":
            out.write(svg_polyline([(c, s) for _, c, s in pts]))
        else:
            write_csv(out, ("x", "lc", "ls"), pts)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_area(args, cfg: EvalConfig) -> int:
    res = sector_area(args.x, args.quad_steps, cfg)
    print(f"area={fmt(res.area)} double={fmt(res.double)}")
    if args.self_test:
        circ = sector_area(args.x, args.quad_steps, cfg, pair=CIRCULAR_PAIR)
        err = abs(circ.area - args.x / 2.0)
        ok = err <= 1e-8
        print(f"circular self-test: area={fmt(circ.area)} expected={fmt(args.x / 2.0)} "
              f"{'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    return EXIT_OK


def run_verify(grid: Sequence[float], orders: Sequence[float], tol: float,
               max_de_moivre: int, phf_orders: Sequence[int],
               defect_points: Sequence[float] = (0.5, 1.0, 2.0),
               cfg: EvalConfig = EvalConfig()) -> list[tuple[str, float, bool]]:
    """Rows ``(identity, worst value, passed)`` in a fixed order.

    The Pythagoras row reports the smallest ``|defect|`` and passes when
    it exceeds 0.01.
    """
    rows = []
    for kind in all_kinds(max_de_moivre, phf_orders):
        if kind.tag is IdentityTag.PYTHAGORAS_DEFECT:
            low = min(abs(identity_residual(kind, x, cfg=cfg)) for x in defect_points)
            rows.append((kind.label, low, low > 0.01))
            continue
        ys = grid if kind.uses_y else (0.0,)
        alphas = orders if kind.uses_alpha else (1.0,)
        betas = orders if kind.uses_beta else (1.0,)
        worst = 0.0
        for x in grid:
            for y in ys:
                for a in alphas:
                    for b in betas:
                        worst = max(worst, identity_residual(kind, x, y, a, b, cfg))
        rows.append((kind.label, worst, worst < tol))
    return rows


def cmd_verify(args, cfg: EvalConfig) -> int:
    rows = run_verify(args.grid, args.orders, args.tol, args.max_de_moivre, args.phf_orders, cfg=cfg)
    width = max(len(r[0]) for r in rows)
    print(f"{'identity'.ljust(width)}  {'max residual':>24}  result")
    for label, worst, ok in rows:
        print(f"{label.ljust(width)}  {worst:24.6e}  {'PASS' if ok else 'FAIL'}")
    failed = sum(not ok for _, _, ok in rows)
    print(f"{len(rows) - failed}/{len(rows)} passed (tol {args.tol:g})")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_transform(args, cfg: EvalConfig) -> int:
    if args.kind == "borel":
        print(fmt(borel_transform(family_from_args(args), args.x)))
    else:
        if args.alpha is None:
            raise UmbraTrigError("g_alpha transform needs --alpha")
        print(fmt(g_alpha_integral(args.x, args.alpha)))
    return EXIT_OK


def cmd_diffuse(args, cfg: EvalConfig) -> int:
    if args.mode == "closed":
        v = laguerre_heat_closed(args.x, args.tau)
    elif args.mode == "spectral":
        v = heat_spectral(SpectralDensity.exponential(args.rate), SeriesFamily.lexp(),
                          args.x, args.tau)
    else:
        v = ll_heat_umbral(coefficients(SeriesFamily.lexp(), args.order), args.x, args.tau,
                           args.order, cfg)
    print(fmt(v))
    return EXIT_OK


def cmd_limits(args, cfg: EvalConfig) -> int:
    if args.kind == "napier":
        limit = evaluate(SeriesFamily.lexp(), args.x, cfg).value.real
        term = napier_term
    else:
        from scipy.special import j0

        limit = float(j0(args.x))
        term = j0_term
    rows = []
    for n in args.ns:
        v = term(args.x, n)
        rows.append((n, v, abs(v - limit)))
    out, close = _open_out(args.output)
    try:
        write_csv(out, ("n", "term", "abs_error_vs_limit"), rows)
    finally:
        if close:
            out.close()
    return EXIT_OK


def _add_family_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", required=required, choices=[t.value for t in Tag],
                   help="series family (lowercase name)")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umbratrig",
        description="Laguerre-type trigonometric functions, umbral sums and heat equations")
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-15,
                        help="series stopping tolerance (relative)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one function value")
    _add_family_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="CSV table x,value over a grid")
    _add_family_flags(p)
    p.add_argument("--grid", type=parse_grid, required=True, help="min:max:steps")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("lissajous", help="(lc, ls) curve as CSV or SVG")
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_lissajous)

    p = sub.add_parser("area", help="sector area swept in the (lc, ls) plane")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--quad-steps", type=int, default=200)
    p.add_argument("--self-test", action="store_true",
                   help="also check the circular analog against x/2")
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("verify", help="identity residual suite")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--grid", type=parse_grid, default=parse_grid("0:2:9"))
    p.add_argument("--orders", type=parse_floats, default=[0.5, 1.0, 2.0],
                   help="alpha/beta values, comma separated")
    p.add_argument("--max-de-moivre", type=int, default=5)
    p.add_argument("--phf-orders", type=parse_ints, default=[2, 3, 4, 5])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="Borel or G_alpha integral transform")
    p.add_argument("--kind", choices=("borel", "g_alpha"), default="borel")
    _add_family_flags(p, required=False)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("diffuse", help="Laguerre heat equation with exp-type data")
    p.add_argument("--mode", choices=("closed", "spectral", "umbral"), default="spectral")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--rate", type=float, default=1.0, help="decay of the spectral density")
    p.add_argument("--order", type=int, default=60)
    p.set_defaults(func=cmd_diffuse)

    p = sub.add_parser("limits", help="Napier-Laguerre and J0 limit tables")
    p.add_argument("--kind", choices=("napier", "j0"), default="napier")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--ns", type=parse_ints, default=[10, 100, 1000])
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_limits)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = EvalConfig.from_env(rel_tol=args.rel_tol)
        if args.command == "transform" and args.kind == "borel" and args.family is None:
            raise UmbraTrigError("borel transform needs --family")
        return args.func(args, cfg)
    except (UmbraTrigError, ValueError, OverflowError) as exc:
        print(f"umbratrig: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
