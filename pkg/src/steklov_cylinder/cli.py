"""Command-line front end.

    steklov-cylinder spectrum  --sigma 5
    steklov-cylinder count     --sigma-grid 10:80:4 --mode both
    steklov-cylinder constants --n 4
    steklov-cylinder weyl-fit  --sigma-grid 25:200:4
    steklov-cylinder validate

Exit status: 0 on success, 1 when a validation or cross-check fails,
2 on a usage error (including invalid geometry).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, counting, roots, validation, weyl
from .geometry import CylinderGeometry, GeometryError

SPECTRUM_COLUMNS = ["family", "k", "index", "alpha", "sigma", "multiplicity"]
DEFAULT_FIT_GRID = "25:200:4"


class UsageError(Exception):
    pass


def parse_grid(text: str) -> list[float]:
    """``a:b:steps`` -> ``steps`` log-spaced points from a to b inclusive."""
    try:
        a, b, steps = text.split(":")
        a, b, steps = float(a), float(b), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:steps, got {text!r}") from None
    if not (0 < a <= b) or steps < 1 or (steps == 1 and a != b):
        raise argparse.ArgumentTypeError(f"need 0 < a <= b and steps >= 1, got {text!r}")
    return [float(v) for v in np.geomspace(a, b, steps)]


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="ambient dimension, >= 3 (default 3)")
    common.add_argument("--radius", type=_positive, default=1.0, help="ball radius R (default 1)")
    common.add_argument("--length", type=_positive, default=1.0, help="half-length L (default 1)")
    common.add_argument("--sigma", type=_positive, help="threshold sigma")
    common.add_argument("--sigma-grid", type=parse_grid, help="log-spaced grid a:b:steps")
    common.add_argument("--mode", choices=("phase", "enumerate", "both"), default="both")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for Monte Carlo checks")

    parser = argparse.ArgumentParser(
        prog="steklov-cylinder",
        description="Steklov spectrum of B_R^(n-1) x [-L, L] and its two-term Weyl law.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("spectrum", parents=[common], help="eigenvalues below --sigma")
    sub.add_parser("count", parents=[common], help="N(sigma) at --sigma or over --sigma-grid")
    sub.add_parser("constants", parents=[common], help="Weyl coefficients and edge constants")
    sub.add_parser("weyl-fit", parents=[common], help="least-squares fit of N(sigma) against the Weyl law")
    sub.add_parser("validate", parents=[common], help="run the invariant suites")
    return parser


def _geometry(args) -> CylinderGeometry:
    try:
        return CylinderGeometry(args.n, args.radius, args.length)
    except GeometryError as exc:
        raise UsageError(str(exc)) from None


def _config(args) -> dict:
    return {
        "command": args.command,
        "n": args.n,
        "R": args.radius,
        "L": args.length,
        "sigma": args.sigma,
        "sigma_grid": args.sigma_grid,
        "mode": args.mode,
        "threads": args.threads,
    }


def _sigmas(args, default: str | None = None) -> list[float]:
    if args.sigma_grid is not None:
        return args.sigma_grid
    if args.sigma is not None:
        return [args.sigma]
    if default is not None:
        return parse_grid(default)
    raise UsageError(f"{args.command} needs --sigma or --sigma-grid")


# ---------------------------------------------------------------------------
# commands


def spectrum_records(geom: CylinderGeometry, sigma_max: float, threads: int = 1):
    """Every separable eigenvalue below sigma_max, sorted by sigma.

    The zero mode and the exceptional mode are not part of this table.
    """

    def per_k(k):
        return [r for fam in counting.FAMILIES for r in roots.enumerate_family(k, geom, fam, sigma_max)]

    records = []
    k0 = 0
    chunk = 8 * max(1, threads)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        while True:
            ks = range(k0, k0 + chunk)
            stop = False
            for k, recs in zip(ks, pool.map(per_k, ks)):
                if not recs and counting._beyond_cutoffs(k, geom, sigma_max):
                    stop = True
                    break
                records += recs
            if stop:
                break
            k0 += chunk
    records.sort(key=lambda r: (r.sigma, r.family.value, r.k, r.index))
    return records


def cmd_spectrum(args) -> tuple[list[str], list[dict], int]:
    if args.sigma is None:
        raise UsageError("spectrum needs --sigma")
    geom = _geometry(args)
    rows = [r.as_row() for r in spectrum_records(geom, args.sigma, args.threads)]
    return SPECTRUM_COLUMNS, rows, 0


def cmd_count(args):
    geom = _geometry(args)
    cols = ["sigma"]
    if args.mode in ("phase", "both"):
        cols.append("N_phase")
    if args.mode in ("enumerate", "both"):
        cols.append("N_enumerate")
    cols += ["weyl_prediction", "residual", "normalized_residual"]
    rows = []
    status = 0
    for s in _sigmas(args):
        row = {"sigma": s}
        if args.mode in ("phase", "both"):
            row["N_phase"] = counting.counting_function(geom, s, "phase", args.threads).grand_total
        if args.mode in ("enumerate", "both"):
            row["N_enumerate"] = counting.counting_function(geom, s, "enumerate", args.threads).grand_total
        if args.mode == "both" and row["N_phase"] != row["N_enumerate"]:
            print(f"phase/enumeration mismatch at sigma={s}", file=sys.stderr)
            status = 1
        N = row.get("N_phase", row.get("N_enumerate"))
        pred = weyl.weyl_prediction(geom, s)
        row["weyl_prediction"] = pred
        row["residual"] = N - pred
        row["normalized_residual"] = (N - pred) / s ** (geom.n - 2.25)
        rows.append(row)
    return cols, rows, status


def cmd_constants(args):
    geom = _geometry(args)
    n = geom.n
    w = weyl.weyl_two_term(geom)
    wg = weyl.weyl_geometric_form(geom)
    g = weyl.geometry(geom)
    values = [
        ("lead", w.lead),
        ("sub", w.sub),
        ("lead_geometric", wg.lead),
        ("sub_geometric", wg.sub),
        ("sub_edge_term_negated", weyl.weyl_two_term(geom, edge_sign=-1).sub),
        ("error_exponent", w.error_exponent),
        (f"g_prime_{n - 1}", weyl.g_prime(n - 1)),
        (f"edge_integral_1_{(n - 2) / 2:g}", weyl.edge_integral(1.0, (n - 2) / 2)),
        ("boundary_area", g.area),
        ("edge_measure", g.edge_measure),
        ("curvature_integral", g.curvature_integral),
    ]
    return ["name", "value"], [{"name": k, "value": v} for k, v in values], 0


def fit_weyl(geom: CylinderGeometry, sigmas, threads: int = 1) -> tuple[float, float]:
    """Least-squares coefficients of N against (sigma R)^(n-1), (sigma R)^(n-2)."""
    t = np.array(sigmas) * geom.R
    N = np.array([counting.counting_function(geom, s, "phase", threads).grand_total for s in sigmas], dtype=float)
    A = np.column_stack([t ** (geom.n - 1), t ** (geom.n - 2)])
    coef, *_ = np.linalg.lstsq(A, N, rcond=None)
    return float(coef[0]), float(coef[1])


def cmd_weyl_fit(args):
    geom = _geometry(args)
    lead, sub = fit_weyl(geom, _sigmas(args, DEFAULT_FIT_GRID), args.threads)
    printed = weyl.weyl_two_term(geom)
    negated = weyl.weyl_two_term(geom, edge_sign=-1)
    rows = []
    for name, fitted, p, q in (("lead", lead, printed.lead, negated.lead), ("sub", sub, printed.sub, negated.sub)):
        rows.append({
            "coefficient": name,
            "fitted": fitted,
            "predicted": p,
            "relative_error": abs(fitted - p) / abs(p),
            "predicted_edge_term_negated": q,
            "relative_error_edge_term_negated": abs(fitted - q) / abs(q),
        })
    return list(rows[0]), rows, 0


def cmd_validate(args):
    results = validation.run_all(args.seed)
    rows = [{"module": r.module, "check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)} passed, {len(failed)} failed", file=sys.stderr)
    for r in failed:
        print(f"FAIL {r.module}.{r.name}: {r.detail}", file=sys.stderr)
    return ["module", "check", "passed", "detail"], rows, 1 if failed else 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "count": cmd_count,
    "constants": cmd_constants,
    "weyl-fit": cmd_weyl_fit,
    "validate": cmd_validate,
}


# ---------------------------------------------------------------------------
# output


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(args, columns: list[str], rows: list[dict]) -> str:
    if args.format == "json":
        doc = {
            "config": _config(args),
            "results": rows,
            "provenance": {"version": __version__, "seed": args.seed},
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(row[k]) for k in columns})
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        columns, rows, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    text = render(args, columns, rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"steklov-cylinder: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
