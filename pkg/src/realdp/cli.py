"""Command line front end.

Exit codes: 0 success, 2 bad parameters, 3 a mathematical cross-check failed.
Integers are written as decimal strings in JSON so that no consumer can
round them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .applications import (anchor_report, cubic_line_split, cubic_quartic_split,
                           cubic_twisted_cubic_split, dp1_quartic_report, dp2_conic_split,
                           dp2_quartic_counts)
from .curves import layer
from .errors import InconsistentConstraints, NoConsistentAnchor, OddParity, RealDPError
from .invariants import admissible_k, gamma_from_n, gw_layer_sum, n_closed, n_recursive
from .lattice import DivisorClass, make_lattice, pair, weyl_orbit
from .real import PRESETS, make_real_structure, quad_solve, real_layer
from .series import n_even_series, n_odd_series

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 2, 3


class CheckFailed(Exception):
    """A cross-check failed; the output is still printed."""


def _str(x: Any) -> Any:
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction, DivisorClass)):
        return str(x)
    if isinstance(x, dict):
        return {k: _str(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_str(v) for v in x]
    return x


def envelope(command: str, degree: int | None, parameters: dict, rows: list[dict],
             summary: dict | None = None, provenance: Sequence[str] = ()) -> dict:
    return {
        "command": command,
        "degree": degree,
        "parameters": _str(parameters),
        "rows": [_str(r) for r in rows],
        "summary": _str(summary or {}),
        "provenance": list(provenance),
        "version": __version__,
    }


def _columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for r in rows:
        cols.extend(k for k in r if k not in cols)
    return cols


def _cell(v: Any) -> str:
    if isinstance(v, list):
        return "; ".join(str(x) for x in v)
    return "" if v is None else str(v)


def render(env: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(env, indent=2) + "\n"
    rows, cols = env["rows"], _columns(env["rows"])
    footer = [f"{k}: {v}" for k, v in env["summary"].items()]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        buf.writelines(f"# {line}\n" for line in footer)
        return buf.getvalue()
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    out += ["| " + " | ".join(_cell(r.get(c)) for c in cols) + " |" for r in rows]
    if footer:
        out.append("")
        out += [f"**{line}**" for line in footer]
    return "\n".join(out) + "\n"


# -- commands -----------------------------------------------------------------

def cmd_invariants(a) -> dict:
    if not 1 <= a.max_m <= 60:
        raise ValueError("--max-m must be in 1..60")
    rows, ok = [], True
    for m in range(1, a.max_m + 1):
        for k in admissible_k(m):
            row: dict[str, Any] = {"m": m, "k": k}
            if a.method in ("closed", "both"):
                row["N_closed" if a.method == "both" else "N"] = n_closed(a.degree, m, k)
            if a.method in ("recursion", "both"):
                row["N_recursion" if a.method == "both" else "N"] = n_recursive(a.degree, m, k)
            n = row.get("N", row.get("N_closed"))
            if a.method == "both":
                row["agree"] = row["N_closed"] == row["N_recursion"]
                ok &= row["agree"]
            row["Gamma"] = gamma_from_n(m, k, n)
            rows.append(row)
    env = envelope("invariants", a.degree, {"max_m": a.max_m, "method": a.method}, rows,
                   {"rows": len(rows), "all_agree": ok} if a.method == "both" else {"rows": len(rows)},
                   ["N_(1,0), N_(2,1) seeds from the table of values for m <= 6"])
    if not ok:
        raise CheckFailed(env)
    return env


def cmd_gw(a) -> dict:
    if not 1 <= a.max_m <= 60:
        raise ValueError("--max-m must be in 1..60")
    rows = [{"m": m, "N_GW": gw_layer_sum(a.degree, m)} for m in range(1, a.max_m + 1)]
    return envelope("gw", a.degree, {"max_m": a.max_m}, rows, {"rows": len(rows)},
                    ["initial layer sums for m <= 3 are stored data"])


def cmd_series(a) -> dict:
    build = n_even_series if a.which == "even" else n_odd_series
    routes = ("formula", "coefficients") if a.route == "both" else (a.route,)
    series = {r: build(a.degree, a.order, r) for r in routes}
    rows, ok = [], True
    for n in range(a.order + 1):
        row: dict[str, Any] = {"n": n}
        for r in routes:
            row[r if a.route == "both" else "coefficient"] = series[r][n]
        if a.route == "both":
            row["agree"] = row["formula"] == row["coefficients"]
            ok &= row["agree"]
        rows.append(row)
    env = envelope("series", a.degree, {"which": a.which, "order": a.order, "route": a.route}, rows,
                   {"terms": len(rows)} | ({"all_agree": ok} if a.route == "both" else {}))
    if not ok:
        raise CheckFailed(env)
    return env


def cmd_applications(a) -> dict:
    rows: list[dict] = []
    if a.which in ("cubic", "all"):
        for d in (3,):
            rows.append({"label": "q(-K) anchor", "degree": d, "qhat": anchor_report(d).qhat})
        rows += [r.as_dict() for r in (cubic_line_split(), cubic_twisted_cubic_split(), cubic_quartic_split())]
    if a.which in ("dp2", "all"):
        rows.append({"label": "q(-K) anchor", "degree": 2, "qhat": anchor_report(2).qhat})
        rows.append(dp2_conic_split().as_dict())
        for k in (1, 3):
            rows.append({"label": "real rational quartics through k real points", "k": k,
                         "count": dp2_quartic_counts(k)})
    if a.which in ("dp1", "all"):
        rows.append(dp1_quartic_report().as_dict())
    return envelope("applications", None, {"which": a.which}, rows, {"rows": len(rows)},
                    ["Welschinger constants of genus-1 classes are quoted data"])


def _parse_vector(text: str) -> tuple[int, ...]:
    parts = [p for p in re.split(r"[\s,()\[\]]+", text) if p]
    return tuple(int(p) for p in parts)


def _structure(a):
    name = a.real_structure
    degree = a.degree
    if name.startswith("aux-d"):
        implied = int(name[-1])
        if degree is not None and degree != implied:
            raise ValueError(f"{name} lives in degree {implied}, not {degree}")
        degree = implied
    if degree is None:
        raise ValueError("--degree is required for this real structure")
    return make_real_structure(make_lattice(degree), name)


def cmd_lattice(a) -> dict:
    L = make_lattice(a.degree)
    R = make_real_structure(L, a.real_structure) if a.real_structure else None
    params: dict[str, Any] = {"what": a.what, "real_structure": a.real_structure}
    if a.what == "lines":
        classes = L.lines
    elif a.what == "roots":
        classes = L.roots
    elif a.what == "layer":
        if a.m is None:
            raise ValueError("layer needs -m")
        rational = not a.all_effective
        params |= {"m": a.m, "rational_only": rational}
        classes = (real_layer(R, a.m, rational) if R else layer(L, a.m, rational)).classes
        R = None
    else:
        if not a.vector:
            raise ValueError("orbit needs --vector")
        params["vector"] = a.vector
        classes = weyl_orbit(L, L.cls(_parse_vector(a.vector)))
    if R is not None:
        classes = tuple(c for c in classes if R.is_anti_invariant(c))
    rows = [{"class": c, "degree": -pair(c, L.K), "square": pair(c, c)} for c in classes]
    return envelope("lattice", a.degree, params, rows, {"count": len(rows)})


def read_constraints(path: str, rank: int) -> list[tuple[DivisorClass, int]]:
    """Parse ``vector residue`` lines; ``#`` starts a comment."""
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, residue = line.rpartition(" ")
            try:
                v = _parse_vector(head)
                r = int(residue)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected 'vector residue', got {raw.strip()!r}")
            if len(v) != rank:
                raise ValueError(f"{path}:{lineno}: vector needs {rank} coordinates, got {len(v)}")
            out.append((DivisorClass(v), r))
    return out


def cmd_qhat(a) -> dict:
    R = _structure(a)
    cons = read_constraints(a.constraints, R.lattice.rank) if a.constraints else []
    sols = quad_solve(R, cons, strict=True)
    rows = [{"solution": i, **{f"q{b}": v for b, v in zip(R.basis, q.values)}} for i, q in enumerate(sols)]
    return envelope("qhat", R.lattice.degree,
                    {"real_structure": R.name, "constraints": len(cons)}, rows,
                    {"solutions": len(sols), "rank": R.minus_rank})


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realdp", description="Signed counts of real rational curves on del Pezzo surfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "csv", "md"), default="json")

    sp = sub.add_parser("invariants", help="table of N_(m,k) and Gamma_(m,k)")
    sp.add_argument("--degree", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--max-m", type=int, default=6)
    sp.add_argument("--method", choices=("recursion", "closed", "both"), default="closed")
    fmt(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("gw", help="layer sums of genus-0 GW invariants")
    sp.add_argument("--degree", type=int, required=True, choices=range(1, 7), metavar="{1..6}")
    sp.add_argument("--max-m", type=int, default=6)
    fmt(sp)
    sp.set_defaults(func=cmd_gw)

    sp = sub.add_parser("series", help="generating series of N_(m,k)")
    sp.add_argument("--which", choices=("even", "odd"), required=True)
    sp.add_argument("--degree", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--order", type=int, default=12)
    sp.add_argument("--route", choices=("formula", "coefficients", "both"), default="formula")
    fmt(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("applications", help="hyperbolic/elliptic splits")
    sp.add_argument("--which", choices=("cubic", "dp2", "dp1", "all"), default="all")
    fmt(sp)
    sp.set_defaults(func=cmd_applications)

    sp = sub.add_parser("lattice", help="lines, roots, layers and Weyl orbits")
    sp.add_argument("what", choices=("lines", "roots", "layer", "orbit"))
    sp.add_argument("--degree", type=int, required=True, choices=range(1, 7), metavar="{1..6}")
    sp.add_argument("-m", type=int)
    sp.add_argument("--real-structure", choices=PRESETS)
    sp.add_argument("--all-effective", action="store_true",
                    help="layer: every effective class, not only rational-curve candidates")
    sp.add_argument("--vector", help="orbit: coordinates in the blow-up basis, e.g. 0,1,0,0,0,0,0")
    fmt(sp)
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("qhat", help="quadratic functions on H2^-")
    sp.add_argument("action", choices=("solve",))
    sp.add_argument("--real-structure", choices=PRESETS, required=True)
    sp.add_argument("--degree", type=int, choices=(1, 2, 3))
    sp.add_argument("--constraints", help="file of 'vector residue' lines")
    fmt(sp)
    sp.set_defaults(func=cmd_qhat)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env = args.func(args)
        code = EXIT_OK
    except CheckFailed as exc:
        env, code = exc.args[0], EXIT_CHECK
        print("realdp: cross-check failed", file=sys.stderr)
    except InconsistentConstraints as exc:
        print(f"realdp: {exc}", file=sys.stderr)
        for v, r in exc.conflict:
            print(f"  conflict: {v} {r}", file=sys.stderr)
        return EXIT_CHECK
    except (ArithmeticError, NoConsistentAnchor, OddParity) as exc:
        print(f"realdp: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ValueError, IndexError, OSError, RealDPError) as exc:
        print(f"realdp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(env, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
