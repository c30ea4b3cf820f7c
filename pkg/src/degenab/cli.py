"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 mathematically inconclusive,
4 internal failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenabError, Inconclusive, UserInputError

SCHEMA = "degenab/1"
EXIT_USER, EXIT_INCONCLUSIVE, EXIT_INTERNAL = 2, 3, 4


@dataclass
class Config:
    truncation_cutoff: Fraction = Fraction(60)
    hull_box_radius: int = 3
    q0: Fraction = Fraction(1, 10)
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.truncation_cutoff <= 0:
            raise UserInputError("cutoff must be positive")
        if self.hull_box_radius < 2:
            raise UserInputError("box radius must be at least 2")
        if not 0 < self.q0 < Fraction(1, 4):
            raise UserInputError("q0 must lie in (0, 1/4)")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UserInputError(f"not a rational number: {text!r}") from exc


def make_config(args) -> Config:
    cutoff = getattr(args, "cutoff", None)
    if cutoff is None:
        cutoff = os.environ.get("DEGENAB_CUTOFF", "60")
    return Config(
        truncation_cutoff=_fraction(str(cutoff)),
        hull_box_radius=getattr(args, "radius", None) or 3,
        q0=_fraction(getattr(args, "q0", None) or "1/10"),
        output=args.output,
        format=args.format,
    )


def _data(args):
    from .degeneration import DegenerationData
    from .lattice import Form, Sublattice
    from .polynomial import parse_int_matrix, parse_poly

    form = Form.parse(args.form)
    y = Sublattice.parse(getattr(args, "y", None) or "X", form.g)
    unit_matrix = parse_int_matrix(args.unit_matrix) if getattr(args, "unit_matrix", None) else None
    alpha = parse_poly(args.alpha, ()).coeff(()) if getattr(args, "alpha", None) else None
    if (unit_matrix is None) != (alpha is None):
        raise UserInputError("--unit-matrix and --alpha go together")
    return DegenerationData.canonical(form, y, unit_matrix, alpha)


# commands -----------------------------------------------------------------


def cmd_delaunay(args, cfg: Config):
    from .delaunay import delaunay_complex, to_svg
    from .lattice import Form, Sublattice
    from .oracle import delaunay_oracle

    form = Form.parse(args.form)
    y = Sublattice.parse(args.mod_y or "X", form.g)
    if args.oracle:
        cx = delaunay_oracle(form, cfg.hull_box_radius, y)
    else:
        cx = delaunay_complex(form, y)
    if args.svg or cfg.format == "svg":
        return to_svg(cx)
    if cfg.format == "text":
        lines = [f"counts {list(cx.counts())} euler {cx.euler()}"]
        lines += [f"dim {c.dim}: " + " ".join(str(v) for v in c.vertices) for c in cx.cells]
        return "\n".join(lines) + "\n"
    return cx.to_json()


def cmd_theta_limit(args, cfg: Config):
    from .degeneration import theta_limit, theta_limit_numeric_check
    from .polynomial import parse_rational_vector

    d = _data(args)
    lam = parse_rational_vector(args.lam)
    if len(lam) != d.g:
        raise UserInputError(f"lambda has {len(lam)} entries, the form has rank {d.g}")
    lim = theta_limit(d, lam)
    if cfg.format == "text":
        cell = " ".join(str(v) for v in lim.cell)
        return f"[{', '.join(lim.display())}]\ncell {cell}\n"
    out = lim.to_json()
    if args.numeric:
        out["numeric"] = theta_limit_numeric_check(d, lam, cfg.q0, min(cfg.truncation_cutoff, 40)).to_json()
    return out


def cmd_theta(args, cfg: Config):
    from .degeneration import theta_truncated
    from .polynomial import parse_rational_vector

    d = _data(args)
    x = tuple(int(v) for v in parse_rational_vector(args.residue))
    if len(x) != d.g:
        raise UserInputError("residue has the wrong length")
    s = theta_truncated(d, args.level, x, cfg.truncation_cutoff)
    if cfg.format == "text":
        return str(s) + "\n"
    return {"schema": SCHEMA, "kind": "theta_series", "level": args.level, "residue": list(x),
            "cutoff": str(cfg.truncation_cutoff), "series": s.to_json()}


def cmd_validate(args, cfg: Config):
    from .degeneration import validate_degeneration_data

    return validate_degeneration_data(_data(args)).to_json()


def cmd_chart(args, cfg: Config):
    from .degeneration import mumford_chart
    from .polynomial import parse_rational_vector

    d = _data(args)
    n = tuple(int(v) for v in parse_rational_vector(args.n)) if args.n else (0,) * d.g
    ch = mumford_chart(d, n)
    if cfg.format == "text":
        return "\n".join(ch.to_json()["relations"]) + "\n"
    return ch.to_json()


def cmd_strata(args, cfg: Config):
    from .strata import build_strata

    r = build_strata(_data(args))
    if args.dot or cfg.format == "dot":
        return r.to_dot()
    if cfg.format == "text":
        types = ", ".join(f"{n} x {t}" for t, n in sorted(r.component_types().items()))
        return f"counts {list(r.counts)}\ncomponents {len(r.components)}: {types}\n"
    return r.to_json()


def cmd_hesse(args, cfg: Config):
    from . import hesse
    from .cubics import hesse_pencil_scan
    from .degeneration import hesse_theta_identities

    if args.scan:
        return {"schema": SCHEMA, "kind": "hesse_scan", "rows": hesse_pencil_scan()}
    if args.k_points:
        pts = hesse.k_points()
        lines = hesse.collinear_triples(pts)
        return {"schema": SCHEMA, "kind": "hesse_k_points", "points": [p.to_json() for p in pts],
                "lines": [[list(p.label) for p in ln.points] for ln in lines],
                "label_sums_zero": all(ln.label_sum() == (0, 0) for ln in lines)}
    if args.identities:
        rep = hesse_theta_identities(args.bound)
        rep["at_l_over_3"] = {str(k): {kk: ([str(c) for c in vv] if isinstance(vv, list) else vv)
                                      for kk, vv in v.items()} for k, v in rep["at_l_over_3"].items()}
        w = rep["at_omega_over_3"]
        w["point"] = [str(c) for c in w["point"]] if w["point"] else None
        return {"schema": SCHEMA, "kind": "hesse_identities", **rep}
    if args.action:
        out = hesse.heisenberg_action_check()
        out["sigma_translation"] = list(out["sigma_translation"] or []) or None
        out["tau_translation"] = list(out["tau_translation"] or []) or None
        return out
    if args.mu is None:
        raise UserInputError("give --mu, --scan, --k-points, --identities or --action")
    return hesse.hesse_report(hesse.HessePoint.parse(args.mu))


def cmd_cubic(args, cfg: Config):
    from .cubics import classify, hilbert_mumford_check
    from .polynomial import parse_poly

    text = args.coeffs
    if "x" in text:
        f = text
    else:
        f = [parse_poly(c, ()).coeff(()) for c in text.split(",")]
    v = classify(f)
    out = v.to_json()
    hm = hilbert_mumford_check(f)
    if hm.destabilized:
        out["certificates"]["destabilizing_1ps"] = hm.to_json()["destabilizing_1ps"][:3]
    if cfg.format == "text":
        return f"{v.cls.value} {v.stability.value} stabilizer {v.stabilizer}\n"
    return out


def cmd_heisenberg(args, cfg: Config):
    from . import heisenberg as hz

    h = hz.AbelianH.parse(args.h)
    checks = {"order", "commutant", "pairing", "linearization"} if args.check == "all" else {args.check}
    out = {"schema": SCHEMA, "kind": "heisenberg", "h": list(h.divisors), "weight": args.weight}
    if "order" in checks:
        out["group_order"] = hz.group_order(h)
        out["expected_order"] = h.order * len(h.elements) ** 2
    if "commutant" in checks:
        res = hz.commutant_is_scalar(h, args.weight)
        out["commutant"] = {"is_scalar": res.is_scalar, "dimension": res.dimension}
    if "pairing" in checks:
        out["pairing_matrix"] = [[str(c) for c in row] for row in hz.pairing_matrix(h)]
    if "linearization" in checks:
        charts = hz.schrodinger_charts(h)
        out["linearization_cocycle"] = hz.linearization_cocycle_check(
            hz.schrodinger_cocycle(charts), charts, hz.default_check_elements(h))
    return out


# plumbing -----------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["json", "svg", "dot", "text"], default="json")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")


def _form_args(p: argparse.ArgumentParser, y: bool = True):
    p.add_argument("--form", required=True, help='Gram matrix, rows separated by ";", e.g. "2,-1;-1,2"')
    if y:
        p.add_argument("--y", help='sublattice Y: "X", a scalar, or a matrix literal')
    p.add_argument("--unit-matrix", help="integer matrix E with u(x) = alpha^(x^T E x)")
    p.add_argument("--alpha", help="the unit alpha, e.g. z5")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degenab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delaunay", help="Delaunay complex of an even positive-definite form")
    p.add_argument("--form", required=True)
    p.add_argument("--mod-y", help="count cells modulo this sublattice")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--json", action="store_true", help="JSON output (default)")
    p.add_argument("--oracle", action="store_true", help="use the lifted-hull oracle")
    p.add_argument("--radius", type=int, help="oracle box radius")
    _common(p)
    p.set_defaults(func=cmd_delaunay)

    p = sub.add_parser("theta-limit", help="q -> 0 limit of the theta coordinates")
    _form_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--numeric", action="store_true", help="also run the numeric check")
    p.add_argument("--q0")
    p.add_argument("--cutoff")
    _common(p)
    p.set_defaults(func=cmd_theta_limit)

    p = sub.add_parser("theta", help="truncated theta series")
    _form_args(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--residue", required=True)
    p.add_argument("--cutoff")
    _common(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("validate", help="check degeneration data for a canonical form")
    _form_args(p)
    _common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("chart", help="Mumford chart presentation (rank <= 2)")
    _form_args(p)
    p.add_argument("--n", help="chart center, e.g. 0,0")
    _common(p)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("strata", help="stratification of the special fiber")
    _form_args(p)
    p.add_argument("--dot", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("hesse", help="Hesse pencil")
    p.add_argument("--mu", help='parameter: a number, "[mu0:mu1]" or "inf"')
    p.add_argument("--scan", action="store_true")
    p.add_argument("--k-points", action="store_true")
    p.add_argument("--identities", action="store_true")
    p.add_argument("--bound", type=int, default=7)
    p.add_argument("--action", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_hesse)

    p = sub.add_parser("cubic", help="classify a plane cubic")
    p.add_argument("--coeffs", required=True, help="polynomial in x0,x1,x2 or 10 comma-separated coefficients")
    _common(p)
    p.set_defaults(func=cmd_cubic)

    p = sub.add_parser("heisenberg", help="finite Heisenberg group checks")
    p.add_argument("--h", required=True, help='elementary divisors, e.g. "3" or "2,2"')
    p.add_argument("--weight", type=int, default=1)
    p.add_argument("--check", choices=["all", "order", "commutant", "pairing", "linearization"], default="all")
    _common(p)
    p.set_defaults(func=cmd_heisenberg)
    return parser


def _emit(result, cfg: Config) -> None:
    text = result if isinstance(result, str) else json.dumps(result, indent=2, ensure_ascii=False) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        _emit(args.func(args, cfg), cfg)
    except Inconclusive as exc:
        print(f"inconclusive: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except UserInputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USER
    except DegenabError as exc:
        print(f"internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
