"""Command-line front end.

Subcommands: ``tables`` (printed-value verification), ``verify`` (tables
plus numerology plus the structural certifications), ``bound-lower`` and
``bound-upper`` (the exact slope bounds with certificates), ``figure``
(deterministic SVG of the bigness cubic) and ``report`` (everything, written
into a directory, with a matplotlib rendering next to the delimited data).

Exit codes: 0 all checks pass (allowlisted discrepancies tolerated and
listed), 1 unexpected mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import bigness, cones, contour, geometry
from .rationals import RationalParseError, decimal_str, parse_rational, ratio_str
from .reporting import Report, Row

Q = Fraction

ENV_OUTDIR = "K3CONES_OUTDIR"
_FORMATS = ("markdown", "json", "csv")


class UsageError(ValueError):
    pass


def _parse_range(text: str) -> tuple[Fraction, Fraction]:
    try:
        lo, _, hi = text.partition(":")
        a, b = parse_rational(lo), parse_rational(hi)
    except RationalParseError as exc:
        raise UsageError(f"bad range {text!r}: {exc}") from exc
    if a >= b:
        raise UsageError(f"range {text!r} is empty")
    return a, b


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# bound reports
# ---------------------------------------------------------------------------

def _lower_doc(res: cones.LowerBoundResult) -> dict:
    cert = res.optimality_certificate
    return {
        "lambda_min": ratio_str(res.lambda_min),
        "lambda_min_decimal": decimal_str(res.lambda_min, 10),
        "vertex": [ratio_str(res.vertex[0]), ratio_str(res.vertex[1])],
        "ratio_min": ratio_str(res.ratio_min),
        "facets": {"u": str(res.facet_u), "v": str(res.facet_v)},
        "alpha_pairing": str(res.alpha_pairing),
        "alpha_self_checks": {k: ratio_str(v)
                              for k, v in res.alpha_self_checks.items()},
        "quadratic_identity": res.quadratic_identity,
        "optimality": {
            "system": [r.render() for r in res.optimality_system.rows],
            "multipliers": [ratio_str(v) for v in cert.multipliers],
            "combined_constant": ratio_str(cert.combined_constant),
            "strict_weight": ratio_str(cert.strict_weight),
        },
        "simplex_cross_check": {
            "status": res.lp_cross_check.status,
            "value": ratio_str(res.lp_cross_check.value),
            "vertex": {k: ratio_str(v)
                       for k, v in sorted(res.lp_cross_check.vertex.items())},
        },
        "notes": res.notes,
    }


def _lower_markdown(res: cones.LowerBoundResult) -> str:
    doc = _lower_doc(res)
    lines = ["# lower bound on the extremal slope", ""]
    lines.append(f"lambda >= {doc['lambda_min']} = {doc['lambda_min_decimal']}")
    lines.append("")
    lines.append(f"- optimal vertex (x, y) = ({doc['vertex'][0]}, {doc['vertex'][1]})"
                 f" with y/x = {doc['ratio_min']}")
    lines.append(f"- nef facets of the restriction: u = {doc['facets']['u']} >= 0, "
                 f"v = {doc['facets']['v']} >= 0 (v/9 gives y >= (1-4x)/3)")
    lines.append(f"- nef pairing from the blown-up family: {doc['alpha_pairing']} >= 0")
    for k, v in doc["alpha_self_checks"].items():
        lines.append(f"- {k} = {v}")
    lines.append(f"- quadratic identity: {doc['quadratic_identity']}")
    lines.append("- optimality certificate (no feasible class has a smaller ratio):")
    for row, mult in zip(doc["optimality"]["system"],
                         doc["optimality"]["multipliers"]):
        lines.append(f"    - multiplier {mult} on [{row}]")
    lines.append(f"- simplex cross-check: {doc['simplex_cross_check']['status']}, "
                 f"minimum {doc['simplex_cross_check']['value']}")
    for n in doc["notes"]:
        lines.append(f"- {n}")
    lines.append("")
    return "\n".join(lines)


def _upper_doc(crit: bigness.CriticalEta, star: bigness.LambdaStarReport,
               lower: Fraction) -> dict:
    return {
        "eta_bracket": [ratio_str(crit.bracket.lo), ratio_str(crit.bracket.hi)],
        "eta_bracket_decimal": crit.eta_decimal(12),
        "lambda_bracket": [ratio_str(crit.lambda_lo), ratio_str(crit.lambda_hi)],
        "lambda_bracket_decimal": crit.lambda_decimal(12),
        "printed_digits": {
            "eta": bigness.PRINTED_ETA_DIGITS,
            "eta_matches": crit.eta_digits_match,
            "lambda": bigness.PRINTED_LAMBDA_DIGITS,
            "lambda_matches": crit.lambda_digits_match,
            "note": "printed constants are correct roundings of the bracketed "
                    "values; as exact bounds the certified statement is "
                    "lambda <= upper bracket endpoint",
        },
        "witness": {
            "eta": ratio_str(crit.witness_eta),
            "eta_decimal": decimal_str(crit.witness_eta, 10),
            "x": ratio_str(crit.witness_x),
            "x_decimal": decimal_str(crit.witness_x, 10),
            "cube_value": ratio_str(crit.witness_value),
            "cube_value_decimal": decimal_str(crit.witness_value, 10),
        },
        "dead_side": {
            "eta": ratio_str(crit.dead_eta),
            "eta_decimal": decimal_str(crit.dead_eta, 10),
            "threshold": ratio_str(crit.dead_threshold),
            "value_at_threshold": decimal_str(crit.dead_value_at_threshold, 6),
            "roots_past_threshold": crit.dead_root_count,
        },
        "selection": crit.selection,
        "sandwich": {
            "lower": ratio_str(lower),
            "lower_below_bracket": lower < crit.lambda_lo,
            "bracket_below_9_5": crit.lambda_hi < Q(9, 5),
        },
        "lambda_star": {
            "eta_min_poly": star.eta_min_poly,
            "lambda_min_poly": star.lambda_min_poly,
            "footnote_value": str(star.footnote_value),
            "abs_difference": repr(star.abs_difference),
            "matches_at_1e-6": star.matches_at_1e6,
            "note": star.note,
        },
        "slope_display_flag": (
            "the slope of the eta-family is 9/5 + eta/10 exactly; a displayed "
            "form with eta/(10x) is inconsistent with the bracketed digits and "
            "is flagged as a suspected display slip"),
    }


def _upper_markdown(doc: dict) -> str:
    lines = ["# upper bound on the extremal slope", ""]
    lines.append(f"eta* in {doc['eta_bracket_decimal']}")
    lines.append(f"lambda* in {doc['lambda_bracket_decimal']}")
    lines.append("")
    pd = doc["printed_digits"]
    lines.append(f"- printed digits {pd['eta']} match the eta* bracket: {pd['eta_matches']}")
    lines.append(f"- printed digits {pd['lambda']} match the lambda* bracket: "
                 f"{pd['lambda_matches']}")
    lines.append(f"- {pd['note']}")
    w = doc["witness"]
    lines.append(f"- live side: at eta = {w['eta_decimal']} the point "
                 f"x = {w['x']} = {w['x_decimal']} has cube "
                 f"{w['cube_value_decimal']} > 0 past the threshold")
    d = doc["dead_side"]
    lines.append(f"- dead side: at eta = {d['eta_decimal']} the cube has "
                 f"{d['roots_past_threshold']} roots past the threshold and value "
                 f"{d['value_at_threshold']} there, so no witness exists")
    s = doc["sandwich"]
    lines.append(f"- sandwich: {s['lower']} < lambda* (exact: "
                 f"{s['lower_below_bracket']}) and lambda* < 9/5 (exact: "
                 f"{s['bracket_below_9_5']})")
    ls = doc["lambda_star"]
    lines.append(f"- minimal polynomial of lambda*: {ls['lambda_min_poly']}")
    lines.append(f"- printed radical evaluates to {ls['footnote_value']}; "
                 f"matches at 1e-6: {ls['matches_at_1e-6']}")
    lines.append(f"- {ls['note']}")
    lines.append(f"- {doc['slope_display_flag']}")
    for sel in doc["selection"]:
        lines.append(f"- selection: {sel}")
    lines.append("")
    return "\n".join(lines)


def _certifications_report(model) -> Report:
    """Structural certifications beyond the tables, one row each."""
    rep = Report("certifications")
    t = "certifications"
    f = bigness.cubic_f(model)
    rep.add(Row.check(t, "cube of the eta-family equals the printed cubic",
                      "equal", "equal" if f == bigness.PRINTED_CUBIC else "diff"))
    rep.add(Row.check(t, "nonzero cubic coefficients", 10, len(f.terms)))
    res = cones.theorem13_bound(model)
    rep.add(Row.check(t, "lower bound", "39/22", ratio_str(res.lambda_min)))
    cert = cones.nodal_infeasibility()
    ok = cert.verify(cones.nodal_system())
    rep.add(Row.check(t, "nodal exclusion certificate replays", "true",
                      "true" if ok else "false"))
    minimal = cones.certificate_support_minimal(cert, cones.nodal_system())
    rep.add(Row.check(t, "nodal certificate support is minimal", "true",
                      "true" if minimal else "false"))
    cor = bigness.corollary_check(model)
    rep.add(Row.check(t, "big-divisor pairing with the ruling", 24,
                      cor["pairing_with_ruling"]))
    rep.add(Row.check(t, "big-divisor conclusion (both signs positive)", "true",
                      "true" if cor["positivity_conclusion_unaffected"] else "false"))
    return rep


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_tables(args) -> int:
    model = geometry.build_model()
    rep = geometry.verify_tables(model)
    _emit(rep.render(args.format), args.out)
    return 0 if rep.ok() else 1


def _cmd_verify(args) -> int:
    model = geometry.build_model()
    combined = Report("full verification")
    tables = geometry.verify_tables(model)
    numer = geometry.numerology(model)
    certs = _certifications_report(model)
    combined.extend(tables.rows)
    combined.extend(numer.rows)
    combined.extend(certs.rows)
    _emit(combined.render(args.format), args.out)
    return 0 if combined.ok() else 1


def _cmd_bound_lower(args) -> int:
    model = geometry.build_model()
    res = cones.theorem13_bound(model)
    if args.format == "json":
        text = json.dumps(_lower_doc(res), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"
    else:
        text = _lower_markdown(res)
    _emit(text, args.out)
    return 0


def _cmd_bound_upper(args) -> int:
    tol = _tolerance(args)
    model = geometry.build_model()
    crit = bigness.critical_eta(model, tol)
    star = bigness.lambda_star_report(model, crit)
    lower = cones.theorem13_bound(model).lambda_min
    doc = _upper_doc(crit, star, lower)
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        text = _upper_markdown(doc)
    _emit(text, args.out)
    ok = (doc["sandwich"]["lower_below_bracket"]
          and doc["sandwich"]["bracket_below_9_5"]
          and crit.eta_digits_match and crit.lambda_digits_match)
    return 0 if ok else 1


def _tolerance(args) -> Fraction:
    try:
        tol = parse_rational(args.tolerance)
    except RationalParseError as exc:
        raise UsageError(str(exc)) from exc
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    return tol


def _ranges(args, defaults):
    xr = _parse_range(args.x_range) if args.x_range else defaults[0]
    yr = _parse_range(args.y_range) if args.y_range else defaults[1]
    return xr, yr


def _cmd_figure(args) -> int:
    model = geometry.build_model()
    xr, yr = _ranges(args, (contour.DEFAULT_X_RANGE, contour.DEFAULT_Y_RANGE))
    cells = args.grid if args.grid else contour.DEFAULT_CELLS
    if cells < 2:
        raise UsageError("grid must be at least 2")
    svg = contour.svg_figure(model, xr, yr, cells)
    _emit(svg, args.out or "figure.svg")
    return 0


def _mpl_figure(model, xr, yr, cells, out_png: Path, out_svg: Path):
    import matplotlib
    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "k3cones"
    import matplotlib.pyplot as plt

    segments = contour.marching_squares(contour.xy_cubic(model), xr, yr, cells)
    fig, ax = plt.subplots(figsize=(6, 7), dpi=100)
    for a, b in segments:
        ax.plot([float(a[0]), float(b[0])], [float(a[1]), float(b[1])],
                color="#cc0000", linewidth=1.0)
    ax.axvline(float(contour.THRESHOLD_LINE_X), color="#0044cc", linewidth=1.0,
               label="x = 0.03577")
    xs = [float(xr[0]), float(xr[1])]
    ax.plot(xs, [float(contour.CRITICAL_SLOPE) * v for v in xs],
            color="#007700", linewidth=1.0, label="y = -0.047976 x")
    ax.plot([0], [0], marker="o", color="black", markersize=4)
    ax.plot([], [], color="#cc0000", label="zero set of the bigness cubic")
    ax.set_xlim(*[float(v) for v in xr])
    ax.set_ylim(*[float(v) for v in yr])
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_png)
    fig.savefig(out_svg, metadata={"Date": None})
    plt.close(fig)


def _cmd_report(args) -> int:
    outdir = Path(args.out or os.environ.get(ENV_OUTDIR, "k3cones-report"))
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {outdir}: {exc}") from exc
    tol = _tolerance(args)
    xr, yr = _ranges(args, (contour.DEFAULT_X_RANGE, contour.DEFAULT_Y_RANGE))
    cells = args.grid if args.grid else contour.DEFAULT_CELLS

    model = geometry.build_model()
    tables = geometry.verify_tables(model)
    numer = geometry.numerology(model)
    certs = _certifications_report(model)
    lower = cones.theorem13_bound(model)
    crit = bigness.critical_eta(model, tol)
    star = bigness.lambda_star_report(model, crit)
    upper_doc = _upper_doc(crit, star, lower.lambda_min)

    (outdir / "tables.md").write_text(tables.to_markdown(), encoding="utf-8")
    (outdir / "tables.json").write_text(tables.to_json(), encoding="utf-8")
    (outdir / "tables.csv").write_text(tables.to_csv(), encoding="utf-8")
    (outdir / "numerology.md").write_text(numer.to_markdown(), encoding="utf-8")
    (outdir / "certifications.md").write_text(certs.to_markdown(), encoding="utf-8")
    (outdir / "bound_lower.md").write_text(_lower_markdown(lower), encoding="utf-8")
    (outdir / "bound_lower.json").write_text(
        json.dumps(_lower_doc(lower), sort_keys=True, indent=2,
                   ensure_ascii=False) + "\n", encoding="utf-8")
    (outdir / "bound_upper.md").write_text(_upper_markdown(upper_doc),
                                           encoding="utf-8")
    (outdir / "bound_upper.json").write_text(
        json.dumps(upper_doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8")

    # delimited region sample and figures
    samples = bigness.sample_region(model, (Q(-1, 10), Q(1, 2)),
                                    (Q(-1, 10), Q(1, 20)), max(args.grid or 25, 2))
    (outdir / "region.csv").write_text(bigness.region_csv(samples),
                                       encoding="utf-8")
    (outdir / "figure.svg").write_text(
        contour.svg_figure(model, xr, yr, cells), encoding="utf-8")
    _mpl_figure(model, xr, yr, cells, outdir / "figure.png",
                outdir / "figure_mpl.svg")

    ok = tables.ok() and numer.ok() and certs.ok()
    summary = [
        "# summary", "",
        f"- tables: {tables.counts()}",
        f"- numerology: {numer.counts()}",
        f"- certifications: {certs.counts()}",
        f"- lower bound: {ratio_str(lower.lambda_min)} = "
        f"{decimal_str(lower.lambda_min, 10)}",
        f"- upper bound bracket: {crit.lambda_decimal(12)}",
        f"- discrepancies (allowlisted): "
        f"{[r.quantity for r in tables.discrepant()]}",
        f"- overall: {'ok' if ok else 'MISMATCH'}", "",
    ]
    (outdir / "summary.md").write_text("\n".join(summary), encoding="utf-8")
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="k3cones",
        description="exact verification of the cotangent-bundle cone "
                    "computations for a degree-two K3 surface")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=_FORMATS, default="markdown")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("tables", help="recompute every printed table entry")
    common(p)
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("verify", help="tables, numerology and certifications")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bound-lower", help="exact lower bound 39/22")
    common(p)
    p.set_defaults(func=_cmd_bound_lower)

    p = sub.add_parser("bound-upper", help="critical parameter and upper bound")
    common(p)
    p.add_argument("--tolerance", default="1e-7",
                   help="bracket width for the critical parameter")
    p.set_defaults(func=_cmd_bound_upper)

    p = sub.add_parser("figure", help="deterministic SVG of the bigness cubic")
    common(p, fmt=False)
    p.add_argument("--grid", type=int, default=None, help="cells per axis")
    p.add_argument("--x-range", default=None, help="lo:hi (rationals)")
    p.add_argument("--y-range", default=None, help="lo:hi (rationals)")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("report", help="write all reports into a directory")
    p.add_argument("--out", default=None,
                   help=f"output directory (default ${ENV_OUTDIR} or "
                        "k3cones-report)")
    p.add_argument("--tolerance", default="1e-7")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--x-range", default=None)
    p.add_argument("--y-range", default=None)
    p.set_defaults(func=_cmd_report)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (bigness.BignessError, cones.ConeError, geometry.GeometryError) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
