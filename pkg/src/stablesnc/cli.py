"""Command line front end: `snckit SUBCOMMAND FILE [flags]`.

Subcommands:

    check FILE --point NAME      local verdicts at a named point
    hilbert FILE --ideal NAME --cutoff K
    blowup FILE --center "x,y" [--chart I]
    desing FILE [--max-steps N] [--out PATH]
    oracle FILE --suite {hilbert,algebra,transforms}

Reports are JSON (or `--format text`), byte deterministic for a fixed
input file.  Exit codes: 0 success, 1 when a predicate subcommand
answers false (an undecided verdict also exits 1), 2 on input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from itertools import combinations

from . import __version__
from .blowup import make_charts, transform_ideal, transform_triple
from .geometry import (
    comps_through,
    embedding_dim,
    iota,
    kappa,
    smooth_at,
    stable_snc_pair,
    stable_snc_triple,
    stable_snc_variety,
    stratum_key,
)
from .hilbert import hs_function, hs_value_oracle
from .ideals import Ideal
from .pipeline import RestrictionError, desing_stable_snc, verify_run
from .sncfile import SncError, parse_snc


# -- report plumbing --------------------------------------------------


def _frac(x):
    return str(Fraction(x))


def _point_json(coords):
    return [_frac(c) for c in coords]


def report_emit(result, format="json"):
    """Serialize a report; identical input gives identical bytes."""
    if format == "json":
        return (json.dumps(result, sort_keys=True, indent=2) + "\n").encode()
    if format == "text":
        return ("\n".join(_text_lines(result, "")) + "\n").encode()
    raise ValueError(f"unknown format {format!r}")


def _text_scalar(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    return str(v)


def _text_lines(obj, pad):
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(value, pad + "  "))
            else:
                flat = "[]" if isinstance(value, (dict, list)) else _text_scalar(value)
                flat = "{}" if isinstance(value, dict) else flat
                lines.append(f"{pad}{key}: {flat}")
        return lines
    if isinstance(obj, list):
        lines = []
        for value in obj:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}-")
                lines.extend(_text_lines(value, pad + "  "))
            else:
                lines.append(f"{pad}- {_text_scalar(value)}")
        return lines
    return [f"{pad}{_text_scalar(obj)}"]


def _report(command, data, results, **extra):
    out = {
        "command": command,
        "input_digest": hashlib.sha256(data).hexdigest(),
        "mode": extra.pop("mode"),
        "results": results,
        "version": __version__,
    }
    out.update(extra)
    return out


# -- local reports ----------------------------------------------------


def local_report(triple, point):
    """All the point-local verdicts and invariants in one dictionary."""
    point = tuple(Fraction(c) for c in point)
    local = comps_through(triple.components, point)
    k = kappa(triple.components, point)
    v_var = stable_snc_variety(triple.components, point)
    v_pair = stable_snc_pair(triple.components, triple.divisor, point)
    v_triple = stable_snc_triple(triple, point)
    comps = []
    for c in local:
        sm = smooth_at(c.ideal, point)
        comps.append(
            {"name": c.name, "smooth": sm.smooth, "dimension": sm.dimension}
        )
    try:
        key = stratum_key(triple.components, triple.divisor.parts, point)
        stratum = [[key[0][0], list(key[0][1])], key[1]]
    except ValueError:
        stratum = None
    return {
        "point": _point_json(point),
        "kappa": k,
        "e": embedding_dim(triple.components, point) if local else None,
        "components": comps,
        "stable_snc": {
            "variety": v_var.ok,
            "pair": v_pair.ok,
            "triple": v_triple.ok,
        },
        "stratum": stratum,
        "iota": list(iota(triple.components, triple.divisor, point)),
        "reasons": list(v_triple.reasons),
    }


# -- subcommands ------------------------------------------------------


def _cmd_check(f, data, args):
    triple = f.triple()
    point = f.point_named(args.point)
    report = local_report(triple, point)
    out = _report("check", data, [report], mode=f.mode)
    code = 0 if report["stable_snc"]["triple"] is True else 1
    return out, code


def _cmd_hilbert(f, data, args):
    ideal = f.ideal_named(args.ideal)
    point = f.point_named(args.point) if args.point else None
    h = hs_function(ideal, point, cutoff=args.cutoff)
    result = {
        "ideal": args.ideal,
        "point": _point_json(point or (0,) * f.ring.nvars),
        "cutoff": args.cutoff,
        "values": [[k, h.value(k)] for k in range(args.cutoff + 1)],
        "exact_tail": h.exact,
        "stabilization": h.stabilization,
    }
    return _report("hilbert", data, [result], mode=f.mode), 0


def _chart_json(chart, triple):
    return {
        "chart": chart.name,
        "exceptional": str(chart.exceptional()),
        "components": [
            {"name": c.name, "gens": [str(g) for g in c.ideal.gens]}
            for c in triple.components
        ],
        "divisor": [
            {
                "coeff": _frac(p.coeff),
                "gens": [str(g) for g in p.ideal.gens],
                "host": p.host,
            }
            for p in triple.divisor.parts
        ],
        "boundary": [
            {"name": b.name, "gens": [str(g) for g in b.ideal.gens]}
            for b in triple.boundary.comps
        ],
    }


def _cmd_blowup(f, data, args):
    triple = f.triple()
    center = tuple(v.strip() for v in args.center.split(",") if v.strip())
    records, charted = transform_triple(triple, center)
    if args.chart is not None and not 0 <= args.chart < len(charted):
        raise ValueError(
            f"chart index {args.chart} out of range (0..{len(charted) - 1})"
        )
    charts = [
        _chart_json(chart, t)
        for i, (chart, t) in enumerate(charted)
        if args.chart is None or i == args.chart
    ]
    result = {
        "center": list(center),
        "consumed": list(records),
        "charts": charts,
    }
    return _report("blowup", data, [result], mode=f.mode), 0


def _chart_path(path):
    if not path:
        return "<root>"
    return "/".join(f"{seg}-chart" for seg in path.split("/"))


def _tree_json(node):
    out = {
        "path": _chart_path(node.path),
        "records": list(node.records),
    }
    if node.children:
        out["step"] = node.step
        out["center"] = list(node.center)
        out["children"] = [_tree_json(c) for c in node.children]
    return out


def _certificate_json(cert, verified, reasons):
    return {
        "accepted": cert.accepted,
        "verified": verified,
        "verify_reasons": list(reasons),
        "steps": [
            {
                "ordinal": n,
                "path": _chart_path(path),
                "tag": tag,
                "center": list(center),
            }
            for n, path, tag, center in cert.steps
        ],
        "leaves": [
            {
                "path": _chart_path(path),
                "stable": all(ok is True for _, _, ok in faces),
                "faces": [
                    {"point": _point_json(sample), "ok": ok}
                    for _, sample, ok in faces
                ],
            }
            for path, faces in cert.leaf_reports
        ],
        "center_evidence": [
            {
                "path": _chart_path(path),
                "center": list(center),
                "points": [
                    {"point": _point_json(s), "ok": ok, "iso": iso}
                    for s, ok, iso in ev
                ],
            }
            for path, center, ev in cert.center_evidence
        ],
        "tree": _tree_json(cert.tree),
    }


def _cmd_desing(f, data, args):
    triple = f.triple()
    cert = desing_stable_snc(triple, budget=args.max_steps)
    verified, reasons = verify_run(cert)
    summary = {
        "accepted": cert.accepted,
        "verified": verified,
        "steps": len(cert.steps),
        "leaves": len(cert.leaf_reports),
    }
    out = _report(
        "desing",
        data,
        [summary],
        mode=f.mode,
        certificate=_certificate_json(cert, verified, reasons),
    )
    return out, 0 if cert.accepted and verified else 1


# -- the oracle harness -----------------------------------------------


def _corpus(f):
    """Named ideals drawn from the file, for the property suites."""
    ring = f.ring
    named = [(n, Ideal(ring, gens)) for n, gens in f.components]
    for i, (_, gens) in enumerate(f.divisor_terms):
        named.append((f"{f.divisor_name}[{i}]", Ideal(ring, gens)))
    for i, gens in enumerate(f.boundary_terms):
        named.append((f"{f.boundary_name}[{i}]", Ideal(ring, gens)))
    if not named:
        raise ValueError("the file declares no ideals to test")
    return named


def _suite_hilbert(f):
    cases = []
    points = [("origin", (Fraction(0),) * f.ring.nvars)]
    points += [(n, c) for n, c in f.points]
    for name, ideal in _corpus(f):
        for pname, coords in points:
            h = hs_function(ideal, coords, cutoff=4)
            values = [h.value(k) for k in range(5)]
            oracle = [hs_value_oracle(ideal, coords, k) for k in range(5)]
            cases.append(
                {
                    "ideal": name,
                    "point": pname,
                    "values": values,
                    "oracle": oracle,
                    "ok": values == oracle,
                }
            )
    return cases


def _suite_algebra(f):
    cases = []
    corpus = _corpus(f)
    for (na, a), (nb, b) in combinations(corpus, 2):
        colon = a.quotient(b)
        meet = a.intersect(b)
        sat, _ = a.saturate(b)
        checks = {
            "colon_product_inside": a.contains_ideal(colon * b),
            "intersection_inside": a.contains_ideal(meet)
            and b.contains_ideal(meet),
            "saturation_idempotent": sat.saturate(b)[0] == sat,
        }
        cases.append({"pair": [na, nb], **checks, "ok": all(checks.values())})
    if not cases:
        raise ValueError("the algebra suite needs at least two ideals")
    return cases


def _exc_order(poly, chart):
    """Largest k with exceptional^k dividing the substituted polynomial."""
    order = 0
    while poly and all(e[chart.pivot] >= 1 for e in poly.support()):
        poly = poly.ring.from_terms(
            (tuple(a - (i == chart.pivot) for i, a in enumerate(e)), c)
            for e, c in poly.items()
        )
        order += 1
    return order


def _suite_transforms(f):
    ring = f.ring
    cases = []
    centers = list(combinations(ring.names, 2))[:6]
    gens = []
    for name, ideal in _corpus(f):
        for j, g in enumerate(ideal.gens):
            if not g.is_zero() and not g.is_constant():
                gens.append((f"{name}.{j}", g))
    for gname, g in gens[:8]:
        principal = Ideal(ring, [g])
        for center in centers:
            for chart in make_charts(ring, center):
                total, strict = transform_ideal(principal, chart)
                exc = chart.exceptional()
                order = _exc_order(chart.substitute(g), chart)
                product = Ideal(ring, [gg * exc**order for gg in strict.gens])
                cases.append(
                    {
                        "gen": gname,
                        "center": list(center),
                        "chart": chart.name,
                        "order": order,
                        "ok": product == total,
                    }
                )
    if not cases:
        raise ValueError("the transforms suite needs a nonconstant generator")
    return cases


_SUITES = {
    "hilbert": _suite_hilbert,
    "algebra": _suite_algebra,
    "transforms": _suite_transforms,
}


def _cmd_oracle(f, data, args):
    cases = _SUITES[args.suite](f)
    failures = [c for c in cases if not c["ok"]]
    summary = {
        "suite": args.suite,
        "cases": len(cases),
        "failures": len(failures),
        "results": cases,
    }
    return _report("oracle", data, [summary], mode=f.mode), 0 if not failures else 1


# -- dispatch ---------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(
        prog="snckit",
        description="exact local stable normal-crossings toolkit",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("file", help="input .snc file")
        sp.add_argument(
            "--format", choices=("json", "text"), default="json"
        )

    sp = sub.add_parser("check", help="local verdicts at a named point")
    common(sp)
    sp.add_argument("--point", required=True, help="declared point name")

    sp = sub.add_parser("hilbert", help="local Hilbert-Samuel values")
    common(sp)
    sp.add_argument("--ideal", required=True, help="declared ideal name")
    sp.add_argument("--cutoff", type=int, required=True)
    sp.add_argument("--point", help="declared point name (default origin)")

    sp = sub.add_parser("blowup", help="transform the triple in all charts")
    common(sp)
    sp.add_argument(
        "--center", required=True, help="comma-separated center variables"
    )
    sp.add_argument("--chart", type=int, help="restrict to one chart index")

    sp = sub.add_parser("desing", help="run the full pipeline")
    common(sp)
    sp.add_argument("--max-steps", type=int, default=60)
    sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("oracle", help="run a property suite on the file")
    common(sp)
    sp.add_argument("--suite", required=True, choices=sorted(_SUITES))
    return p


_COMMANDS = {
    "check": _cmd_check,
    "hilbert": _cmd_hilbert,
    "blowup": _cmd_blowup,
    "desing": _cmd_desing,
    "oracle": _cmd_oracle,
}


def run_command(argv, stdout=None):
    """Dispatch argv; returns the exit code after emitting the report."""
    stdout = stdout if stdout is not None else sys.stdout.buffer
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        # argparse already printed a usage message
        return 2 if e.code else 0
    try:
        with open(args.file, "rb") as fh:
            data = fh.read()
        f = parse_snc(data.decode("utf-8"))
        report, code = _COMMANDS[args.subcommand](f, data, args)
    except (SncError, RestrictionError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    payload = report_emit(report, args.format)
    if getattr(args, "out", None):
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        stdout.write(payload)
    return code


def main():
    sys.exit(run_command(sys.argv[1:]))
