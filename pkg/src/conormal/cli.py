"""Command line front end: ``conormal [options] COMMAND [command options]``.

Input is read from ``--input FILE`` or standard input.  Reports go to standard
output as JSON (``--format json``, the default) or aligned text tables.  Exit
codes: 0 success, 2 domain or hypothesis error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import BudgetExceededError, ConormalError, DomainError
from .groebner import budget, dimension_degree
from .parsing import parse_input

DEFAULT_SEED = 1729
EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET = 0, 2, 3


def _q(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _qlist(text):
    return [_q(t) for t in text.split(",") if t.strip()]


def _point(text):
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"expected name=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = _q(v)
    return out


def _fmt_q(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _global_options(p, suppress):
    # accepted before or after the command name
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("json", "text"), default=dflt("json"))
    p.add_argument("--seed", type=int, default=dflt(None), help=f"random seed (env CONORMAL_SEED, default {DEFAULT_SEED})")
    p.add_argument("--budget", type=int, default=dflt(None), help="cap on Groebner reduction steps")
    p.add_argument("--input", default=dflt(None), help="input file (default: standard input)")
    p.add_argument("--name", default=dflt(None), help="family or ideal to use (default: the first declared)")


def build_parser():
    p = argparse.ArgumentParser(prog="conormal", description=__doc__.splitlines()[0])
    _global_options(p, suppress=False)
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)
    sub.add_parser("conormal", help="conormal (or relative conormal) ideal")
    sl = sub.add_parser("singular-locus", help="generators plus maximal Jacobian minors")
    sl.add_argument("--absolute", action="store_true", help="include the parameter column")
    sub.add_parser("gauss-map", help="Pluecker coordinates of the Gauss map")
    inc = sub.add_parser("incidence-degree", help="generic degree of the flag incidence cover")
    inc.add_argument("--point", type=_point, default=None, help="base point, e.g. x=0,y=0,s=0")
    sp = sub.add_parser("specialize", help="Lagrangian specialization at a parameter value")
    sp.add_argument("--at", type=_q, required=True)
    co = sub.add_parser("conserve", help="total degree of the specialization at several values")
    co.add_argument("--samples", type=_qlist, required=True)
    ju = sub.add_parser("jump", help="jump criterion at a parameter value")
    ju.add_argument("--at", type=_q, required=True)
    de = sub.add_parser("degree", help="conormal degree along a route")
    de.add_argument("--route", choices=("gauss-fiber", "polar", "euler-obstruction"), required=True)
    sc = sub.add_parser("schottky", help="closed-form invariant table")
    sc.add_argument("--gmax", type=int, required=True)
    return p


def resolve_seed(flag, environ=None):
    environ = os.environ if environ is None else environ
    if flag is not None:
        return flag
    env = environ.get("CONORMAL_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ConormalError(f"CONORMAL_SEED is not an integer: {env!r}") from None
    return DEFAULT_SEED


# ---------------------------------------------------------------------------
# commands; each returns (results dict, warnings list, text tables)


def _session(args):
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return parse_input(text)


def _cmd_conormal(args, seed):
    from .geometry import conormal_ideal, is_conic, relative_conormal_ideal

    F = _session(args).family(args.name)
    I = relative_conormal_ideal(F) if F.parameter else conormal_ideal(F)
    dd = dimension_degree(I, "affine")
    res = {
        "family": F.name,
        "relative": F.parameter is not None,
        "generators": I.canonical_strings(),
        "dimension": dd.dim,
        "conic": is_conic(I, F.ambient.covectors),
    }
    table = [("generator",), *[(g,) for g in res["generators"]]]
    return res, [], [table, [("dimension", "conic"), (dd.dim, res["conic"])]]


def _cmd_singular(args, seed):
    from .geometry import singular_locus

    F = _session(args).family(args.name)
    S = singular_locus(F, relative=not args.absolute)
    dd = dimension_degree(S, "affine")
    res = {
        "family": F.name,
        "relative": not args.absolute,
        "generators": [str(g) for g in S.gens],
        "basis": S.canonical_strings(),
        "dimension": dd.dim,
    }
    return res, [], [[("basis",), *[(g,) for g in res["basis"]]], [("dimension",), (dd.dim,)]]


def _cmd_gauss(args, seed):
    from .geometry import gauss_map_plucker

    F = _session(args).family(args.name)
    G = gauss_map_plucker(F)
    coords = [
        {"name": n, "columns": [F.ambient.positions[c] for c in cols], "form": str(f)}
        for n, cols, f in zip(G.names, G.columns, G.forms)
    ]
    res = {"family": F.name, "coordinates": coords, "convention": "lexicographic column subsets"}
    table = [("name", "columns", "form")] + [(c["name"], ",".join(c["columns"]), c["form"]) for c in coords]
    return res, [], [table]


def _cmd_incidence(args, seed):
    from .geometry import gauss_map_plucker, generic_finiteness_check, incidence_cover

    F = _session(args).family(args.name)
    if F.parameter is not None and args.point is None:
        raise DomainError("the family has a parameter: give a base point with --point")
    G = gauss_map_plucker(F)
    cover, deg = incidence_cover(G, args.point, seed=seed)
    vnames = [f"v{i + 1}" for i in range(F.ambient.n)]
    finite = generic_finiteness_check(cover, vnames, [list(G.names)], seed=seed) if args.point else None
    res = {
        "family": F.name,
        "base_point": None if args.point is None else {k: _fmt_q(v) for k, v in sorted(args.point.items())},
        "generic_degree": deg,
        "route": "gauss-fiber",
    }
    if finite is not None:
        res["generically_finite"] = finite
    table = [("generic_degree", "route"), (deg, "gauss-fiber")]
    return res, [], [table]


def _cycle_dict(cycle):
    return [
        {
            "base": c.base.canonical_strings(),
            "base_dim": c.base_dim,
            "multiplicity": c.multiplicity,
            "support": c.support_strings(),
        }
        for c in cycle.sorted_components()
    ]


def _cmd_specialize(args, seed):
    from .specialization import specialize_cycle

    F = _session(args).family(args.name)
    cyc = specialize_cycle(F, args.at, seed)
    comps = _cycle_dict(cyc)
    res = {"family": F.name, "at": _fmt_q(args.at), "components": comps, "multidegree": cyc.multidegree}
    table = [("multiplicity", "base")] + [(c["multiplicity"], "(" + ", ".join(c["base"]) + ")") for c in comps]
    return res, [], [table]


def _cmd_conserve(args, seed):
    from .specialization import check_degree_conservation

    F = _session(args).family(args.name)
    rep = check_degree_conservation(F, args.samples, seed)
    rows = []
    for s0, tot, det in zip(rep.samples, rep.totals, rep.details):
        rows.append(
            {
                "at": _fmt_q(s0),
                "total": tot,
                "components": [{"base": b, "multiplicity": m, "degree": d} for b, m, d in det.components],
            }
        )
    res = {"family": F.name, "route": rep.route, "samples": rows, "conserved": rep.verdict}
    table = [("at", "total", "components")] + [
        (r["at"], r["total"], " + ".join(f"{c['multiplicity']}*{c['degree']}{c['base']}" for c in r["components"]))
        for r in rows
    ]
    return res, [], [table, [("conserved", "route"), (rep.verdict, rep.route)]]


def _cmd_jump(args, seed):
    from .specialization import check_jump_criterion

    F = _session(args).family(args.name)
    rep = check_jump_criterion(F, args.at, seed)
    res = {
        "family": F.name,
        "at": _fmt_q(args.at),
        "applicable": rep.applicable,
        "verdict": rep.message,
        "holds": rep.verdict,
        "jump_components": [{"base": b, "multiplicity": m} for b, m in rep.jump_components],
        "extra_components": [{"base": b, "multiplicity": m} for b, m in rep.extra_components],
    }
    table = [("applicable", "verdict"), (rep.applicable, rep.message)]
    tables = [table]
    if rep.jump_components:
        tables.append([("component", "multiplicity")] + list(rep.jump_components))
    return res, [], tables


def _cmd_degree(args, seed):
    from .degrees import family_degree

    F = _session(args).family(args.name)
    if F.parameter is not None:
        raise ConormalError("degree expects a family without parameter; use conserve for families")
    rep = family_degree(F, args.route, seed)
    res = {"family": F.name, "route": rep.route, "degree": rep.total}
    return res, list(rep.warnings), [[("degree", "route"), (rep.total, rep.route)]]


def _cmd_schottky(args, seed):
    from .schottky import QUADRIC_CHI_IC, hyperelliptic_g4_pair, schottky_table, theta_with_nodes_g4

    rows = [r.as_dict() for r in schottky_table(args.gmax)]
    res = {"rows": rows, "quadric_chi_ic": dict(sorted(QUADRIC_CHI_IC.items()))}
    if args.gmax >= 4:
        res["genus4_examples"] = {
            "eight_nodes": list(theta_with_nodes_g4(8)),
            "five_nodes": list(theta_with_nodes_g4(5)),
            "hyperelliptic": list(hyperelliptic_g4_pair()),
        }
    head = ("g", "jacobian", "hyperelliptic", "prym", "D", "n0", "chi_ic(k=0,1,2)")
    table = [head] + [
        (
            r["genus"],
            r["jacobian_degree"],
            r["hyperelliptic_degree"],
            "-" if r["prym_degree"] is None else r["prym_degree"],
            "-" if r["D"] is None else r["D"],
            r["n0_threshold"],
            "/".join(map(str, r["chi_ic"])),
        )
        for r in rows
    ]
    quad = [("quadric", "chi_ic")] + sorted(QUADRIC_CHI_IC.items())
    return res, [], [table, quad]


COMMANDS = {
    "conormal": _cmd_conormal,
    "singular-locus": _cmd_singular,
    "gauss-map": _cmd_gauss,
    "incidence-degree": _cmd_incidence,
    "specialize": _cmd_specialize,
    "conserve": _cmd_conserve,
    "jump": _cmd_jump,
    "degree": _cmd_degree,
    "schottky": _cmd_schottky,
}


# ---------------------------------------------------------------------------
# rendering


def render_table(rows):
    rows = [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(len(r) for r in rows))]
    lines = []
    for k, r in enumerate(rows):
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render(report, tables, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    out = [f"command: {report['command']}", f"seed: {report['seed']}", f"status: {report['status']}"]
    for t in tables:
        out.append("")
        out.append(render_table(t))
    if report.get("error"):
        out.append("")
        out.append(f"error: {report['error']}")
    for w in report["warnings"]:
        out.append(f"warning: {w}")
    return "\n".join(out)


def _echo(args):
    parts = [args.command]
    for k in ("at", "samples", "route", "gmax", "point", "absolute"):
        v = getattr(args, k, None)
        if v is None or v is False:
            continue
        if isinstance(v, list):
            v = ",".join(_fmt_q(x) for x in v)
        elif isinstance(v, dict):
            v = ",".join(f"{a}={_fmt_q(b)}" for a, b in sorted(v.items()))
        elif isinstance(v, Fraction):
            v = _fmt_q(v)
        parts.append(f"--{k}" if v is True else f"--{k} {v}")
    return " ".join(parts)


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = resolve_seed(args.seed)
    except ConormalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    report = {"command": _echo(args), "seed": seed, "warnings": []}
    tables, code = [], EXIT_OK
    try:
        with budget(max_steps=args.budget):
            results, warnings, tables = COMMANDS[args.command](args, seed)
        report.update(status="ok", results=results, warnings=warnings)
    except BudgetExceededError as exc:
        code = EXIT_BUDGET
        report.update(status="budget-exceeded", error=str(exc), cap=exc.cap, limit=exc.limit)
    except (ConormalError, OSError) as exc:
        code = EXIT_DOMAIN
        report.update(status="error", error=str(exc))
    print(render(report, tables, args.format), file=stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
