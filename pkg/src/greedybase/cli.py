"""Command-line front end.

Every command builds a report dictionary
``{"command", "version", "seed", "inputs", "results"}`` and prints it as
JSON or as indented text.  Rationals are ``{"num", "den"}`` string pairs in
JSON and ``num/den`` in text.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .bounds import (
    InapplicableError,
    bound_comparison_certificate,
    cor_int_certificate,
    fpr_table_for_stabilizer,
    fpr_table_for_subgroup,
    fpr_table_from_class_data,
    greedy4_certificate,
    lemma_q_certificate,
    parse_rational,
    prop_key_certificate,
    qhat,
    rational_json,
)
from .classes import load_class_data
from .files import load_group
from .greedy import greedy_base, greedy_max_search
from .orbits import rank_subdegree_lower_bound, suborbit_profile
from .search import search_until_below

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


class CliError(Exception):
    pass


def _rng(args) -> random.Random:
    return random.Random(args.seed if args.seed is not None else 0)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _report(args, inputs: dict, results: dict) -> dict:
    return {
        "command": args.command,
        "version": __version__,
        "seed": args.seed,
        "inputs": inputs,
        "results": results,
    }


# -- commands -------------------------------------------------------------


def cmd_greedy(args) -> dict:
    g = load_group(args.group)
    inputs = {"group": args.group, "degree": g.degree, "policy": args.policy, "max": args.max}
    if args.max:
        res = greedy_max_search(g, budget=args.budget)
        results = {
            "greedy_max": res.value,
            "nodes": res.nodes,
            "witness": list(res.witness),
            "group_order": str(g.order),
        }
    else:
        trace = greedy_base(g, args.policy, _rng(args))
        results = {"trace": trace.to_json(), "length": len(trace), "group_order": str(g.order)}
    return _report(args, inputs, results)


def cmd_bounds(args) -> dict:
    modes = [args.group is not None, args.class_data is not None]
    if sum(modes) != 1:
        raise CliError("give exactly one of a group file or --class-data")
    inputs = {"c": args.c}
    if args.class_data is not None:
        if args.stabilizer is not None or args.subgroup_file is not None:
            raise CliError("--stabilizer and --subgroup-file need a group file")
        inputs["class_data"] = args.class_data
        table = fpr_table_from_class_data(load_class_data(Path(args.class_data)))
    else:
        g = load_group(args.group)
        inputs["group"] = args.group
        if (args.stabilizer is None) == (args.subgroup_file is None):
            raise CliError("give exactly one of --stabilizer or --subgroup-file")
        if args.stabilizer is not None:
            inputs["stabilizer"] = args.stabilizer
            table = fpr_table_for_stabilizer(g, args.stabilizer, rng=_rng(args))
        else:
            inputs["subgroup_file"] = args.subgroup_file
            h = load_group(args.subgroup_file)
            table = fpr_table_for_subgroup(g, h, rng=_rng(args))
    q = qhat(table, args.c)
    results = {
        "fpr_table": table.to_json(),
        "qhat": rational_json(q),
        "certificate": lemma_q_certificate(q, args.c).to_json(),
    }
    return _report(args, inputs, results)


def cmd_certify(args) -> dict:
    if args.prop_key:
        d, index, q = args.prop_key
        inputs = {"prop_key": {"d": str(d), "index": str(index), "qhat3": rational_json(q)}}
        _require_applicable(q)
        cert = prop_key_certificate(_whole(d, "d"), _whole(index, "index"), q)
    elif args.cor_int:
        m, h_order, g_order, q = args.cor_int
        inputs = {
            "cor_int": {
                "m": str(m),
                "h_order": str(h_order),
                "g_order": str(g_order),
                "qhat3": rational_json(q),
            }
        }
        _require_applicable(q)
        cert = cor_int_certificate(_whole(m, "m"), _whole(h_order, "h_order"), _whole(g_order, "g_order"), q)
    elif args.compare:
        m, s = args.compare
        inputs = {"compare": {"m": str(m), "s_lower_bound": rational_json(s)}}
        cert = bound_comparison_certificate("cor-int", _whole(m, "m"), s, "greedy base size <= 3")
    else:
        n, d1, paired, q = args.greedy4
        inputs = {
            "greedy4": {"n": str(n), "d1": str(d1), "paired_size": str(paired), "qhat4": rational_json(q)}
        }
        _require_applicable(q)
        cert = greedy4_certificate(_whole(n, "n"), _whole(d1, "d1"), _whole(paired, "paired_size"), q)
    return _report(args, inputs, {"certificate": cert.to_json()})


def _whole(v: Fraction, name: str) -> int:
    if v.denominator != 1:
        raise CliError(f"{name} must be an integer")
    return int(v)


def _require_applicable(q: Fraction) -> None:
    if not 0 <= q < 1:
        raise InapplicableError(f"hypothesis inapplicable: need 0 <= qhat < 1, got {q}")


def cmd_rank(args) -> dict:
    arithmetic = args.index is not None or args.rank is not None
    if arithmetic == (args.group is not None):
        raise CliError("give either a group file with --stabilizer, or --index and --rank")
    if arithmetic:
        if args.index is None or args.rank is None:
            raise CliError("--index and --rank go together")
        bound = rank_subdegree_lower_bound(args.index, args.rank)
        inputs = {"index": str(args.index), "rank": args.rank}
        return _report(args, inputs, {"subdegree_lower_bound": rational_json(bound)})
    g = load_group(args.group)
    a = args.stabilizer if args.stabilizer is not None else 0
    profile = suborbit_profile(g, a)
    results = {
        "profile": profile.to_json(),
        "subdegree_lower_bound": rational_json(rank_subdegree_lower_bound(g.degree, profile.rank))
        if profile.rank >= 2 and g.degree >= 2
        else None,
    }
    return _report(args, {"group": args.group, "stabilizer": a}, results)


def cmd_search(args) -> dict:
    g = load_group(args.group)
    h = load_group(args.subgroup)
    for s in h.generators:
        if s.degree != g.degree or s not in g:
            raise CliError("subgroup generator is not in the group")
    out = search_until_below(g, h, args.threshold, args.max_iters, _rng(args), cap=args.budget)
    inputs = {
        "group": args.group,
        "subgroup": args.subgroup,
        "threshold": str(args.threshold),
        "max_iters": args.max_iters,
        "h_order": str(h.order),
    }
    return _report(args, inputs, {"outcome": out.to_json(verbose=args.verbose)})


COMMANDS: dict[str, Callable] = {
    "greedy": cmd_greedy,
    "bounds": cmd_bounds,
    "certify": cmd_certify,
    "rank": cmd_rank,
    "search": cmd_search,
}


# -- parser and output ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=_int, default=None)
    common.add_argument("--jobs", type=_int, default=1, help="worker cap (computation is single-process)")
    common.add_argument("--budget", type=_int, default=10**6, help="search node / coset cap")

    p = argparse.ArgumentParser(
        prog="greedybase", description="Base sizes, greedy bases and base-size certificates"
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("greedy", parents=[common], help="run the greedy algorithm")
    g.add_argument("group", help="group file or fixture:NAME")
    g.add_argument("--policy", choices=("deterministic", "random"), default="deterministic")
    g.add_argument("--max", action="store_true", help="largest greedy base over all runs")

    b = sub.add_parser("bounds", parents=[common], help="fixed point ratios and Q̂")
    b.add_argument("group", nargs="?", help="group file or fixture:NAME")
    b.add_argument("--class-data", help="class-data file instead of a group")
    b.add_argument("--c", type=_int, default=3)
    b.add_argument("--stabilizer", type=_int)
    b.add_argument("--subgroup-file")

    c = sub.add_parser("certify", parents=[common], help="check a certificate from numbers")
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--prop-key", nargs=3, type=_rational, metavar=("D", "INDEX", "QHAT3"))
    mode.add_argument("--cor-int", nargs=4, type=_rational, metavar=("M", "H_ORDER", "G_ORDER", "QHAT3"))
    mode.add_argument(
        "--compare",
        nargs=2,
        type=_rational,
        metavar=("M", "S_LOWER"),
        help="|H ∩ H^g| against a supplied lower bound on S(G,H)",
    )
    mode.add_argument("--greedy4", nargs=4, type=_rational, metavar=("N", "D1", "PAIRED", "QHAT4"))

    r = sub.add_parser("rank", parents=[common], help="suborbits and the rank bound")
    r.add_argument("group", nargs="?", help="group file or fixture:NAME")
    r.add_argument("--stabilizer", type=_int)
    r.add_argument("--index", type=_int)
    r.add_argument("--rank", type=_int)

    s = sub.add_parser("search", parents=[common], help="random search for small |H ∩ H^g|")
    s.add_argument("group")
    s.add_argument("subgroup")
    s.add_argument("--threshold", type=_int, required=True)
    s.add_argument("--max-iters", type=_int, default=1000)
    s.add_argument("--verbose", action="store_true", help="include the sample trace")
    return p


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_rational(v):
                lines.append(f"{pad}{k}: {_fmt_rational(v)}")
            elif isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            sub = _text(item, indent + 1)
            lines.append(f"{pad}-" + (" " + sub[0].strip() if sub else ""))
            lines.extend(sub[1:])
    else:
        lines.append(pad + _scalar(value))
    return lines


def _is_rational(v) -> bool:
    return isinstance(v, dict) and set(v) == {"num", "den"}


def _fmt_rational(v: dict) -> str:
    return v["num"] if v["den"] == "1" else f"{v['num']}/{v['den']}"


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, list):
        return "[" + ", ".join(map(_scalar, v)) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    return "\n".join(_text(report))


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Parse and run; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else EXIT_USAGE), "", ""
    try:
        report = COMMANDS[args.command](args)
    except (CliError, ValueError, KeyError, RuntimeError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        return EXIT_ERROR, "", f"error: {msg}"
    return EXIT_OK, render(report, args.format), ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
