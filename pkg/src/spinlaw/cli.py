"""Command-line surface: every check and computation as a reproducible batch job.

Each subcommand runs one verification or computation, prints its report to
stdout, and always writes the same bytes to an artifact file (``--out``, or
``<command>.<ext>`` inside ``$SPINLAW_OUT`` / the working directory).  Reports
are deterministic: JSON is emitted with sorted keys, two-space indent, a
trailing newline, and no timestamps, so identical configurations produce
byte-identical artifacts.

Exit codes: 0 — all asserted properties hold; 2 — configuration or parse
error (nothing is written); 3 — a checked property failed (the report is
still written, with ``"ok": false``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import charseries as cs
from . import polyring as pr
from . import richardson as rich
from . import spinalg as sa
from . import weightlattice as wl

SCHEMA_VERSION = 1

MONO_VARS = ("s1", "s2", "s3", "s4", "s5", "q", "t")
MONO_VARS_TEX = ("s_1", "s_2", "s_3", "s_4", "s_5", "q", "t")


# -------------------------------------------------------------- rendering


def format_mono(m, names=MONO_VARS, *, tex: bool = False) -> str:
    """Render an exponent vector: ``(0,…,0,2)`` → ``"t^2"``, zeros → ``"1"``."""
    parts = []
    for name, e in zip(names, m):
        if e == 0:
            continue
        if e == 1:
            parts.append(name)
        elif tex:
            parts.append(f"{name}^{{{e}}}")
        else:
            parts.append(f"{name}^{e}")
    if not parts:
        return "1"
    return ("" if tex else "*").join(parts)


def format_laurent(p: cs.LaurentPoly, *, tex: bool = False) -> str:
    """Render a Laurent polynomial: ``1+5t+5t^2+t^3``."""
    if p.is_zero():
        return "0"
    names = MONO_VARS_TEX if tex else MONO_VARS
    out = []
    for m, c in p.sorted_terms():
        mono = format_mono(m, names, tex=tex)
        if mono == "1":
            term = str(c)
        elif c == 1:
            term = mono
        elif c == -1:
            term = "-" + mono
        else:
            term = str(c) + mono
        out.append(term)
    return "+".join(out).replace("+-", "-")


def format_denominator(den, *, tex: bool = False) -> str:
    """Render a factor multiset: ``{t: 11}`` → ``"(1-t)^11"``."""
    if not den:
        return "1"
    names = MONO_VARS_TEX if tex else MONO_VARS
    parts = []
    for m in sorted(den):
        e = den[m]
        base = f"(1-{format_mono(m, names, tex=tex)})"
        if e == 1:
            parts.append(base)
        elif tex:
            parts.append(f"{base}^{{{e}}}")
        else:
            parts.append(f"{base}^{e}")
    return ("" if tex else "*").join(parts)


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_csv(rows: list[dict], columns: list[str]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- parsing


def parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"window must look like 0..1, got {text!r}")
    try:
        window = (int(lo), int(hi))
    except ValueError:
        raise ValueError(f"window bounds must be integers, got {text!r}") from None
    if window[0] > window[1]:
        raise ValueError(f"window is empty: {text!r}")
    return window


def parse_interval(args) -> wl.Interval:
    lo = wl.parse_weight(args.lo)
    hi = wl.parse_weight(args.hi)
    if not wl.leq(lo, hi):
        raise ValueError(
            f"{wl.format_weight(lo)} is not below {wl.format_weight(hi)}"
        )
    return wl.interval(lo, hi)


def parse_specialize(text: str) -> dict:
    """``"s=1,q=1"`` → ``{"s": 1, "q": 1}``; only the value 1 is substitutable."""
    spec = {}
    if not text:
        return spec
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in ("s", "q"):
            raise ValueError(f"bad specialization {item!r} (expected s=1 or q=1)")
        if Fraction(value.strip()) != 1:
            raise ValueError(
                f"unsupported specialization {item!r}: denominators are stored "
                "as factors (1-monomial), which only substitution by 1 preserves"
            )
        spec[name] = 1
    return spec


def parse_modes(text: str) -> list[int]:
    return [int(x) for x in text.split(",")] if text else []


def weight_str(w: wl.Weight) -> str:
    return wl.format_weight(w)


# -------------------------------------------------------------- commands


def cmd_hasse(args):
    window = parse_window(args.window)
    data = wl.hasse_json(window)
    if args.format == "dot":
        return data, True, wl.hasse_dot(window), "dot"
    if args.format == "csv":
        rows = [
            {"kind": "node", "id": n["id"], "tag": n["tag"],
             "level": n["level"], "ht": n["ht"], "dst": ""}
            for n in data["nodes"]
        ] + [
            {"kind": "edge", "id": e["src"], "tag": "", "level": "",
             "ht": "", "dst": e["dst"]}
            for e in data["edges"]
        ]
        return data, True, render_csv(rows, ["kind", "id", "tag", "level", "ht", "dst"]), "csv"
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "hasse",
        "window": list(window),
        "node_count": len(data["nodes"]),
        "edge_count": len(data["edges"]),
        **data,
    }
    return report, True, None, "json"


def cmd_relations(args):
    iv = parse_interval(args)
    rels = rich.build_relations(iv)
    rels.sort(key=lambda r: (r.l, sa.GAMMA_LABELS.index(r.s)))
    rows = [
        {
            "s": r.s,
            "l": r.l,
            "clutter": [weight_str(r.clutter[0]), weight_str(r.clutter[1])],
            "body": pr.format_poly(r.body),
            "straightening_shape": rich.straightening_shape_check(r),
        }
        for r in rels
    ]
    ok = all(row["straightening_shape"] for row in rows)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "relations",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "relation_count": len(rows),
        "clutter_count": len(wl.clutters(iv)),
        "relations": rows,
        "ok": ok,
    }
    if args.format == "csv":
        flat = [
            {
                "s": row["s"],
                "l": row["l"],
                "clutter_lo": row["clutter"][0],
                "clutter_hi": row["clutter"][1],
                "straightening_shape": row["straightening_shape"],
                "body": row["body"],
            }
            for row in rows
        ]
        return report, ok, render_csv(
            flat, ["s", "l", "clutter_lo", "clutter_hi", "straightening_shape", "body"]
        ), "csv"
    return report, ok, None, "json"


def cmd_groebner_check(args):
    iv = parse_interval(args)
    bodies = [r.body for r in rich.build_relations(iv)]
    remainders = pr.buchberger_check(bodies)
    nonzero = sorted(ij for ij, rem in remainders.items() if not rem.is_zero())
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "groebner-check",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "relation_count": len(bodies),
        "pairs_reduced": len(remainders),
        "nonzero_remainders": [list(ij) for ij in nonzero],
        "ok": not nonzero,
    }
    return report, not nonzero, None, "json"


def cmd_fierz_check(args):
    window = parse_window(args.window)
    span = window[1] - window[0]
    modes = parse_modes(args.modes) or list(range(3 * span + 1))
    residues = {}
    for alpha in wl.TAGS:
        for n in modes:
            res = sa.affine_fierz(alpha, n, window)
            residues[f"{alpha}@{n}"] = pr.format_poly(res) if not res.is_zero() else "0"
    ok = all(v == "0" for v in residues.values())
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "fierz-check",
        "window": list(window),
        "modes": modes,
        "identity_count": len(residues),
        "residues": residues,
        "ok": ok,
    }
    return report, ok, None, "json"


def cmd_straightened_check(args):
    iv = parse_interval(args)
    rels = rich.build_relations(iv)
    dims = []
    dims_ok = True
    for k in range(args.k_max + 1):
        std = rich.standard_monomials(iv, k)
        graded = pr.graded_quotient_dim(
            [r.body for r in rels], [wl.apos(w) for w in iv.elements], k
        )
        dims.append({"k": k, "standard": std, "graded": graded})
        dims_ok = dims_ok and std == graded
    remainders = pr.buchberger_check([r.body for r in rels])
    buch_ok = all(rem.is_zero() for rem in remainders.values())
    shapes_ok = all(rich.straightening_shape_check(r) for r in rels)
    ok = dims_ok and buch_ok and shapes_ok
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "straightened-check",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "k_max": args.k_max,
        "relation_count": len(rels),
        "dimensions": dims,
        "dimensions_ok": dims_ok,
        "buchberger_ok": buch_ok,
        "shapes_ok": shapes_ok,
        "ok": ok,
    }
    return report, ok, None, "json"


def cmd_obstructions(args):
    iv = parse_interval(args)
    entries = []
    for e in rich.obstruction_coverage(iv):
        pair = [
            [
                weight_str(ob.outer),
                [weight_str(w) for w in sorted(ob.inner, key=wl.apos)],
            ]
            for ob in e["pair"]
        ]
        entries.append(
            {
                "label": e["label"],
                "element": weight_str(e["element"]),
                "route": e["route"],
                "pair": pair,
            }
        )
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "obstructions",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "pair_count": len(entries),
        "pairs": entries,
        "ok": True,
    }
    if args.format == "csv":
        flat = [
            {
                "label": row["label"],
                "route": row["route"],
                "outer_1": row["pair"][0][0],
                "inner_1": " ".join(row["pair"][0][1]),
                "outer_2": row["pair"][1][0],
                "inner_2": " ".join(row["pair"][1][1]),
            }
            for row in entries
        ]
        return report, True, render_csv(
            flat, ["label", "route", "outer_1", "inner_1", "outer_2", "inner_2"]
        ), "csv"
    return report, True, None, "json"


def cmd_dims(args):
    iv = parse_interval(args)
    rep = rich.dimension_report(iv)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "dims",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "element_count": len(iv.elements),
        **rep,
        "ok": True,
    }
    return report, True, None, "json"


def cmd_character(args):
    iv = parse_interval(args)
    spec = parse_specialize(args.specialize)
    c = cs.character(iv, specialize=spec or None).reduced()
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "character",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "specialize": {k: 1 for k in sorted(spec)},
        "numerator": format_laurent(c.num),
        "denominator": format_denominator(c.den),
        "pole_order": cs.pole_order(c),
        "ok": True,
    }
    if args.series is not None:
        report["series"] = [
            format_laurent(p) for p in c.series(args.series)
        ]
    if args.format == "latex":
        tex = "\\frac{%s}{%s}\n" % (
            format_laurent(c.num, tex=True),
            format_denominator(c.den, tex=True),
        )
        return report, True, tex, "tex"
    return report, True, None, "json"


def cmd_delannoy_check(args):
    ok = cs.delannoy_acceptance(args.r_max, args.k_max)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "delannoy-check",
        "r_max": args.r_max,
        "k_max": args.k_max,
        "rows": [cs.delannoy(n) for n in range(12)],
        "targets": [
            weight_str(cs.j_sequence(r)) for r in range(args.r_max + 1)
        ],
        "ok": ok,
    }
    return report, ok, None, "json"


def cmd_weyl_check(args):
    window = parse_window(args.window)
    hasse = sa.weyl_hasse_check(window)
    orbits = sa.weyl_orbit_check(window)
    edges = sa.generate_hasse(window)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "weyl-check",
        "window": list(window),
        "reflection_graph": hasse,
        "orbit_check": orbits,
        "regenerated_cover_count": len(edges),
        "ok": True,
    }
    return report, True, None, "json"


def cmd_regseq_check(args):
    iv = parse_interval(args)
    if args.d_max < 2:
        raise ValueError("--d-max must be >= 2")
    ok = rich.regular_sequence_check(iv, args.d_max)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "regseq-check",
        "interval": [weight_str(iv.lo), weight_str(iv.hi)],
        "d_max": args.d_max,
        "ok": ok,
    }
    return report, ok, None, "json"


COMMANDS = {
    "hasse": cmd_hasse,
    "relations": cmd_relations,
    "groebner-check": cmd_groebner_check,
    "fierz-check": cmd_fierz_check,
    "straightened-check": cmd_straightened_check,
    "obstructions": cmd_obstructions,
    "dims": cmd_dims,
    "character": cmd_character,
    "delannoy-check": cmd_delannoy_check,
    "weyl-check": cmd_weyl_check,
    "regseq-check": cmd_regseq_check,
}


# ----------------------------------------------------------------- driver


def _add_interval_args(p):
    p.add_argument("--lo", required=True, help="lower endpoint, e.g. (0)@0")
    p.add_argument("--hi", required=True, help="upper endpoint, e.g. (1)@0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinlaw",
        description="Exact checks and characters for the pure-spinor weight poset.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, formats=("json",)):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="artifact path (default: $SPINLAW_OUT or cwd)")
        p.add_argument("--format", choices=formats, default="json")
        return p

    p = add("hasse", "emit the cover diagram of a level window",
            ("json", "dot", "csv"))
    p.add_argument("--window", default="0..0", help="level window, e.g. 0..1")

    p = add("relations", "emit the straightening relations of an interval",
            ("json", "csv"))
    _add_interval_args(p)

    p = add("groebner-check", "reduce all S-pairs of the interval's relations")
    _add_interval_args(p)

    p = add("fierz-check", "verify the bilinear identities vanish on a window")
    p.add_argument("--window", default="0..0", help="level window, e.g. 0..1")
    p.add_argument("--modes", default="", help="comma-separated modes (default: all)")

    p = add("straightened-check",
            "standard monomials vs graded dimensions plus confluence")
    _add_interval_args(p)
    p.add_argument("--k-max", type=int, default=2)

    p = add("obstructions", "enumerate obstruction pairs and their resolutions",
            ("json", "csv"))
    _add_interval_args(p)

    p = add("dims", "chain length, height difference, and pole order")
    _add_interval_args(p)

    p = add("character", "equivariant character of an interval algebra",
            ("json", "latex"))
    _add_interval_args(p)
    p.add_argument("--specialize", default="", help="e.g. s=1,q=1")
    p.add_argument("--series", type=int, default=None,
                   help="also expand the series to this order")

    p = add("delannoy-check", "characters along J vs the Delannoy closed forms")
    p.add_argument("--r-max", type=int, default=4)
    p.add_argument("--k-max", type=int, default=8)

    p = add("weyl-check", "reflection-graph and regenerated-diagram checks")
    p.add_argument("--window", default="0..1", help="level window, e.g. 0..1")

    p = add("regseq-check", "regular-sequence test for the height filtration")
    _add_interval_args(p)
    p.add_argument("--d-max", type=int, default=2)

    return parser


def _artifact_path(args, ext: str) -> str:
    if args.out:
        return args.out
    base = os.environ.get("SPINLAW_OUT", "")
    return os.path.join(base, f"{args.command}.{ext}") if base else f"{args.command}.{ext}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok, text, ext = COMMANDS[args.command](args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except RuntimeError as e:
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "error": str(e),
            "ok": False,
        }
        ok, text, ext = False, None, "json"
    body = text if text is not None else render_json(report)
    path = _artifact_path(args, ext)
    with open(path, "w") as fh:
        fh.write(body)
    sys.stdout.write(body)
    return 0 if ok else 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
