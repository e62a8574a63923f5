"""Command-line interface.

    bzchambers [--spec PATH|NAME] [--json] SUBCOMMAND [ARGS]

Classes are written as comma-separated coordinates in the basis of the spec file
(``1,-1/2``).  ``decompose`` also accepts effective expressions over prime
labels (``delta=1,D2=1/2``).  Blocks are comma-separated prime labels, with
``""`` or ``-`` for the empty block.

Exit codes: 0 success, 1 a verify property failed, 2 parse or usage error,
3 spec validation error, 4 class not decomposable or not big, 5 unsupported.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .chambers import (
    EnumerationLimit, chamber_of, enumerate_blocks, nef_representative, position_in_chamber,
)
from .checks import run_suite
from .cones import IrrationalRay, psef_cone, qnef_cone
from .errors import BZError, InputError, NotBig, NotDecomposable, Unsupported
from .lattice import ManifoldSpec, format_class, format_number, to_fraction
from .slice import slice_figure, to_csv, to_svg
from .specfile import SpecParseError, SpecValidationError, load_spec
from .specs import BUNDLED, bundled
from .volume import volume, volume_polynomial
from .weyl import (
    chambers_intersect, determination_criteria, int_bzc_subset_wc, wc_subset_bzc,
    weyl_chamber_count, weyl_membership,
)
from .zariski import decompose_class, decompose_effective, is_big, null_locus

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_VALIDATION, EXIT_DECOMPOSE, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4, 5
DEFAULTS = {"spec": "hilb2", "json": False, "seed": 0, "count": 100, "max_blocks": None}


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- argument parsing helpers ---------------------------------------------

def parse_class(text: str, spec: ManifoldSpec) -> tuple:
    parts = [p.strip() for p in text.strip().split(",")]
    if len(parts) != spec.rank:
        raise UsageError(f"class {text.strip()!r} has {len(parts)} coordinates, expected {spec.rank}")
    return tuple(to_fraction(p) for p in parts)


def parse_expression(text: str) -> dict:
    out = {}
    for part in text.strip().split(","):
        label, _, coef = part.partition("=")
        out[label.strip()] = to_fraction(coef.strip())
    return out


def parse_block(text: str, spec: ManifoldSpec) -> tuple:
    text = text.strip()
    if text in ("", "-"):
        return ()
    return tuple(sorted(spec.prime_index(lab.strip()) for lab in text.split(",")))


def resolve_spec(name: str) -> ManifoldSpec:
    """A spec file path, or the name of a bundled spec."""
    return bundled(name) if name in BUNDLED else load_spec(name)


# --- rendering helpers ----------------------------------------------------

def num(x) -> str:
    return format_number(Fraction(x))


def coords(v) -> list:
    return [num(x) for x in v]


def block_labels(spec: ManifoldSpec, block) -> list:
    return [spec.primes[i].label for i in block]


def block_text(spec: ManifoldSpec, block) -> str:
    return "{" + ", ".join(block_labels(spec, block)) + "}"


def class_text(spec: ManifoldSpec, v) -> str:
    return f"{format_class(v, spec.basis_labels)} = ({', '.join(coords(v))})"


def neg_text(spec: ManifoldSpec, negative: dict) -> str:
    if not negative:
        return "0"
    return " + ".join(f"{num(c)}*{spec.primes[i].label}" for i, c in sorted(negative.items()))


def poly_text(spec: ManifoldSpec, block) -> str:
    return volume_polynomial(spec, block).format(spec.basis_labels)


# --- subcommands ------------------------------------------------------------

def cmd_decompose(spec, args):
    if "=" in args.target:
        d = decompose_effective(spec, parse_expression(args.target))
        alpha = tuple(a + b for a, b in zip(d.positive, spec.combination(d.negative)))
    else:
        alpha = parse_class(args.target, spec)
        d = decompose_class(spec, alpha)
    big = is_big(spec, alpha)
    vol = volume(spec, alpha)
    data = {
        "class": coords(alpha),
        "positive": coords(d.positive),
        "negative": {spec.primes[i].label: num(c) for i, c in sorted(d.negative.items())},
        "support": block_labels(spec, d.support),
        "big": big,
        "volume": num(vol),
    }
    text = [
        f"class     {class_text(spec, alpha)}",
        f"P         {class_text(spec, d.positive)}",
        f"N         {neg_text(spec, d.negative)}",
        f"support   {block_text(spec, d.support)}",
        f"big       {'yes' if big else 'no'}",
        f"volume    {num(vol)}",
    ]
    return data, text


def cmd_chambers(spec, args):
    blocks = enumerate_blocks(spec, max_blocks=args.max_blocks)
    crit = determination_criteria(spec)
    determined = len(set(crit.values())) == 1 and crit["pairwise"]
    rows, text = [], [f"{len(blocks)} chambers"]
    for s in blocks:
        rep = nef_representative(spec, s)
        row = {
            "block": block_labels(spec, s),
            "representative": coords(rep),
            "volume_polynomial": poly_text(spec, s),
            "wc_subset_bzc": wc_subset_bzc(spec, s),
            "int_bzc_subset_wc": int_bzc_subset_wc(spec, s),
        }
        rows.append(row)
        text += [
            f"block {block_text(spec, s)}",
            f"  representative     {class_text(spec, rep)}",
            f"  volume polynomial  {row['volume_polynomial']}",
            f"  W_S in BZ_S        {str(row['wc_subset_bzc']).lower()}",
            f"  int BZ_S in W_S    {str(row['int_bzc_subset_wc']).lower()}",
        ]
    text.append(f"numerically determined: {str(determined).lower()}")
    return {"count": len(blocks), "chambers": rows, "numerically_determined": determined,
            "criteria": crit}, text


def cmd_chamber_of(spec, args):
    alpha = parse_class(args.target, spec)
    pos = position_in_chamber(spec, alpha)
    wp = weyl_membership(spec, alpha)
    data = {
        "class": coords(alpha),
        "chamber": block_labels(spec, pos.block),
        "position": pos.kind,
        "null_locus": block_labels(spec, pos.null),
        "weyl": {"kind": wp.kind, "primes": block_labels(spec, wp.indices)},
    }
    weyl = (f"W_{block_text(spec, wp.indices)}" if wp.in_chamber
            else f"on the walls of {block_text(spec, wp.indices)}")
    text = [
        f"class       {class_text(spec, alpha)}",
        f"chamber     {block_text(spec, pos.block)} ({pos.kind})",
        f"null locus  {block_text(spec, pos.null)}",
        f"weyl        {weyl}",
    ]
    return data, text


def cmd_volume(spec, args):
    alpha = parse_class(args.target, spec)
    v = volume(spec, alpha)
    data = {"class": coords(alpha), "volume": num(v)}
    if v:
        data["chamber"] = block_labels(spec, chamber_of(spec, alpha))
    return data, [num(v)]


def cmd_volume_poly(spec, args):
    blocks = ([parse_block(args.block, spec)] if args.block is not None
              else enumerate_blocks(spec, max_blocks=args.max_blocks))
    rows, text = [], []
    for s in blocks:
        poly = volume_polynomial(spec, s)
        row = {"block": block_labels(spec, s), "polynomial": poly.format(spec.basis_labels)}
        line = f"{block_text(spec, s)}: {row['polynomial']}"
        if args.substitute:
            forms = [[to_fraction(x) for x in f.split(",")] for f in args.substitute.split(";")]
            if len(forms) != spec.rank:
                raise UsageError(f"--substitute needs {spec.rank} linear forms")
            names = (args.vars.split(",") if args.vars
                     else [chr(ord("x") + k) if k < 3 else f"y{k}" for k in range(len(forms[0]))])
            sub = poly.substitute(forms, len(forms[0])).format(names, prefix="")
            row["substituted"] = sub
            line += f"  ->  {sub}"
        rows.append(row)
        text.append(line)
    return {"polynomials": rows}, text


def cmd_weyl(spec, args):
    if args.target:
        alpha = parse_class(args.target, spec)
        wp = weyl_membership(spec, alpha)
        data = {"class": coords(alpha), "kind": wp.kind, "primes": block_labels(spec, wp.indices)}
        if wp.in_chamber:
            agree = tuple(wp.indices) == chamber_of(spec, alpha)
            data["bz_chamber_agrees"] = agree
            return data, [f"W_{block_text(spec, wp.indices)}",
                          f"same as BZ chamber: {str(agree).lower()}"]
        return data, [f"on the walls of {block_text(spec, wp.indices)}"]
    count = weyl_chamber_count(spec)
    crit = determination_criteria(spec)
    determined = len(set(crit.values())) == 1 and crit["pairwise"]
    text = [f"simple Weyl chambers: {count}"]
    text += [f"  {k}: {str(v).lower()}" for k, v in crit.items()]
    text.append(f"numerically determined: {str(determined).lower()}")
    return {"count": count, "criteria": crit, "numerically_determined": determined}, text


def cmd_intersect(spec, args):
    sp, s = parse_block(args.sprime, spec), parse_block(args.block, spec)
    result = chambers_intersect(spec, sp, s)
    return ({"sprime": block_labels(spec, sp), "block": block_labels(spec, s), "intersect": result},
            [f"W_{block_text(spec, sp)} meets BZ_{block_text(spec, s)}: {str(result).lower()}"])


def _ray_data(spec, r):
    if isinstance(r, IrrationalRay):
        return {"source": r.source, "exact": False, "slope_squared": num(r.slope_squared),
                "side": r.side, "inner": coords(r.inner), "outer": coords(r.outer)}
    return {"source": r.source, "exact": True, "coords": coords(r.coords), "slope": num(r.slope)}


def _ray_text(spec, r):
    if isinstance(r, IrrationalRay):
        return (f"isotropic ray, slope^2 = {num(r.slope_squared)} (irrational); "
                f"inner {class_text(spec, r.inner)}, outer {class_text(spec, r.outer)}")
    return f"{class_text(spec, r.coords)}  [{r.source}]"


def cmd_cones(spec, args):
    data, text = {}, []
    for cone in (psef_cone(spec), qnef_cone(spec)):
        entry = {"notes": list(cone.notes), "positive_cone": cone.positive_cone}
        text.append(f"{cone.name} cone")
        if cone.rays:
            entry["rays"] = [_ray_data(spec, r) for r in cone.rays]
            text += [f"  ray  {_ray_text(spec, r)}" for r in cone.rays]
        else:
            entry["generators"] = [coords(g) for g in cone.generators]
            entry["inequalities"] = [coords(l) for l in cone.inequalities]
            text += [f"  generator  {class_text(spec, g)}" for g in cone.generators]
            text += [f"  q(., D) >= 0 with q(., D) = {' '.join(coords(l))}" for l in cone.inequalities]
            text += [f"  {n}" for n in cone.notes]
        data[cone.name] = entry
    return data, text


def cmd_slice(spec, args):
    fig = slice_figure(spec)
    body = to_csv(fig) if args.format == "csv" else to_svg(fig)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
        data = {"out": args.out, "format": args.format, "rays": len(fig.rays),
                "chambers": [c.label for c in fig.chambers]}
        return data, [f"wrote {args.out} ({len(fig.rays)} rays, {len(fig.chambers)} chambers)"]
    return None, [body.rstrip("\n")]


def cmd_verify(spec, args):
    results = run_suite(spec, seed=args.seed, count=args.count)
    text, rows = [], []
    for r in results:
        text.append(f"{'PASS' if r.ok else 'FAIL'}  {r.name}")
        text += [f"      {f}" for f in r.failures[:5]]
        rows.append({"property": r.name, "ok": r.ok, "failures": list(r.failures)})
    ok = all(r.ok for r in results)
    text.append(f"{'all properties hold' if ok else 'some properties failed'} "
                f"(seed {args.seed}, count {args.count})")
    return {"seed": args.seed, "count": args.count, "ok": ok, "results": rows}, text, ok


COMMANDS = {
    "decompose": (cmd_decompose, "Boucksom-Zariski decomposition of a class or effective expression"),
    "chambers": (cmd_chambers, "list every chamber with representative, polynomial and Weyl comparison"),
    "chamber-of": (cmd_chamber_of, "chamber, null locus and Weyl position of a big class"),
    "volume": (cmd_volume, "volume of a class"),
    "volume-poly": (cmd_volume_poly, "volume polynomial of one chamber or of all"),
    "weyl": (cmd_weyl, "Weyl chamber count and determination criteria, or the Weyl chamber of a class"),
    "intersect": (cmd_intersect, "does W_S' meet BZ_S"),
    "cones": (cmd_cones, "pseudo-effective and q-nef cones"),
    "slice": (cmd_slice, "rank-2 slice figure as SVG or CSV"),
    "verify": (cmd_verify, "run the randomized property suites"),
}


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--spec", default=d, help="spec file or bundled name (" + ", ".join(BUNDLED) + ")")
    p.add_argument("--json", action="store_true", default=d, help="machine-readable output")
    p.add_argument("--seed", type=int, default=d, help="random seed for verify")
    p.add_argument("--count", type=int, default=d, help="samples per property for verify")
    p.add_argument("--max-blocks", type=int, default=d, dest="max_blocks",
                   help="abort block enumeration beyond this many blocks")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bzchambers", description="Exact Boucksom-Zariski chamber computations.")
    _global_flags(p, suppress=True)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    parsers = {}
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, description=help_text)
        _global_flags(sp, suppress=True)
        parsers[name] = sp
    parsers["decompose"].add_argument("target", help="class '1,1' or expression 'delta=1,D2=1/2'")
    for name in ("chamber-of", "volume"):
        parsers[name].add_argument("target", help="class, e.g. '2,-1'")
    parsers["weyl"].add_argument("target", nargs="?", help="optional class")
    vp = parsers["volume-poly"]
    vp.add_argument("block", nargs="?", help="block as prime labels; all blocks if omitted")
    vp.add_argument("--substitute", help="linear forms for the basis variables, e.g. '1,1;0,-1'")
    vp.add_argument("--vars", help="names of the new variables, e.g. 'x,z'")
    parsers["intersect"].add_argument("sprime", help="block S' (prime labels, '-' for empty)")
    parsers["intersect"].add_argument("block", help="block S")
    sl = parsers["slice"]
    sl.add_argument("--format", choices=("svg", "csv"), default="svg")
    sl.add_argument("--out", help="output file (default: standard output)")
    return p


def _protect_negatives(argv: list) -> list:
    """Keep argparse from reading '-1,0' as an option."""
    return [" " + a if re.match(r"^-\d", a) else a for a in argv]


def _emit(data, text, as_json, out):
    if as_json and data is not None:
        out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(text) + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_protect_negatives(argv))
        for k, v in DEFAULTS.items():
            if not hasattr(args, k) or getattr(args, k) is None:
                setattr(args, k, v)
        spec = resolve_spec(args.spec)
        fn = COMMANDS[args.command][0]
        result = fn(spec, args)
        ok = True
        if len(result) == 3:
            data, text, ok = result
        else:
            data, text = result
        _emit(data, text, args.json, out)
        return EXIT_OK if ok else EXIT_VERIFY
    except SpecValidationError as exc:
        err.write(f"error: invalid spec\n{exc}\n")
        return EXIT_VALIDATION
    except (NotDecomposable, NotBig) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DECOMPOSE
    except Unsupported as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNSUPPORTED
    except (SpecParseError, UsageError, EnumerationLimit, InputError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BZError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
