"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 domain error (invalid fan,
Gamma violation, ...), 3 completion failure.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import blowup, cones as gc, fans, projective, semigroups
from .errors import ExtensionFailure, FanValidationError, GammaFanError, ParseError
from .fileio import (
    Overrides,
    parse_config,
    parse_fan,
    parse_ideal,
    serialize_fan,
    serialize_gens,
)
from .polyhedra import HCone
from .scalar import format_scalar, parse_scalar
from .svg import render_slice_svg

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_EXTENSION = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _overrides(args) -> Overrides:
    return Overrides(field=args.field, gamma=args.gamma, discrete=args.discrete)


def _load_fan(args) -> fans.GammaFan:
    return parse_fan(_read(args.fan), _overrides(args))


def _pick(fan: fans.GammaFan, index: int) -> gc.GammaCone:
    if not 0 <= index < len(fan.cones):
        raise gc.DomainError(f"cone index {index} out of range (fan has {len(fan.cones)} cones)")
    return fan.cones[index]


def _point(p) -> str:
    return "(" + ", ".join(format_scalar(x) for x in p) + ")"


# -- subcommands ----------------------------------------------------------------

def cmd_check(args, out):
    fan = _load_fan(args)
    ok, v = fans.validate_fan(fan)
    out.write(f"cones: {len(fan.cones)}\n")
    out.write(f"valid: {'yes' if ok else 'no'}\n")
    if not ok:
        print(f"cones {v.i} and {v.j} violate the fan axiom: {v.reason}", file=sys.stderr)
        return EXIT_DOMAIN
    out.write(f"complete: {'yes' if fans.is_complete(fan, check=False) else 'no'}\n")
    for i, c in enumerate(fan.cones):
        ok_ft, bad = gc.finite_type_check(c)
        line = f"cone {i}: dim {c.dim}, finite type {'yes' if ok_ft else 'no'}"
        if bad:
            line += ", offending vertices " + " ".join(_point(b) for b in bad)
        out.write(line + "\n")
    return EXIT_OK


def cmd_slice(args, out):
    fan = _load_fan(args)
    r = parse_scalar(args.level, fan.gamma.radicand)
    indices = [args.cone] if args.cone is not None else range(len(fan.cones))
    for i in indices:
        s = gc.slice(_pick(fan, i), r)
        out.write(f"cone {i}:\n")
        if s.is_empty:
            out.write("  empty\n")
            continue
        for v in s.vertices():
            out.write(f"  vertex {_point(v)}\n")
        for ray in s.body.rays:
            out.write(f"  ray {_point(ray)}\n")
        for lin in s.body.lineality:
            out.write(f"  line {_point(lin)}\n")
    return EXIT_OK


def cmd_dual(args, out):
    fan = _load_fan(args)
    cone = _pick(fan, args.cone)
    d = cone.hcone.dual()
    for r in d.rays:
        out.write(f"ray {' '.join(format_scalar(x) for x in r[:-1])} | {format_scalar(r[-1])}\n")
    for lin in d.lineality:
        out.write(f"line {' '.join(format_scalar(x) for x in lin[:-1])} | {format_scalar(lin[-1])}\n")
    return EXIT_OK


def cmd_hilbert(args, out):
    fan = _load_fan(args)
    cone = _pick(fan, args.cone)
    gens = semigroups.semigroup_generators(cone.hcone.dual())
    for g in gens:
        out.write(f"{' '.join(str(x) for x in g[:-1])} | {g[-1]}\n")
    return EXIT_OK


def cmd_algebra_gens(args, out):
    fan = _load_fan(args)
    out.write(serialize_gens(semigroups.algebra_generators(_pick(fan, args.cone))))
    return EXIT_OK


def cmd_orbits(args, out):
    fan = _load_fan(args)
    for i, c in enumerate(fan.cones):
        census = gc.special_fiber_census(c)
        out.write(f"cone {i}: {len(census)} components, reduced special fiber: "
                  f"{'yes' if gc.reducedness_flag(c) else 'no'}\n")
        for e in census:
            index = "infinite" if e.index is None else str(e.index)
            out.write(f"  vertex {_point(e.vertex)} index {index}\n")
    return EXIT_OK


def cmd_complete(args, out):
    fan = _load_fan(args)
    out.write(serialize_fan(fans.complete_extension(fan)))
    return EXIT_OK


def cmd_refine_complete(args, out):
    fan = _load_fan(args)
    fans._require_valid(fan)
    out.write(serialize_fan(fans.refine_to_complete(fan)))
    return EXIT_OK


def cmd_normalize_projective(args, out):
    cfg = parse_config(_read(args.config), _overrides(args))
    fan = projective.normalization_fan(cfg)
    out.write(serialize_fan(fan))
    if cfg.shadowed:
        out.write(f"# repeated exponents with larger heights ignored: {' '.join(map(str, cfg.shadowed))}\n")
    for line in projective.orbit_census(cfg).report().splitlines():
        out.write(f"# {line}\n")
    return EXIT_OK


def cmd_blowup(args, out):
    fan = _load_fan(args)
    chart = _pick(fan, args.cone)
    gens = parse_ideal(_read(args.ideal), fan.n, fan.gamma)
    ideal = blowup.InvariantIdeal(chart, gens)
    out.write(serialize_fan(blowup.blowup_subdivision(ideal)))
    if args.subfan:
        sub = parse_fan(_read(args.subfan), _overrides(args))
        ok = blowup.is_U_admissible(ideal, sub.cones)
        out.write(f"# U-admissible: {'yes' if ok else 'no'}\n")
    return EXIT_OK


def cmd_svg(args, out):
    fan = _load_fan(args)
    out.write(render_slice_svg(fan, parse_scalar(args.level, fan.gamma.radicand)))
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write results to this file instead of stdout")
    common.add_argument("--field", help="override the scalar field: Q or Qsqrt:D")
    common.add_argument("--gamma", help="override Gamma: comma-separated generators or `all`")
    common.add_argument("--discrete", action="store_true", help="discrete valuation mode")

    p = argparse.ArgumentParser(prog="gammafan", description="Gamma-admissible fans over rank-one valuation rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def fan_cmd(name, func, help_text, cone=False, cone_optional=False):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("fan", help="fan file (- for stdin)")
        if cone:
            sp.add_argument("--cone", type=int, default=None if cone_optional else 0,
                            help="index of the cone in file order")
        sp.set_defaults(func=func)
        return sp

    fan_cmd("check", cmd_check, "validate a fan and test completeness")
    sp = fan_cmd("slice", cmd_slice, "level-r slices of the cones", cone=True, cone_optional=True)
    sp.add_argument("--level", default="1")
    fan_cmd("dual", cmd_dual, "dual cone of one cone", cone=True)
    fan_cmd("hilbert", cmd_hilbert, "Hilbert basis of the dual cone in M x Z", cone=True)
    fan_cmd("algebra-gens", cmd_algebra_gens, "generators of the algebra of a cone", cone=True)
    fan_cmd("orbits", cmd_orbits, "special fiber components per cone")
    fan_cmd("complete", cmd_complete, "complete fan containing the input")
    fan_cmd("refine-complete", cmd_refine_complete, "complete refinement by facet hyperplanes")
    sp = fan_cmd("blowup", cmd_blowup, "subdivision of a chart by a monomial ideal", cone=True)
    sp.add_argument("ideal", help="ideal file with `u | gamma` lines")
    sp.add_argument("--subfan", help="fan file of faces of the chart to test U-admissibility")
    sp = fan_cmd("svg", cmd_svg, "SVG drawing of a level slice (rank 2)")
    sp.add_argument("--level", default="1")

    sp = sub.add_parser("normalize-projective", parents=[common], help="normalization fan of a weighted configuration")
    sp.add_argument("config", help="configuration file")
    sp.set_defaults(func=cmd_normalize_projective)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.output:
            import io
            out = io.StringIO()
        code = args.func(args, out)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out.getvalue())
        return code
    except ExtensionFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        for i, j in exc.conflicts:
            if j is None:
                print(f"conflict: cone {i} has an unmatched facet", file=sys.stderr)
            else:
                print(f"conflict: cones {i} and {j}", file=sys.stderr)
        return EXIT_EXTENSION
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GammaFanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
