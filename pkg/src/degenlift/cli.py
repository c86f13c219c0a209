"""Command-line entry point: ``degenlift <command> [options]``."""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .census import cubic_census, k3_prelog_census, quintic_census
from .errors import DegenliftError, ObstructedAtLowerOrder
from .family import singular_point_at, singular_points_on_edge
from .familyfile import load_shipped, parse_family, serialize_family
from .kuranishi import (
    crossings,
    first_order_residue,
    kuranishi_first_order,
    kuranishi_higher,
    local_frame,
)
from .lifter import lift_solve
from .lines import (
    classify_quintic_line,
    incidence_profile,
    line_through,
    prelog_lines_cubic,
    prelog_lines_K3,
)
from .parallel import parallel_map
from .report import Report, spec_hash
from .sheaf import cohomology_P1, disk_profile, log_normal_degree, profile_cohomology

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_FAILED, EXIT_OBSTRUCTED, EXIT_USAGE = 0, 1, 3, 2


def _read_family(ref):
    """A family-file path, or the name of a shipped family."""
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
        return parse_family(text), text
    spec = load_shipped(ref)
    return spec, serialize_family(spec)


def _parse_point(text):
    return tuple(Fraction(x.strip()) for x in text.split(","))


def _parse_line(text, coords):
    try:
        p, q = text.split(";")
        return line_through(_parse_point(p), _parse_point(q), coords)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--line expects 'p0,p1,...;q0,q1,...': {exc}") from None


def _parse_values(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, _, value = item.partition("=")
        out[key.strip()] = Fraction(value.strip())
    return out


def _component(spec, ref):
    if ref is None:
        return None
    if ref in spec.coords:
        names = spec.require_coordinate_factors()
        if ref not in names:
            raise DegenliftError(f"{ref} is not a linear factor")
        return spec.component(names.index(ref))
    i = int(ref)
    if not 0 <= i < spec.d:
        raise DegenliftError(f"component index {i} out of range 0..{spec.d - 1}")
    return spec.component(i)


def _kind(spec):
    if spec.n == 3 and spec.d == 4:
        return "k3"
    if spec.n == 3 and spec.d == 3:
        return "cubic"
    if spec.n == 4 and spec.d == 5:
        return "quintic"
    return "other"


def _candidate_lines(spec, args, rep):
    """Lines named by --line, else all pre-log lines (of --component, or of every component)."""
    if args.line:
        line = _parse_line(args.line, spec.coords)
        return [line]
    comps = [_component(spec, args.component)] if args.component is not None else spec.components()
    kind = _kind(spec)
    lines = []
    sec = rep.section("search")
    for comp in comps:
        for edge in spec.edges_of(comp):
            locus = singular_points_on_edge(spec, edge)
            if locus.unresolved:
                sec.add(f"unresolved.{edge.label()}", locus.unresolved)
        if kind == "k3":
            found = prelog_lines_K3(spec, comp, allow_incomplete=True)
        elif kind == "cubic":
            found = prelog_lines_cubic(spec, comp, allow_incomplete=True)
        else:
            raise DegenliftError("line search is available for quartic and cubic degenerations in P^3")
        sec.add(f"lines.{comp.label()}", len(found))
        lines.extend(found)
    return lines


# -- commands -------------------------------------------------------------


def cmd_singular_locus(spec, args, rep):
    sec = rep.section("singular_locus")
    total = 0
    for edge in spec.edges():
        if args.chart and args.chart in spec.free_coords(edge):
            edge = edge.with_chart(args.chart)
        locus = singular_points_on_edge(spec, edge)
        key = edge.label()
        sec.add(f"{key}.chart", locus.edge.chart)
        sec.add(f"{key}.points", [p.label() for p in locus.points])
        sec.add(f"{key}.excluded", len(locus.excluded))
        sec.add(f"{key}.unresolved", locus.unresolved)
        total += len(locus.points)
    sec.add("total_rational_points", total)


def cmd_prelog_lines(spec, args, rep):
    lines = _candidate_lines(spec, args, rep)
    sec = rep.section("lines")
    sec.add("count", len(lines))
    for i, line in enumerate(lines):
        prof = incidence_profile(line, spec, line.component)
        sec.add(f"line{i}", str(line))
        sec.add(f"line{i}.component", line.component.label())
        sec.add(f"line{i}.tag", prof.tag)
        hits = sum(1 for _, _, flag in prof.entries if flag == "in S")
        k = log_normal_degree(1, hits)
        sec.add(f"line{i}.log_normal_degree", k)
        sec.add(f"line{i}.cohomology", list(cohomology_P1(k)))


def cmd_kuranishi(spec, args, rep):
    values = _parse_values(args.set)
    if values:
        spec = spec.specialize(values)
    lines = _candidate_lines(spec, args, rep)
    sec = rep.section("kuranishi")
    sec.add("order", args.order)
    sec.add("lines", len(lines))
    for i, line in enumerate(lines):
        tag = f"line{i}"
        sec.add(tag, str(line))
        try:
            if args.order == 1:
                kv = kuranishi_first_order(spec, line)
                if not kv.note:
                    _, pts = crossings(spec, line)
                    for _, _, pt in pts:
                        p = singular_point_at(spec, pt)
                        b = first_order_residue(local_frame(spec, line, p)).b
                        sec.add(f"{tag}.b1{p.label()}", b)
            else:
                kv = kuranishi_higher(spec, line, args.order)
        except ObstructedAtLowerOrder as exc:
            sec.add(f"{tag}.obstructed_at_order", exc.order)
            rep.obstructed = True
            continue
        sec.add(f"{tag}.value", kv.value)
        sec.add(f"{tag}.vanishing_condition", kv.vanishing_condition if not kv.value.is_zero else 0)
        if kv.note:
            sec.add(f"{tag}.note", kv.note)
        if not kv.value.is_zero:
            rep.obstructed = True


def _lift_one(job):
    spec, line, order = job
    return lift_solve(spec, line, order)


def cmd_lift(spec, args, rep):
    values = _parse_values(args.set)
    if values:
        spec = spec.specialize(values)
    lines = _candidate_lines(spec, args, rep)
    results = parallel_map(_lift_one, [(spec, ln, args.order) for ln in lines])
    sec = rep.section("lift")
    sec.add("order", args.order)
    sec.add("lines", len(lines))
    solved = 0
    for i, (line, res) in enumerate(zip(lines, results)):
        tag = f"line{i}"
        sec.add(tag, str(line))
        sec.add(f"{tag}.status", f"{res.status[0]}({res.status[1]})")
        for system in res.systems:
            for name, v in system.values.items():
                sec.add(f"{tag}.{name}", v)
            if system.reduced:
                sec.add(f"{tag}.constraints.order{system.order}", [str(c) for c in system.reduced])
            for name, v in system.forced.items():
                if name not in system.values:
                    sec.add(f"{tag}.{name}", v)
            sec.add(f"{tag}.unique.order{system.order}", system.unique)
        sec.add(f"{tag}.obstruction_ideal", [str(c) for c in res.ideal])
        if res.solved:
            solved += 1
        else:
            rep.obstructed = True
    sec.add("solved", solved)


def cmd_classify(spec, args, rep):
    if not args.line:
        raise DegenliftError("classify needs --line")
    line = _parse_line(args.line, spec.coords)
    prof = classify_quintic_line(line, spec)
    sec = rep.section("classification")
    sec.add("line", str(line))
    sec.add("component", prof.component.label())
    for label, pt, flag in prof.entries:
        sec.add(f"divisor{label}", f"{flag} {pt}" if pt is not None else flag)
    sec.add("strata_met", prof.strata_met)
    sec.add("class", prof.tag)


def cmd_census(args, rep):
    if args.scenario == "quintic":
        report = quintic_census()
    elif args.scenario == "cubic":
        report = cubic_census("toric_planes")
    elif args.scenario == "cubic-plane-quadric":
        report = cubic_census("plane_quadric")
    else:
        if not args.family:
            raise DegenliftError("census k3 needs a family")
        spec, text = _read_family(args.family)
        rep.source_hash = spec_hash(text)
        report = k3_prelog_census(spec, allow_incomplete=True)
    sec = rep.section("census")
    sec.add("scenario", report.scenario)
    for key, value in report.entries.items():
        sec.add(key, value)


def cmd_disk_profile(args, rep):
    profile, dim = disk_profile(args.n)
    sec = rep.section("disk_profile")
    sec.add("n", args.n)
    sec.add("summands", list(profile.summands))
    h0, h1 = profile_cohomology(profile)
    sec.add("h0", h0)
    sec.add("h1", h1)
    sec.add("family_dimension", dim)


def cmd_verify_example(args, rep):
    from .verify import verify_example

    checks = verify_example(seed=args.seed, samples=args.samples)
    sec = rep.section("checks")
    for name, ok, detail in checks:
        sec.add(name, ("pass" if ok else "FAIL") + (f" ({detail})" if detail else ""))
    rep.ok = all(ok for _, ok, _ in checks)


FAMILY_COMMANDS = {
    "singular-locus": cmd_singular_locus,
    "prelog-lines": cmd_prelog_lines,
    "kuranishi": cmd_kuranishi,
    "lift": cmd_lift,
    "classify": cmd_classify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="degenlift", description="Liftability of lines in toric degenerations.")
    parser.add_argument("--version", action="version", version=f"degenlift {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--expect-liftable", action="store_true",
                        help="exit with status 3 when an obstruction is found")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in FAMILY_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("family", help="family file path or shipped family name")
        p.add_argument("--component", help="component index (0-based factor) or coordinate name")
        p.add_argument("--chart", help="chart coordinate for edges where it is free")
        p.add_argument("--line", help="a line through two points, 'p0,p1,...;q0,q1,...'")
        p.add_argument("--order", type=int, default=1)
        p.add_argument("--set", help="parameter values, e.g. a=0,b=2/3")
    p = sub.add_parser("census", parents=[common])
    p.add_argument("scenario", choices=("quintic", "cubic", "cubic-plane-quadric", "k3"))
    p.add_argument("family", nargs="?")
    p = sub.add_parser("disk-profile", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("verify-example", parents=[common])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    return parser


def run(argv):
    """Parse arguments and execute; returns (Report, exit status)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command, list(argv))
    if args.command in FAMILY_COMMANDS:
        if args.order < 1:
            parser.error("--order must be at least 1")
        spec, text = _read_family(args.family)
        rep.source_hash = spec_hash(text)
        FAMILY_COMMANDS[args.command](spec, args, rep)
    elif args.command == "census":
        cmd_census(args, rep)
    elif args.command == "disk-profile":
        cmd_disk_profile(args, rep)
    else:
        cmd_verify_example(args, rep)
    if not rep.ok:
        code = EXIT_FAILED
    elif rep.obstructed and args.expect_liftable:
        code = EXIT_OBSTRUCTED
    else:
        code = EXIT_OK
    return rep, code, args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        rep, code, args = run(argv)
    except (DegenliftError, ValueError, FileNotFoundError) as exc:
        print(f"degenlift: error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(rep.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
