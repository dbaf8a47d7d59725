"""Command-line interface: ``gtrellis <command> [options]``.

Exit codes: 0 success, 1 usage or input error, 2 verification failure or a
section that is not controllable.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .checks import SUITES, run_suites
from .composition import refined_representative_array, schreier_array, solvability_equivalence, x_composition_chain
from .encoder import new_encoder, step, track
from .errors import GTrellisError, InvalidPath, NotControllable, NotInX0, ParseError, VerificationFailed
from .generators import eta_check, representative_array
from .groups import group_from_spec, jordan_holder_factors
from .report import Report, analysis_report
from .search import search_subdirect
from .textio import bundled_names, dump_section, load_bundled, load_section, parse_group, parse_indices

COMMANDS = ("analyze", "verify", "generators", "encode", "track", "compose", "search")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gtrellis", description="Group trellis sections: analysis, generator tables, encoders.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--section", help="section file")
    p.add_argument("--builtin", help=f"bundled section name ({', '.join(bundled_names())})")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    p.add_argument("--machine", action="store_true", help="emit key=value lines")
    p.add_argument("--suite", help=f"comma-separated suites for verify ({','.join(SUITES)})")
    p.add_argument("--input", help="index stream file for encode/track (default stdin)")
    p.add_argument("--states", action="store_true", help="encode: also print the state branch")
    p.add_argument("--refined", action="store_true", help="use the composition-refined generator table")
    p.add_argument("--group", help="search: group file or shorthand such as S3, Z2xZ2, D4")
    p.add_argument("--nonabelian", action="store_true", help="search: keep only nonabelian B")
    p.add_argument("--min-ell", type=int, default=0, help="search: minimum ell")
    p.add_argument("--max-order", type=int, default=None, help="search: maximum |B|")
    p.add_argument("--out", help="search: directory for hit section files")
    return p


def _load(args):
    if args.section and args.builtin:
        raise UsageError("give either --section or --builtin, not both")
    if args.section:
        if not Path(args.section).is_file():
            raise UsageError(f"no such file: {args.section}")
        return load_section(args.section)
    if args.builtin:
        return load_bundled(args.builtin)
    raise UsageError("a section is required (--section FILE or --builtin NAME)")


def _stream(args) -> list[tuple[int, int]]:
    text = Path(args.input).read_text() if args.input else sys.stdin.read()
    return parse_indices(text)


def _table(section, refined: bool):
    return refined_representative_array(section) if refined else representative_array(section)


def cmd_analyze(args, out) -> int:
    doc = _load(args)
    rep = analysis_report(doc.section)
    out.write(rep.render(args.machine))
    return 0


def cmd_verify(args, out) -> int:
    doc = _load(args)
    names = tuple(s.strip() for s in args.suite.split(",")) if args.suite else SUITES
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise UsageError(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)}")
    checks = run_suites(doc.section, names, seed=args.seed)
    summary = {"section": doc.section.name or "(unnamed)", "order_B": doc.section.B.order, "seed": args.seed}
    rep = Report(f"verification of {doc.section.name or 'section'}", summary, checks=checks)
    out.write(rep.render(args.machine))
    return 0 if rep.ok else 2


def cmd_generators(args, out) -> int:
    doc = _load(args)
    table = _table(doc.section, args.refined)
    e = eta_check(table)
    if args.machine:
        lines = [f"{k}={v}" for k, v in e.items()]
        lines += [f"cell.{'.'.join(map(str, key))}={','.join(map(str, reps))}" for key, reps in sorted(table.cells.items())]
        for k, paths in sorted(table.generator_paths.items()):
            lines += [f"generator.{k}.{i}={','.join(map(str, p))}" for i, p in enumerate(paths)]
        out.write("\n".join(lines) + "\n")
        return 0
    out.write(f"generator table for {doc.section.name or 'section'} ({'refined' if args.refined else 'coarse'})\n")
    out.write(f"  eta_B={e['eta_B']} cells_product={e['cells_product']} nontrivial_cells={e['cell_count']}\n")
    for key, reps in sorted(table.cells.items()):
        out.write(f"cell {key}: {' '.join(map(str, reps))}\n")
    for k, paths in sorted(table.generator_paths.items()):
        out.write(f"span {k}:\n")
        for p in paths:
            out.write("  " + " ".join(map(str, p)) + "\n")
    return 0


def cmd_encode(args, out) -> int:
    doc = _load(args)
    sec = doc.section
    table = _table(sec, args.refined)
    st = new_encoder(table)
    for x, line in _stream(args):
        state = st.state_branch()
        try:
            b = step(st, x)
        except NotInX0 as e:
            raise ParseError(str(e), line=line) from None
        out.write(f"{b} {state}\n" if args.states else f"{b}\n")
    return 0


def cmd_track(args, out) -> int:
    doc = _load(args)
    table = _table(doc.section, args.refined)
    items = _stream(args)
    path = [b for b, _ in items]
    try:
        res = track(table, path)
    except InvalidPath as e:
        line = items[e.position][1] if e.position is not None and e.position < len(items) else None
        raise ParseError(str(e), line=line) from None
    verdict = "EXACT" if res.exact else "FAIL"
    if args.machine:
        out.write(f"inputs={','.join(map(str, res.inputs))}\nverdict={verdict}\n")
    else:
        out.write("inputs: " + " ".join(map(str, res.inputs)) + "\n" + verdict + "\n")
    return 0 if res.exact else 2


def cmd_compose(args, out) -> int:
    doc = _load(args)
    sec = doc.section
    xc = x_composition_chain(sec)
    arr = schreier_array(sec)
    solv = solvability_equivalence(sec)
    factors = jordan_holder_factors(sec.B)
    refined = refined_representative_array(sec)
    e = eta_check(refined)
    if args.machine:
        lines = [f"term.{j}.{k}.{s}={g.order}" for (j, k, s), g in xc.terms]
        lines += [f"page.{j}.{k}={n}" for (j, k), n in sorted(arr.page_lengths().items())]
        lines += [
            f"factors={','.join(str(n) for n, _ in factors)}",
            f"chain_length={len(xc)}",
            f"refined_cells={e['cell_count']}",
            f"eta_B={e['eta_B']}",
            f"solvable={'true' if solv['b_solvable'] else 'false'}",
            f"x0_solvable={'true' if solv['x0_solvable'] else 'false'}",
        ]
        out.write("\n".join(lines) + "\n")
        return 0
    out.write(f"composition chain of {sec.name or 'section'} adapted to X_j\n")
    for (j, k, s), g in xc.terms:
        out.write(f"({j},{k},{s}) order={g.order}\n")
    ell = sec.chains.ell
    out.write("page matrix, strict steps per page (column j, row j+k)\n")
    lengths = arr.page_lengths()
    for r in range(ell, -1, -1):
        cells = [str(lengths[(j, r - j)]) if r - j >= 0 else "." for j in range(ell + 1)]
        out.write(f"  j+k={r}: " + " ".join(cells) + "\n")
    out.write("factors: {" + ", ".join(str(n) for n, _ in factors) + "}\n")
    out.write(f"refined cells per epoch: {e['cell_count']} (eta_B={e['eta_B']})\n")
    out.write(f"solvable: B={'yes' if solv['b_solvable'] else 'no'} X0={'yes' if solv['x0_solvable'] else 'no'}\n")
    return 0


def cmd_search(args, out) -> int:
    if not args.group:
        raise UsageError("search needs --group FILE or a shorthand such as S3")
    if Path(args.group).is_file():
        S = parse_group(Path(args.group).read_text())
    else:
        try:
            S = group_from_spec(args.group)
        except ValueError:
            raise UsageError(f"cannot read group {args.group!r}") from None
    hits = search_subdirect(S, max_B_order=args.max_order, nonabelian=args.nonabelian, min_ell=args.min_ell)
    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for i, h in enumerate(hits):
        sec = replace(h.section, name=f"hit{i}")
        line = f"hit {i}: order_B={sec.B.order} ell={h.ell} abelian={'true' if h.abelian else 'false'}"
        if outdir:
            path = outdir / f"hit{i}.sec"
            path.write_text(dump_section(sec, provenance="search hit"))
            line += f" file={path}"
        out.write(line + "\n")
    out.write(f"hits={len(hits)}\n")
    return 0


HANDLERS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "generators": cmd_generators,
    "encode": cmd_encode,
    "track": cmd_track,
    "compose": cmd_compose,
    "search": cmd_search,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    try:
        return HANDLERS[args.command](args, out)
    except UsageError as e:
        print(f"gtrellis: {e}", file=sys.stderr)
        return 1
    except NotControllable as e:
        stable = sorted(e.stable.members) if e.stable is not None else None
        if args.machine:
            out.write(f"controllable=false\nstable={','.join(map(str, stable or []))}\n")
        else:
            out.write(f"not controllable: {e}\nstable subgroup: {stable}\n")
        return 2
    except VerificationFailed as e:
        print(f"gtrellis: verification failed: {e} (witness {e.witness!r})", file=sys.stderr)
        return 2
    except GTrellisError as e:
        print(f"gtrellis: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"gtrellis: {e}", file=sys.stderr)
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
