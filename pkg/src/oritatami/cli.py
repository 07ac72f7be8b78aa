"""Command-line front end.

Subcommands:
    fold <system-file> [--mode enumerate|sample|first] [--rng-seed N]
                       [--trace out.tsv] [--svg out.svg]
    run-nfa <nfa-file> --word <letters> [--mode enumerate|sample]
                       [--rng-seed N] [--report out.txt]
    compile <nfa-file> --word <letters> --out <file>
    check-bricks <defs-file> <env-catalog>
    stats <nfa-file> --word-len N

Exit codes: 0 success / ACCEPT, 1 REJECT (or all-branch dead end / closure
failure), 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from . import bricks, harness, sysfile
from .folding import BranchBudgetExceeded, fold_all
from .nfa import parse_nfa_file, prepare
from .render import render_svg
from .sysfile import format_seed_stanza, parse_system_file
from .seed import build_seed


def _tokenize_word(raw: str, alphabet: tuple[str, ...]) -> list[str]:
    """Split a word argument into letters: whitespace/commas first, then greedy
    longest-match against the alphabet for glued multi-character letters."""
    letters: list[str] = []
    for chunk in raw.replace(",", " ").split():
        if chunk in alphabet:
            letters.append(chunk)
            continue
        rest = chunk
        by_length = sorted(alphabet, key=len, reverse=True)
        while rest:
            for letter in by_length:
                if rest.startswith(letter):
                    letters.append(letter)
                    rest = rest[len(letter) :]
                    break
            else:
                raise ValueError(f"cannot split {chunk!r} into alphabet letters")
    return letters


def _cmd_fold(args) -> int:
    system = parse_system_file(args.system)
    outcomes = fold_all(system, args.mode, rng=args.rng_seed)
    first = outcomes[0]
    print(f"terminal conformations: {len(outcomes)}")
    print(f"completed: {sum(o.completed for o in outcomes)}")
    print(f"energy of first terminal: {-len(first.conformation.bonds)}")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(sysfile.format_trace(first.conformation, len(system.seed)))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(first.conformation))
    return 0 if any(o.completed for o in outcomes) else 1


def _cmd_run_nfa(args) -> int:
    nfa, state_codes, letter_codes = parse_nfa_file(args.nfa)
    machine, code = prepare(nfa, state_codes, letter_codes)
    word = _tokenize_word(args.word, machine.alphabet) if args.word else []
    result = bricks.run_word(machine, code, word, mode=args.mode, rng=args.rng_seed)
    report = bricks.format_report(machine, code, word, result)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report)
    print(report.rstrip("\n").splitlines()[-1])
    return 0 if result.accepted else 1


def _cmd_compile(args) -> int:
    nfa, state_codes, letter_codes = parse_nfa_file(args.nfa)
    machine, code = prepare(nfa, state_codes, letter_codes)
    word = _tokenize_word(args.word, machine.alphabet) if args.word else []
    layout, conformation = build_seed(machine, code, word)
    stanza = (
        f"# seed for {len(machine.transitions)}-slot machine, "
        f"word of {len(word)} letters plus end marker\n"
        f"# horizontal arm {len(layout.horizontal)} beads, "
        f"vertical arm {len(layout.vertical)} beads\n"
    ) + format_seed_stanza(conformation)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(stanza)
    print(f"wrote {len(conformation)} seed beads to {args.out}")
    return 0


def _cmd_check_bricks(args) -> int:
    with open(args.defs, "r", encoding="utf-8") as fh:
        defs = harness.parse_submodules(fh.read())
    with open(args.catalog, "r", encoding="utf-8") as fh:
        envs = harness.parse_environments(fh.read())
    try:
        auto = harness.explore_closure(defs, envs)
    except harness.ClosureViolation as exc:
        print(f"closure violation: {exc}", file=sys.stderr)
        return 1
    print(harness.format_automaton(auto), end="")
    if auto.failures:
        return 1
    print(f"closed: {len(auto.environments)} environments, {len(auto.transitions)} transitions")
    return 0


def _cmd_stats(args) -> int:
    nfa, state_codes, letter_codes = parse_nfa_file(args.nfa)
    machine, code = prepare(nfa, state_codes, letter_codes)
    n, m = code.state_bits, code.letter_bits
    total = bricks.step_count(machine, code, args.word_len)
    print(f"transitions (n): {n}")
    print(f"letter bits (m): {m}")
    print(f"periods: {args.word_len + 1}")
    print(f"zigzags per period: {4 * n + 2 * m + 2}")
    print(f"cells per zigzag row: {2 * n}")
    print(f"total cells: {total}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oritatami",
        description="Fold oritatami systems and run the brick-level automaton architecture.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fold", help="fold a system file")
    p.add_argument("system")
    p.add_argument("--mode", choices=("enumerate", "sample", "first"), default="enumerate")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--trace", help="write a TSV fold trace here")
    p.add_argument("--svg", help="write an SVG drawing here")
    p.set_defaults(func=_cmd_fold)

    p = sub.add_parser("run-nfa", help="run the brick machine on a word")
    p.add_argument("nfa")
    p.add_argument("--word", default="")
    p.add_argument("--mode", choices=("enumerate", "sample"), default="enumerate")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--report", help="write the full run report here")
    p.set_defaults(func=_cmd_run_nfa)

    p = sub.add_parser("compile", help="emit the Gamma-seed stanza for a machine and word")
    p.add_argument("nfa")
    p.add_argument("--word", default="")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("check-bricks", help="fold submodules in declared environments")
    p.add_argument("defs")
    p.add_argument("catalog")
    p.set_defaults(func=_cmd_check_bricks)

    p = sub.add_parser("stats", help="print the brick-cell count for a word length")
    p.add_argument("nfa")
    p.add_argument("--word-len", type=int, required=True)
    p.set_defaults(func=_cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes.
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, BranchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (harness.UnexpectedFold, harness.NondeterministicBrick) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
