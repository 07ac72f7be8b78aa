"""Line-oriented text formats for folding systems and fold traces.

System file directives (one per line, ``#`` starts a comment):

    delay <int>
    arity <int>
    rule <beadA> <beadB>
    seed <x> <y> <bead>            # path order
    seedbond <i> <j>               # 1-based conformation indices
    transcript <bead> <bead> ...
    repeat <count> <bead> ... <bead>

The fold trace is TSV, one line per stabilized transcript bead:
index (1-based over the whole conformation, seed included), bead type,
x, y, and the bond partner indices joined by ``;``.
"""

from __future__ import annotations

from typing import Iterable

from .folding import Conformation, OritatamiSystem, RuleSet, validate_conformation


class SystemFileError(ValueError):
    pass


def parse_seed_block(lines: Iterable[str]) -> Conformation:
    """Build a conformation from ``seed``/``seedbond`` lines alone, checking
    geometry but not rule validity (callers supply the rule set later)."""
    points: list[tuple[int, int]] = []
    beads: list[str] = []
    bonds: list[tuple[int, int]] = []
    for line in lines:
        tokens = line.split()
        try:
            if tokens[0] == "seed":
                x, y, bead = tokens[1:]
                points.append((int(x), int(y)))
                beads.append(bead)
            elif tokens[0] == "seedbond":
                i, j = tokens[1:]
                bonds.append((int(i) - 1, int(j) - 1))
            else:
                raise SystemFileError(f"unexpected directive {tokens[0]!r} in seed block")
        except SystemFileError:
            raise
        except ValueError:
            raise SystemFileError(f"malformed seed line {line!r}") from None
    if not points:
        raise SystemFileError("seed block declares no beads")
    conformation = Conformation.build(points, beads, bonds)
    try:
        validate_conformation(conformation)
    except ValueError as exc:
        raise SystemFileError(str(exc)) from None
    return conformation


def _tokenized_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_system(text: str) -> OritatamiSystem:
    delay = arity = None
    rules: list[tuple[str, str]] = []
    seed_points: list[tuple[int, int]] = []
    seed_beads: list[str] = []
    seed_bonds: list[tuple[int, int]] = []
    transcript: list[str] = []

    for lineno, tokens in _tokenized_lines(text):
        key, args = tokens[0], tokens[1:]
        try:
            if key == "delay":
                (delay,) = args
                delay = int(delay)
            elif key == "arity":
                (arity,) = args
                arity = int(arity)
            elif key == "rule":
                a, b = args
                rules.append((a, b))
            elif key == "seed":
                x, y, bead = args
                seed_points.append((int(x), int(y)))
                seed_beads.append(bead)
            elif key == "seedbond":
                i, j = args
                seed_bonds.append((int(i) - 1, int(j) - 1))
            elif key == "transcript":
                transcript.extend(args)
            elif key == "repeat":
                count = int(args[0])
                if count < 0 or not args[1:]:
                    raise ValueError
                transcript.extend(list(args[1:]) * count)
            else:
                raise SystemFileError(f"line {lineno}: unknown directive {key!r}")
        except SystemFileError:
            raise
        except ValueError:
            raise SystemFileError(f"line {lineno}: malformed {key!r} directive") from None

    if delay is None or arity is None:
        raise SystemFileError("system file must set both 'delay' and 'arity'")
    if not seed_points:
        raise SystemFileError("system file must declare at least one 'seed' bead")
    seed = Conformation.build(seed_points, seed_beads, seed_bonds)
    try:
        return OritatamiSystem(RuleSet(rules), arity, delay, seed, tuple(transcript))
    except ValueError as exc:
        raise SystemFileError(str(exc)) from None


def parse_system_file(path: str) -> OritatamiSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def format_system(system: OritatamiSystem) -> str:
    """Serialize a system back to the file syntax (inverse of parse_system)."""
    lines = [f"delay {system.delay}", f"arity {system.arity}"]
    lines += [f"rule {a} {b}" for a, b in system.rules.pairs]
    lines += format_seed_stanza(system.seed).splitlines()
    if system.transcript:
        lines.append("transcript " + " ".join(system.transcript))
    return "\n".join(lines) + "\n"


def format_seed_stanza(seed: Conformation) -> str:
    """The ``seed``/``seedbond`` lines describing a conformation, path order."""
    lines = [f"seed {p.x} {p.y} {bead}" for p, bead in zip(seed.path, seed.beads)]
    lines += [f"seedbond {i + 1} {j + 1}" for i, j in sorted(seed.bonds)]
    return "\n".join(lines) + "\n"


def format_trace(conformation: Conformation, seed_len: int) -> str:
    """TSV trace of the beads stabilized past the seed (1-based indices)."""
    partners: dict[int, list[int]] = {}
    for i, j in conformation.bonds:
        partners.setdefault(i, []).append(j)
        partners.setdefault(j, []).append(i)
    lines = ["# index\tbead\tx\ty\tbonds"]
    for idx in range(seed_len, len(conformation.path)):
        p = conformation.path[idx]
        linked = ";".join(str(k + 1) for k in sorted(partners.get(idx, [])))
        lines.append(f"{idx + 1}\t{conformation.beads[idx]}\t{p.x}\t{p.y}\t{linked}")
    return "\n".join(lines) + "\n"
