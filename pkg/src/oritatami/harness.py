"""Submodule verification harness: fold a transcript fragment inside each
declared environment, classify the result as a brick, and check that the
induced environment graph closes.

An environment is a surrounding conformation plus the height at which the
fragment enters the row band (T for top, B for bottom) and the 1-bit input
it exposes. A brick is the classified fold: where it exits the band and
which bead sequence it leaves exposed along the band's bottom row (read in
reverse path order, matching how the next row scans it). The environment
catalog is user-declared; the glider spacer ships as the worked example via
:mod:`oritatami.fixtures`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .folding import (
    BranchBudgetExceeded,
    Conformation,
    OritatamiSystem,
    RuleSet,
    fold_all,
)
from .grid import Point
from .sysfile import SystemFileError, parse_seed_block


class UnexpectedFold(Exception):
    """The fragment's fold does not resolve to a declared brick."""


class NondeterministicBrick(Exception):
    """Several distinct terminal folds where a single brick was declared."""


class ClosureViolation(Exception):
    """Exploration reached an environment outside the declared catalog."""


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Environment:
    name: str
    conformation: Conformation
    entry: str  # "T" or "B"
    input_bit: str  # "0", "1", "N", or "Y"
    submodule: str | None = None

    def __post_init__(self):
        if self.entry not in ("T", "B"):
            raise ValueError(f"entry must be T or B, got {self.entry!r}")
        if self.input_bit not in ("0", "1", "N", "Y"):
            raise ValueError(f"input must be 0, 1, N or Y, got {self.input_bit!r}")


@dataclass(frozen=True)
class ExpectedBrick:
    entry: str
    input_bit: str
    exit: str
    exposed: tuple[str, ...]


@dataclass(frozen=True)
class SubmoduleDef:
    name: str
    fragment: tuple[str, ...]
    rules: RuleSet
    delay: int
    arity: int
    deterministic: bool = True
    expected: tuple[ExpectedBrick, ...] = ()

    def expectation_for(self, entry: str, input_bit: str) -> ExpectedBrick | None:
        for exp in self.expected:
            if exp.entry == entry and exp.input_bit == input_bit:
                return exp
        return None


@dataclass(frozen=True)
class Brick:
    """A classified fold, named ``<submodule>_-<h><y>`` after its entry height
    and input bit."""

    name: str
    submodule: str
    entry: str
    input_bit: str
    conformation: Conformation
    fragment_start: int
    exit: str
    exposed: tuple[str, ...]

    def fragment_points(self) -> tuple[Point, ...]:
        return self.conformation.path[self.fragment_start :]

    def shape_key(self) -> tuple:
        """Translation-invariant fragment identity: relative points, beads,
        exit height, exposure."""
        pts = self.fragment_points()
        ox, oy = pts[0]
        rel = tuple(Point(p.x - ox, p.y - oy) for p in pts)
        return (rel, self.conformation.beads[self.fragment_start :], self.exit, self.exposed)


def _classify(conformation: Conformation, fragment_start: int) -> tuple[str, tuple[str, ...]]:
    """Exit height and exposed bottom-row bead sequence of the folded fragment."""
    points = conformation.path[fragment_start:]
    beads = conformation.beads[fragment_start:]
    ys = [p.y for p in points]
    top, bottom = max(ys), min(ys)
    if top == bottom:
        raise UnexpectedFold("fragment folded flat; no row band to classify")
    last = points[-1].y
    if last == top:
        exit_height = "T"
    elif last == bottom:
        exit_height = "B"
    else:
        raise UnexpectedFold(f"fragment ends mid-band (y={last}, band {bottom}..{top})")
    exposed = tuple(b for p, b in zip(reversed(points), reversed(beads)) if p.y == bottom)
    return exit_height, exposed


def fold_in_environment(
    submodule: SubmoduleDef,
    env: Environment,
    delay: int | None = None,
    arity: int | None = None,
    branch_budget: int = 512,
) -> Brick:
    """Fold the fragment after the environment's conformation and classify it.

    Raises UnexpectedFold when the fold dead-ends, cannot be classified, ties
    beyond the branch budget, or contradicts the submodule's declared brick
    for this (entry, input); NondeterministicBrick when a declared-
    deterministic fragment resolves to several distinct folds.
    """
    system = OritatamiSystem(
        rules=submodule.rules,
        arity=submodule.arity if arity is None else arity,
        delay=submodule.delay if delay is None else delay,
        seed=env.conformation,
        transcript=submodule.fragment,
    )
    try:
        outcomes = fold_all(system, "enumerate", branch_budget=branch_budget)
    except BranchBudgetExceeded:
        raise UnexpectedFold(
            f"{submodule.name} in {env.name}: unresolved ties exceed the branch budget"
        ) from None
    completed = [o.conformation for o in outcomes if o.completed]
    if not completed:
        raise UnexpectedFold(f"{submodule.name} in {env.name}: every branch dead-ends")
    start = len(env.conformation)
    if len(completed) > 1 and submodule.deterministic:
        raise NondeterministicBrick(
            f"{submodule.name} in {env.name}: {len(completed)} distinct folds"
        )
    conformation = completed[0]
    exit_height, exposed = _classify(conformation, start)
    expected = submodule.expectation_for(env.entry, env.input_bit)
    if expected is not None and (expected.exit, expected.exposed) != (exit_height, exposed):
        raise UnexpectedFold(
            f"{submodule.name} in {env.name}: folded to exit={exit_height} "
            f"exposed={','.join(exposed)}, declared exit={expected.exit} "
            f"exposed={','.join(expected.exposed)}"
        )
    name = f"{submodule.name}_-{env.entry.lower()}{env.input_bit}"
    return Brick(
        name=name,
        submodule=submodule.name,
        entry=env.entry,
        input_bit=env.input_bit,
        conformation=conformation,
        fragment_start=start,
        exit=exit_height,
        exposed=exposed,
    )


@dataclass
class BrickAutomaton:
    """Environments as vertices, T/B-labeled brick transitions as edges."""

    environments: dict[str, Environment] = field(default_factory=dict)
    bricks: dict[str, Brick] = field(default_factory=dict)
    transitions: list[tuple[str, str, str]] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)


def _resolve_submodule(
    defs: Mapping[str, SubmoduleDef], env: Environment
) -> SubmoduleDef:
    if env.submodule is not None:
        try:
            return defs[env.submodule]
        except KeyError:
            raise ClosureViolation(
                f"environment {env.name} names undeclared submodule {env.submodule!r}"
            ) from None
    if len(defs) != 1:
        raise ClosureViolation(
            f"environment {env.name} must name its submodule (several are declared)"
        )
    return next(iter(defs.values()))


def explore_closure(
    defs: Mapping[str, SubmoduleDef] | Iterable[SubmoduleDef],
    start_envs: Sequence[Environment],
    budget: int = 1000,
) -> BrickAutomaton:
    """Breadth-first closure check over the declared environment catalog.

    Every pending environment is folded; the successor is the unique declared
    environment (for the same submodule) whose entry height matches the
    brick's exit. Environments whose fold fails classification are recorded
    in ``failures`` rather than aborting the walk. Raises ClosureViolation
    when a successor is missing or ambiguous, or past the step budget.
    """
    if not isinstance(defs, Mapping):
        defs = {d.name: d for d in defs}
    auto = BrickAutomaton(environments={e.name: e for e in start_envs})
    if len(auto.environments) != len(start_envs):
        raise CatalogError("duplicate environment names")
    pending = list(start_envs)
    visited: set[str] = set()
    steps = 0
    while pending:
        steps += 1
        if steps > budget:
            raise ClosureViolation(f"closure exploration exceeded {budget} steps")
        env = pending.pop(0)
        if env.name in visited:
            continue
        visited.add(env.name)
        sub = _resolve_submodule(defs, env)
        try:
            brick = fold_in_environment(sub, env)
        except (UnexpectedFold, NondeterministicBrick) as exc:
            auto.failures.append((env.name, f"{type(exc).__name__}: {exc}"))
            continue
        auto.bricks[env.name] = brick
        successors = [
            e
            for e in auto.environments.values()
            if e.entry == brick.exit and _same_submodule(defs, e, sub)
        ]
        if not successors:
            raise ClosureViolation(
                f"no declared environment with entry {brick.exit} follows {env.name}"
            )
        if len(successors) > 1:
            names = ", ".join(e.name for e in successors)
            raise ClosureViolation(f"ambiguous successors of {env.name}: {names}")
        nxt = successors[0]
        auto.transitions.append((env.name, brick.exit, nxt.name))
        if nxt.name not in visited:
            pending.append(nxt)
    return auto


def _same_submodule(
    defs: Mapping[str, SubmoduleDef], env: Environment, sub: SubmoduleDef
) -> bool:
    try:
        return _resolve_submodule(defs, env).name == sub.name
    except ClosureViolation:
        return False


def format_automaton(auto: BrickAutomaton) -> str:
    """Text edge list plus a dot-style listing, ready for graph tooling."""
    lines = [f"{src} -{label}-> {dst}" for src, label, dst in auto.transitions]
    for env_name, message in auto.failures:
        lines.append(f"{env_name} !! {message}")
    lines.append("")
    lines.append("digraph bricks {")
    for name, brick in sorted(auto.bricks.items()):
        lines.append(f'  "{name}" [label="{name}\\n{brick.name}"];')
    for src, label, dst in auto.transitions:
        lines.append(f'  "{src}" -> "{dst}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_environments(text: str) -> list[Environment]:
    """Parse an environment catalog: ``env <name>`` stanzas holding seed lines
    (system-file syntax), ``entry T|B``, ``input 0|1|N|Y``, and an optional
    ``submodule <name>``."""
    stanzas: list[tuple[str, list[str]]] = []
    current: list[str] | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "env":
            if len(tokens) != 2:
                raise CatalogError("'env' takes exactly one name")
            current = []
            stanzas.append((tokens[1], current))
        elif current is None:
            raise CatalogError(f"directive {tokens[0]!r} before any 'env' stanza")
        else:
            current.append(line)
    if not stanzas:
        raise CatalogError("catalog declares no environments")

    envs: list[Environment] = []
    for name, lines in stanzas:
        entry = input_bit = submodule = None
        seed_lines: list[str] = []
        for line in lines:
            tokens = line.split()
            if tokens[0] == "entry":
                (entry,) = tokens[1:]
            elif tokens[0] == "input":
                (input_bit,) = tokens[1:]
            elif tokens[0] == "submodule":
                (submodule,) = tokens[1:]
            elif tokens[0] in ("seed", "seedbond"):
                seed_lines.append(line)
            else:
                raise CatalogError(f"env {name}: unknown directive {tokens[0]!r}")
        if entry is None or input_bit is None:
            raise CatalogError(f"env {name}: needs both 'entry' and 'input'")
        if not seed_lines:
            raise CatalogError(f"env {name}: needs a seed conformation block")
        try:
            conformation = parse_seed_block(seed_lines)
        except SystemFileError as exc:
            raise CatalogError(f"env {name}: {exc}") from None
        try:
            envs.append(Environment(name, conformation, entry, input_bit, submodule))
        except ValueError as exc:
            raise CatalogError(f"env {name}: {exc}") from None
    return envs


def parse_submodules(text: str) -> dict[str, SubmoduleDef]:
    """Parse submodule definitions: ``submodule <name>`` stanzas with ``delay``,
    ``arity``, ``rule`` lines, a ``fragment`` (or ``repeat``) transcript, an
    optional ``deterministic yes|no``, and optional declared bricks as
    ``expect <entry> <input> <exit> <bead> <bead> ...``."""
    stanzas: list[tuple[str, list[list[str]]]] = []
    current: list[list[str]] | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "submodule":
            if len(tokens) != 2:
                raise CatalogError("'submodule' takes exactly one name")
            current = []
            stanzas.append((tokens[1], current))
        elif current is None:
            raise CatalogError(f"directive {tokens[0]!r} before any 'submodule' stanza")
        else:
            current.append(tokens)
    if not stanzas:
        raise CatalogError("no submodules declared")

    defs: dict[str, SubmoduleDef] = {}
    for name, lines in stanzas:
        delay = arity = None
        rules: list[tuple[str, str]] = []
        fragment: list[str] = []
        deterministic = True
        expected: list[ExpectedBrick] = []
        for tokens in lines:
            key, args = tokens[0], tokens[1:]
            if key == "delay":
                delay = int(args[0])
            elif key == "arity":
                arity = int(args[0])
            elif key == "rule":
                a, b = args
                rules.append((a, b))
            elif key == "fragment":
                fragment.extend(args)
            elif key == "repeat":
                fragment.extend(args[1:] * int(args[0]))
            elif key == "deterministic":
                deterministic = args[0].lower() in ("yes", "true", "1")
            elif key == "expect":
                if len(args) < 3:
                    raise CatalogError(f"submodule {name}: 'expect' needs entry input exit beads")
                expected.append(ExpectedBrick(args[0], args[1], args[2], tuple(args[3:])))
            else:
                raise CatalogError(f"submodule {name}: unknown directive {key!r}")
        if delay is None or arity is None or not fragment:
            raise CatalogError(f"submodule {name}: needs delay, arity and a fragment")
        defs[name] = SubmoduleDef(
            name, tuple(fragment), RuleSet(rules), delay, arity, deterministic, tuple(expected)
        )
    return defs
