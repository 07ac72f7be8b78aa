"""Cotranscriptional folding engine on the triangular grid.

A conformation is a self-avoiding directed path carrying one bead per point
plus a set of h-interactions (bonds) between beads that sit at unit distance
and are at least two positions apart along the path. A system folds its
transcript one bead at a time: each bead settles on the placement-and-bond
choice whose best reachable energy, looking ahead over the next ``delay - 1``
nascent beads, is minimal. Ties are genuine nondeterminism; the engine can
enumerate every branch, sample one with a seeded RNG, or take the canonical
first choice.

Energy is minus the bond count, so "minimal energy" means "most bonds".
Bond indices are 0-based internally; the text formats in :mod:`sysfile`
use the 1-based convention.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, NamedTuple, Sequence

from .grid import DIRECTIONS, Point, are_adjacent, neighbors, path_is_valid


class DeadEnd(Exception):
    """No placement exists for the next transcript bead: folding cannot proceed."""


class BranchBudgetExceeded(Exception):
    """Exhaustive enumeration produced more terminal branches than allowed."""


def _normalize_pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


class RuleSet:
    """Symmetric relation on bead types licensing bonds."""

    __slots__ = ("_pairs",)

    def __init__(self, pairs: Iterable[tuple[str, str]] = ()):
        self._pairs = frozenset(_normalize_pair(str(a), str(b)) for a, b in pairs)

    def allows(self, a: str, b: str) -> bool:
        return _normalize_pair(a, b) in self._pairs

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self._pairs))

    def without(self, a: str, b: str) -> "RuleSet":
        """A copy lacking one pair; handy for mutation experiments."""
        return RuleSet(p for p in self._pairs if p != _normalize_pair(a, b))

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return _normalize_pair(*pair) in self._pairs

    def __len__(self) -> int:
        return len(self._pairs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RuleSet) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        return f"RuleSet({sorted(self._pairs)!r})"


@dataclass(frozen=True)
class Conformation:
    """A placed, bonded folding: path, bead sequence, and bond set.

    ``bonds`` holds 0-based index pairs (i, j) with i + 2 <= j and the two
    path points adjacent on the grid.
    """

    path: tuple[Point, ...]
    beads: tuple[str, ...]
    bonds: frozenset[tuple[int, int]] = frozenset()

    @classmethod
    def build(
        cls,
        path: Sequence[tuple[int, int]],
        beads: Sequence[str],
        bonds: Iterable[tuple[int, int]] = (),
    ) -> "Conformation":
        pts = tuple(Point(x, y) for x, y in path)
        pairs = frozenset((i, j) if i < j else (j, i) for i, j in bonds)
        return cls(pts, tuple(str(b) for b in beads), pairs)

    def __len__(self) -> int:
        return len(self.path)


def validate_conformation(
    c: Conformation,
    rules: RuleSet | None = None,
    max_arity: int | None = None,
) -> None:
    """Raise ValueError unless ``c`` is well formed (and R-valid / within arity, if given)."""
    if len(c.beads) != len(c.path):
        raise ValueError(f"{len(c.beads)} beads on a {len(c.path)}-point path")
    if not path_is_valid(c.path):
        raise ValueError("path is not a self-avoiding chain of adjacent points")
    for i, j in c.bonds:
        if not (0 <= i and i + 2 <= j and j < len(c.path)):
            raise ValueError(f"bond ({i}, {j}) out of range or between near-consecutive beads")
        if not are_adjacent(c.path[i], c.path[j]):
            raise ValueError(f"bond ({i}, {j}) joins non-adjacent points")
        if rules is not None and not rules.allows(c.beads[i], c.beads[j]):
            raise ValueError(f"bond ({i}, {j}) pairs {c.beads[i]}/{c.beads[j]} outside the rule set")
    if max_arity is not None and arity_of(c) > max_arity:
        raise ValueError(f"conformation arity {arity_of(c)} exceeds cap {max_arity}")


def energy(c: Conformation) -> int:
    """Minus the number of bonds."""
    return -len(c.bonds)


def arity_of(c: Conformation) -> int:
    """Largest per-bead bond count; 0 for a bond-free conformation."""
    counts: dict[int, int] = {}
    for i, j in c.bonds:
        counts[i] = counts.get(i, 0) + 1
        counts[j] = counts.get(j, 0) + 1
    return max(counts.values(), default=0)


class StabilizationChoice(NamedTuple):
    """One way to stabilize the next bead: its point and the bonds it forms.

    ``bonds`` lists the partner indices (0-based, ascending). Two choices are
    equal iff both the point and the bond set coincide.
    """

    point: Point
    bonds: tuple[int, ...]


@dataclass(frozen=True)
class OritatamiSystem:
    """Rule set, arity cap, delay, seed conformation, and transcript."""

    rules: RuleSet
    arity: int
    delay: int
    seed: Conformation
    transcript: tuple[str, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        if self.delay < 1:
            raise ValueError("delay must be >= 1")
        if len(self.seed) == 0:
            raise ValueError("seed must contain at least one bead")
        validate_conformation(self.seed, self.rules, self.arity)
        object.__setattr__(self, "transcript", tuple(str(b) for b in self.transcript))


class FoldOutcome(NamedTuple):
    conformation: Conformation
    completed: bool


class _Fold:
    """Mutable folding workspace: push/pop beads without copying the conformation."""

    __slots__ = ("rules", "arity", "path", "beads", "occupied", "bond_count", "bond_log", "total_bonds")

    def __init__(self, rules: RuleSet, arity: int, start: Conformation):
        self.rules = rules
        self.arity = arity
        self.path: list[Point] = list(start.path)
        self.beads: list[str] = list(start.beads)
        self.occupied: dict[Point, int] = {p: i for i, p in enumerate(start.path)}
        self.bond_count: list[int] = [0] * len(start.path)
        for i, j in start.bonds:
            self.bond_count[i] += 1
            self.bond_count[j] += 1
        self.bond_log: list[tuple[int, int]] = sorted(start.bonds)
        self.total_bonds = len(start.bonds)

    def choices(self, bead: str) -> list[StabilizationChoice]:
        """Every legal (placement, bond subset) for ``bead``, in canonical order.

        Canonical order: direction order around the path end, then bond
        subsets sorted lexicographically (the empty subset first).
        """
        last = self.path[-1]
        new_index = len(self.path)
        out: list[StabilizationChoice] = []
        for d in DIRECTIONS:
            p = Point(last[0] + d[0], last[1] + d[1])
            if p in self.occupied:
                continue
            eligible = []
            for q in neighbors(p):
                idx = self.occupied.get(q)
                if (
                    idx is not None
                    and idx + 2 <= new_index
                    and self.bond_count[idx] < self.arity
                    and self.rules.allows(self.beads[idx], bead)
                ):
                    eligible.append(idx)
            eligible.sort()
            max_take = min(len(eligible), self.arity)
            subsets = sorted(
                chain.from_iterable(combinations(eligible, r) for r in range(max_take + 1))
            )
            out.extend(StabilizationChoice(p, s) for s in subsets)
        return out

    def push(self, choice: StabilizationChoice, bead: str) -> None:
        idx = len(self.path)
        self.path.append(choice.point)
        self.beads.append(bead)
        self.occupied[choice.point] = idx
        self.bond_count.append(len(choice.bonds))
        for partner in choice.bonds:
            self.bond_count[partner] += 1
            self.bond_log.append((partner, idx))
        self.total_bonds += len(choice.bonds)

    def pop(self) -> None:
        p = self.path.pop()
        self.beads.pop()
        del self.occupied[p]
        n_bonds = self.bond_count.pop()
        for _ in range(n_bonds):
            partner, _ = self.bond_log.pop()
            self.bond_count[partner] -= 1
        self.total_bonds -= n_bonds

    def snapshot(self) -> Conformation:
        return Conformation(tuple(self.path), tuple(self.beads), frozenset(self.bond_log))


def elongations(
    c: Conformation, bead: str, rules: RuleSet, arity_cap: int
) -> list[StabilizationChoice]:
    """All one-bead elongations of ``c`` by ``bead``: every free placement next to
    the path end, combined with every subset of its eligible bond partners
    (the empty subset included), filtered by the arity cap."""
    return _Fold(rules, arity_cap, c).choices(bead)


def _best_reachable_energy(fold: _Fold, transcript: Sequence[str], next_i: int, depth: int) -> int:
    """Minimum energy over every elongation by at most ``depth`` further transcript beads."""
    best = -fold.total_bonds
    if depth == 0 or next_i >= len(transcript):
        return best
    bead = transcript[next_i]
    for ch in fold.choices(bead):
        fold.push(ch, bead)
        s = _best_reachable_energy(fold, transcript, next_i + 1, depth - 1)
        if s < best:
            best = s
        fold.pop()
    return best


def _minimizers(fold: _Fold, system: OritatamiSystem, i: int) -> list[StabilizationChoice]:
    bead = system.transcript[i]
    options = fold.choices(bead)
    if not options:
        raise DeadEnd(f"no placement for transcript bead {i + 1} ({bead})")
    scored: list[tuple[int, StabilizationChoice]] = []
    for ch in options:
        fold.push(ch, bead)
        score = _best_reachable_energy(fold, system.transcript, i + 1, system.delay - 1)
        fold.pop()
        scored.append((score, ch))
    best = min(s for s, _ in scored)
    return [ch for s, ch in scored if s == best]


def stabilize_next(
    system: OritatamiSystem, c_i: Conformation, i: int
) -> list[StabilizationChoice]:
    """The full argmin set for stabilizing transcript bead ``i`` (0-based) onto ``c_i``.

    Each candidate placement is scored by the minimum energy reachable through
    further elongation by up to ``delay - 1`` transcript beads (truncated at
    the transcript end); every choice attaining the global minimum is
    returned, in canonical order. Raises DeadEnd when no placement exists.
    """
    fold = _Fold(system.rules, system.arity, c_i)
    return _minimizers(fold, system, i)


def fold_all(
    system: OritatamiSystem,
    mode: str = "enumerate",
    rng: random.Random | int | None = None,
    branch_budget: int = 10_000,
) -> tuple[FoldOutcome, ...]:
    """Fold the whole transcript.

    enumerate -- branch over every nondeterministic stabilization and return
    all distinct terminal conformations (transcript completed, or stuck at a
    dead end). Raises BranchBudgetExceeded past ``branch_budget`` terminals.
    sample -- pick uniformly among the argmin set at each step (seeded RNG).
    first -- always take the canonically first choice.
    """
    if mode not in ("enumerate", "sample", "first"):
        raise ValueError(f"unknown fold mode {mode!r}")
    if mode == "enumerate":
        return _fold_enumerate(system, branch_budget)
    if isinstance(rng, int):
        rng = random.Random(rng)
    elif rng is None:
        rng = random.Random(0)
    fold = _Fold(system.rules, system.arity, system.seed)
    for i in range(len(system.transcript)):
        try:
            options = _minimizers(fold, system, i)
        except DeadEnd:
            return (FoldOutcome(fold.snapshot(), False),)
        choice = rng.choice(options) if mode == "sample" else options[0]
        fold.push(choice, system.transcript[i])
    return (FoldOutcome(fold.snapshot(), True),)


def _fold_enumerate(system: OritatamiSystem, branch_budget: int) -> tuple[FoldOutcome, ...]:
    outcomes: list[FoldOutcome] = []
    seen: set[tuple] = set()

    def record(fold: _Fold, completed: bool) -> None:
        if len(outcomes) >= branch_budget:
            raise BranchBudgetExceeded(f"more than {branch_budget} terminal branches")
        snap = fold.snapshot()
        key = (snap.path, snap.beads, snap.bonds, completed)
        if key not in seen:
            seen.add(key)
            outcomes.append(FoldOutcome(snap, completed))

    def walk(fold: _Fold, i: int) -> None:
        if i == len(system.transcript):
            record(fold, True)
            return
        try:
            options = _minimizers(fold, system, i)
        except DeadEnd:
            record(fold, False)
            return
        for ch in options:
            fold.push(ch, system.transcript[i])
            walk(fold, i + 1)
            fold.pop()

    walk(_Fold(system.rules, system.arity, system.seed), 0)
    return tuple(outcomes)


def is_deterministic_run(system: OritatamiSystem) -> bool:
    """True iff every stabilization step yields exactly one minimizer.

    A single branch then exists, so walking it covers every reachable step;
    a dead end (zero minimizers) counts as not deterministic.
    """
    fold = _Fold(system.rules, system.arity, system.seed)
    for i in range(len(system.transcript)):
        try:
            options = _minimizers(fold, system, i)
        except DeadEnd:
            return False
        if len(options) != 1:
            return False
        fold.push(options[0], system.transcript[i])
    return True


def transcript_is_cyclic(transcript: Sequence[str]) -> bool:
    """True iff the transcript admits a period no longer than half its length."""
    w = list(transcript)
    n = len(w)
    for p in range(1, n // 2 + 1):
        if all(w[i] == w[i + p] for i in range(n - p)):
            return True
    return False
