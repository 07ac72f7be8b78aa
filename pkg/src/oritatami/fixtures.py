"""Built-in worked systems.

``glider_*`` is the 12-bead glider spacer: a delay-3 deterministic system
whose transcript cycles through bead types 579..590 and translates by a
fixed vector every period. It doubles as the 1-bit spacer of the brick
harness (the bead sequence it exposes below depends on whether it enters a
row at the top or at the bottom).

``branching_machine`` is a 4-state, 4-transition augmented automaton with one
genuinely nondeterministic step (two transitions leave the initial state on
the same letter), small enough to trace by hand. Its verbatim codes make the
slot vectors of the brick machine match the hand-worked module runs.
"""

from __future__ import annotations

from .folding import Conformation, OritatamiSystem, RuleSet
from .grid import Point, mirror
from .nfa import AugmentedNfa, Encoding, Nfa

GLIDER_PERIOD: tuple[str, ...] = tuple(str(b) for b in range(579, 591))

GLIDER_RULES = RuleSet(
    [
        ("579", "584"),
        ("580", "589"),
        ("581", "588"),
        ("582", "587"),
        ("583", "586"),
        ("585", "590"),
        ("586", "590"),
    ]
)

GLIDER_DELAY = 3
GLIDER_ARITY = 2

# One glider translates by (2, 0) per six beads, (4, 0) per 12-bead period.
GLIDER_PERIOD_SHIFT = Point(4, 0)

_SEED_PATH = [(0, 0), (1, -1), (1, -2), (2, -2), (2, -1), (1, 0)]
_SEED_BEADS = ["585", "586", "587", "588", "589", "590"]
_SEED_BONDS = [(0, 5), (1, 5)]  # 585-590 and 586-590


def glider_seed(mirrored: bool = False) -> Conformation:
    """The six-bead hexagonal seed; mirrored flips it across the horizontal axis,
    which makes the transcript enter the row band at the bottom instead of the top."""
    pts = [Point(x, y) for x, y in _SEED_PATH]
    if mirrored:
        pts = [mirror(p) for p in pts]
    return Conformation(tuple(pts), tuple(_SEED_BEADS), frozenset(_SEED_BONDS))


def glider_system(periods: int = 4, mirrored: bool = False) -> OritatamiSystem:
    return OritatamiSystem(
        rules=GLIDER_RULES,
        arity=GLIDER_ARITY,
        delay=GLIDER_DELAY,
        seed=glider_seed(mirrored),
        transcript=GLIDER_PERIOD * periods,
    )


def branching_nfa() -> Nfa:
    """The 3-state machine underneath :func:`branching_machine`, pre-augmentation."""
    return Nfa(
        states=("1011", "1000", "1111"),
        alphabet=("100",),
        initial="1011",
        accepting=("1011", "1111"),
        transitions=(
            ("1011", "100", "1000"),
            ("1011", "100", "1111"),
        ),
    )


def branching_machine() -> tuple[AugmentedNfa, Encoding]:
    """The worked 4-transition machine with its verbatim codes.

    Transition order is fixed so that slot k carries: ($-move from 1111),
    (1011 -100-> 1000), ($-move from 1011), (1011 -100-> 1111). State names
    double as their own 4-bit codes; the letters are coded 100 and 101.
    """
    machine = AugmentedNfa(
        states=("1011", "1000", "1111", "0011"),
        alphabet=("100",),
        initial="1011",
        transitions=(
            ("1111", "$", "0011"),
            ("1011", "100", "1000"),
            ("1011", "$", "0011"),
            ("1011", "100", "1111"),
        ),
        sink="0011",
    )
    encoding = Encoding(
        state_code={s: s for s in machine.states},
        letter_code={"100": "100", "$": "101"},
        state_bits=4,
        letter_bits=3,
    )
    return machine, encoding
