"""NFA representation, end-marker augmentation, binary encodings, and a
direct membership oracle used as ground truth in equivalence tests.

The augmented machine gains a sink state reachable on the reserved letter
``$`` from every accepting state; a word is accepted by the original machine
iff the word followed by ``$`` is accepted by the augmented one. State codes
are as wide as the transition list (the row width of the brick machine),
letter codes default to the narrowest width that also fits ``$``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

DOLLAR = "$"
SINK = "qAcc"


class EncodingClash(ValueError):
    """Code override maps are not injective or have the wrong width."""


class LetterNotEncoded(KeyError):
    """A letter has no code in the encoding at hand."""


class NfaFileError(ValueError):
    pass


@dataclass(frozen=True)
class Transition:
    origin: str
    letter: str
    target: str


def _as_transitions(items: Sequence) -> tuple[Transition, ...]:
    out = []
    for t in items:
        if isinstance(t, Transition):
            out.append(t)
        else:
            o, a, tgt = t
            out.append(Transition(str(o), str(a), str(tgt)))
    return tuple(out)


@dataclass(frozen=True)
class Nfa:
    """States, alphabet, initial state, accepting states, ordered transition list.

    Declaration order of every tuple is significant: default code assignment
    and $-transition appending both follow it.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    accepting: tuple[str, ...]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(str(s) for s in self.states))
        object.__setattr__(self, "alphabet", tuple(str(a) for a in self.alphabet))
        object.__setattr__(self, "accepting", tuple(str(s) for s in self.accepting))
        object.__setattr__(self, "transitions", _as_transitions(self.transitions))
        states = set(self.states)
        letters = set(self.alphabet)
        if len(states) != len(self.states) or len(letters) != len(self.alphabet):
            raise ValueError("duplicate state or letter declarations")
        if DOLLAR in letters:
            raise ValueError(f"letter {DOLLAR!r} is reserved for augmentation")
        if SINK in states:
            raise ValueError(f"state name {SINK!r} is reserved for augmentation")
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial!r} not declared")
        for s in self.accepting:
            if s not in states:
                raise ValueError(f"accepting state {s!r} not declared")
        seen = set()
        for t in self.transitions:
            if t.origin not in states or t.target not in states:
                raise ValueError(f"transition {t} uses undeclared states")
            if t.letter not in letters:
                raise ValueError(f"transition {t} uses undeclared letter")
            if t in seen:
                raise ValueError(f"duplicate transition {t}")
            seen.add(t)


@dataclass(frozen=True)
class AugmentedNfa:
    """An NFA with the $-sink construction applied.

    ``alphabet`` stays the original input alphabet; ``transitions`` include
    the appended $-moves; the only accepting state is the sink.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...]
    sink: str = SINK
    dollar: str = DOLLAR

    def __post_init__(self):
        object.__setattr__(self, "transitions", _as_transitions(self.transitions))
        if self.sink not in self.states:
            raise ValueError("sink state must be declared among the states")
        if any(t.origin == self.sink for t in self.transitions):
            raise ValueError("sink state must have no outgoing transitions")
        if len(self.transitions) == 0:
            raise ValueError("degenerate machine: zero transitions after augmentation")

    @property
    def accepting(self) -> tuple[str, ...]:
        return (self.sink,)


def augment(a: Nfa) -> AugmentedNfa:
    """The $-sink construction: original transitions keep their indices and one
    (q, $, sink) transition is appended per accepting state, in declaration order."""
    if isinstance(a, AugmentedNfa):
        raise ValueError("machine is already augmented; the $ letter is reserved")
    transitions = list(a.transitions)
    transitions += [Transition(q, DOLLAR, SINK) for q in a.accepting]
    if not transitions:
        raise ValueError("degenerate machine: zero transitions after augmentation")
    return AugmentedNfa(
        states=a.states + (SINK,),
        alphabet=a.alphabet,
        initial=a.initial,
        transitions=tuple(transitions),
    )


def oracle_accepts(a: Nfa | AugmentedNfa, word: Sequence[str]) -> bool:
    """Standard membership check by breadth-first state-set propagation."""
    current = {a.initial}
    for letter in word:
        current = {t.target for t in a.transitions if t.origin in current and t.letter == letter}
        if not current:
            return False
    return bool(current & set(a.accepting))


@dataclass(frozen=True)
class Encoding:
    """Injective binary codes for states (width = transition count) and letters."""

    state_code: Mapping[str, str]
    letter_code: Mapping[str, str]
    state_bits: int
    letter_bits: int

    def __post_init__(self):
        object.__setattr__(self, "state_code", dict(self.state_code))
        object.__setattr__(self, "letter_code", dict(self.letter_code))
        _check_codes(self.state_code, self.state_bits, "state")
        _check_codes(self.letter_code, self.letter_bits, "letter")

    def letter_bits_of(self, letter: str) -> str:
        try:
            return self.letter_code[letter]
        except KeyError:
            raise LetterNotEncoded(letter) from None


def _check_codes(codes: Mapping[str, str], width: int, what: str) -> None:
    values = list(codes.values())
    for v in values:
        if len(v) != width or any(ch not in "01" for ch in v):
            raise EncodingClash(f"{what} code {v!r} is not a {width}-bit binary string")
    if len(set(values)) != len(values):
        raise EncodingClash(f"{what} codes are not injective")


def _fill_codes(
    names: Sequence[str], width: int, overrides: Mapping[str, str], what: str
) -> dict[str, str]:
    out: dict[str, str] = {}
    for name, code in overrides.items():
        if name not in names:
            raise EncodingClash(f"override for undeclared {what} {name!r}")
        out[name] = str(code)
    _check_codes(out, width, what)
    used = set(out.values())
    counter = 0
    for name in names:
        if name in out:
            continue
        while True:
            if counter >= (1 << width):
                raise EncodingClash(
                    f"cannot encode {len(names)} {what}s injectively in {width} bits"
                )
            code = format(counter, f"0{width}b")
            counter += 1
            if code not in used:
                break
        used.add(code)
        out[name] = code
    return out


def assign_codes(
    a: AugmentedNfa,
    state_overrides: Mapping[str, str] | None = None,
    letter_overrides: Mapping[str, str] | None = None,
) -> Encoding:
    """Codes for every state (sink included) and letter ($ included).

    Defaults enumerate names in declaration order as binary counters; explicit
    overrides are honored verbatim. State width is pinned to the transition
    count; letter width defaults to ceil(log2(|alphabet| + 1)) and follows the
    overrides when they are wider.
    """
    n = len(a.transitions)
    if n == 0:
        raise EncodingClash("machine has no transitions; nothing to encode")
    state_overrides = dict(state_overrides or {})
    letter_overrides = dict(letter_overrides or {})

    letters = a.alphabet + (a.dollar,)
    m = max(1, math.ceil(math.log2(len(letters)))) if len(letters) > 1 else 1
    if letter_overrides:
        widths = {len(v) for v in letter_overrides.values()}
        if len(widths) != 1:
            raise EncodingClash("letter overrides disagree on width")
        m = max(m, widths.pop())

    state_code = _fill_codes(a.states, n, state_overrides, "state")
    letter_code = _fill_codes(letters, m, letter_overrides, "letter")
    return Encoding(state_code, letter_code, n, m)


def parse_nfa(text: str) -> tuple[Nfa, dict[str, str], dict[str, str]]:
    """Parse the NFA file format; returns the machine plus code overrides.

    Directives: ``states:``, ``alphabet:``, ``initial:``, ``accept:``,
    ``trans: <origin> <letter> <target>`` (order = transition index order),
    ``statecode: <state> <bits>``, ``lettercode: <letter> <bits>``.
    Code lines may name the future sink ``qAcc`` and the letter ``$``.
    """
    states: list[str] = []
    alphabet: list[str] = []
    initial: str | None = None
    accepting: list[str] = []
    transitions: list[tuple[str, str, str]] = []
    state_codes: dict[str, str] = {}
    letter_codes: dict[str, str] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key, args = tokens[0], tokens[1:]
        if key == "states:":
            states.extend(args)
        elif key == "alphabet:":
            alphabet.extend(args)
        elif key == "initial:":
            if len(args) != 1:
                raise NfaFileError(f"line {lineno}: 'initial:' takes one state")
            initial = args[0]
        elif key == "accept:":
            accepting.extend(args)
        elif key == "trans:":
            if len(args) != 3:
                raise NfaFileError(f"line {lineno}: 'trans:' takes origin letter target")
            transitions.append((args[0], args[1], args[2]))
        elif key == "statecode:":
            if len(args) != 2:
                raise NfaFileError(f"line {lineno}: 'statecode:' takes state bits")
            state_codes[args[0]] = args[1]
        elif key == "lettercode:":
            if len(args) != 2:
                raise NfaFileError(f"line {lineno}: 'lettercode:' takes letter bits")
            letter_codes[args[0]] = args[1]
        else:
            raise NfaFileError(f"line {lineno}: unknown directive {key!r}")

    if initial is None:
        raise NfaFileError("missing 'initial:' line")
    try:
        nfa = Nfa(tuple(states), tuple(alphabet), initial, tuple(accepting), tuple(transitions))
    except ValueError as exc:
        raise NfaFileError(str(exc)) from None
    return nfa, state_codes, letter_codes


def parse_nfa_file(path: str) -> tuple[Nfa, dict[str, str], dict[str, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_nfa(fh.read())


def prepare(
    nfa: Nfa,
    state_overrides: Mapping[str, str] | None = None,
    letter_overrides: Mapping[str, str] | None = None,
) -> tuple[AugmentedNfa, Encoding]:
    """Augment and encode in one step (what the CLI does after parsing a file)."""
    aug = augment(nfa)
    return aug, assign_codes(aug, state_overrides, letter_overrides)
