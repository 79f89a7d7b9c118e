"""Automata and labeled-sample data model.

Total and partial deterministic finite automata, Moore and Mealy
transducers with a binary output alphabet (encoded as booleans, True
meaning "+"), and the two sample representations used throughout:
labeled string sets and input/output runs.

All values are frozen dataclasses and every operation is a pure function
of its inputs, so values can be shared freely between threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

Word = tuple[int, ...]

OUTPUT_PLUS = "+"
OUTPUT_MINUS = "-"


class SampleError(ValueError):
    """A sample violates a structural precondition of an operation."""


def output_str(bits: Iterable[bool]) -> str:
    """Render a boolean output sequence as a +/- string."""
    return "".join(OUTPUT_PLUS if b else OUTPUT_MINUS for b in bits)


@dataclass(frozen=True)
class Alphabet:
    """Dense symbol indices in [0, size); names are display-only."""

    size: int
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("alphabet must have at least one symbol")
        if self.names is not None:
            names = tuple(self.names)
            object.__setattr__(self, "names", names)
            if len(names) != self.size:
                raise ValueError(f"got {len(names)} names for {self.size} symbols")
            if len(set(names)) != len(names):
                raise ValueError("symbol names must be distinct")

    @classmethod
    def binary(cls) -> "Alphabet":
        return cls(2, ("0", "1"))

    def name(self, symbol: int) -> str:
        return self.names[symbol] if self.names is not None else str(symbol)

    def check_word(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for a in word:
            if not 0 <= a < self.size:
                raise ValueError(
                    f"symbol {a} out of range for alphabet of size {self.size}"
                )
        return word


@dataclass(frozen=True)
class LabeledString:
    symbols: Word
    label: bool  # True = positive (accepted)

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))


def _check_sample_words(words: frozenset[Word], size: int) -> None:
    for w in words:
        # min/max run at C speed; cheap even for very long strings
        if w and (min(w) < 0 or max(w) >= size):
            raise ValueError(f"string {w!r} uses symbols outside alphabet of size {size}")


@dataclass(frozen=True)
class DfaSample:
    """Disjoint sets of accepted (positive) and rejected (negative) strings."""

    alphabet: Alphabet
    positives: frozenset[Word]
    negatives: frozenset[Word]

    def __post_init__(self) -> None:
        pos = frozenset(tuple(w) for w in self.positives)
        neg = frozenset(tuple(w) for w in self.negatives)
        object.__setattr__(self, "positives", pos)
        object.__setattr__(self, "negatives", neg)
        overlap = pos & neg
        if overlap:
            raise SampleError(f"{len(overlap)} strings labeled both positive and negative")
        _check_sample_words(pos, self.alphabet.size)
        _check_sample_words(neg, self.alphabet.size)

    @classmethod
    def from_labeled(cls, alphabet: Alphabet, strings: Iterable[LabeledString]) -> "DfaSample":
        pos = frozenset(s.symbols for s in strings if s.label)
        neg = frozenset(s.symbols for s in strings if not s.label)
        return cls(alphabet, pos, neg)

    def strings(self) -> frozenset[Word]:
        return self.positives | self.negatives

    def size(self) -> int:
        return len(self.positives) + len(self.negatives)

    def label(self, word: Word) -> bool | None:
        if word in self.positives:
            return True
        if word in self.negatives:
            return False
        return None


def _normalize_rows(transitions, num_states: int, size: int, partial: bool):
    rows = tuple(tuple(row) for row in transitions)
    if len(rows) != num_states:
        raise ValueError(f"expected {num_states} transition rows, got {len(rows)}")
    for q, row in enumerate(rows):
        if len(row) != size:
            raise ValueError(f"state {q}: expected {size} entries, got {len(row)}")
        for t in row:
            if t is None:
                if not partial:
                    raise ValueError(f"state {q} has a missing transition in a total DFA")
                continue
            if not 0 <= t < num_states:
                raise ValueError(f"state {q} has transition target {t} out of range")
    return rows


def _check_states(num_states: int, initial: int, accepting: frozenset[int]) -> frozenset[int]:
    if num_states < 1:
        raise ValueError("automaton needs at least one state")
    if not 0 <= initial < num_states:
        raise ValueError(f"initial state {initial} out of range")
    accepting = frozenset(accepting)
    for q in accepting:
        if not 0 <= q < num_states:
            raise ValueError(f"accepting state {q} out of range")
    return accepting


@dataclass(frozen=True)
class Dfa:
    """Total DFA: transitions[state][symbol] is always a state index."""

    num_states: int
    alphabet: Alphabet
    initial: int
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "transitions",
            _normalize_rows(self.transitions, self.num_states, self.alphabet.size, partial=False),
        )
        object.__setattr__(self, "accepting", _check_states(self.num_states, self.initial, self.accepting))

    def walk(self, word: Iterable[int], start: int | None = None) -> int:
        """Extended transition: the state reached from `start` on `word`."""
        state = self.initial if start is None else start
        trans = self.transitions
        for a in self.alphabet.check_word(word):
            state = trans[state][a]
        return state

    def accepts(self, word: Iterable[int]) -> bool:
        return self.walk(word) in self.accepting

    def to_moore(self) -> "MooreMachine":
        """Same graph; each state outputs whether it is accepting."""
        output = tuple(q in self.accepting for q in range(self.num_states))
        return MooreMachine(self.num_states, self.alphabet, self.initial, self.transitions, output)

    def to_mealy(self) -> "MealyMachine":
        """Same graph; each edge outputs whether its target is accepting."""
        output = tuple(
            tuple(t in self.accepting for t in row) for row in self.transitions
        )
        return MealyMachine(self.num_states, self.alphabet, self.initial, self.transitions, output)


@dataclass(frozen=True)
class PartialDfa:
    """DFA whose transition table may have missing (None) entries.

    A run that needs a missing transition falls off the automaton; for
    consistency purposes such a string counts as rejected.
    """

    num_states: int
    alphabet: Alphabet
    initial: int
    transitions: tuple[tuple[int | None, ...], ...]
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "transitions",
            _normalize_rows(self.transitions, self.num_states, self.alphabet.size, partial=True),
        )
        object.__setattr__(self, "accepting", _check_states(self.num_states, self.initial, self.accepting))

    def walk(self, word: Iterable[int], start: int | None = None) -> int | None:
        state = self.initial if start is None else start
        trans = self.transitions
        for a in self.alphabet.check_word(word):
            if state is None:
                return None
            state = trans[state][a]
        return state

    def accepts(self, word: Iterable[int]) -> bool:
        state = self.walk(word)
        return state is not None and state in self.accepting

    def num_defined(self) -> int:
        return sum(1 for row in self.transitions for t in row if t is not None)

    def is_acyclic(self) -> bool:
        """True iff no directed cycle is reachable from the initial state."""
        GRAY, BLACK = 1, 2
        color: dict[int, int] = {}
        trans = self.transitions
        start = self.initial
        color[start] = GRAY
        path = [start]
        iters = {start: iter(trans[start])}
        while path:
            top = path[-1]
            advanced = False
            for t in iters[top]:
                if t is None:
                    continue
                c = color.get(t)
                if c == GRAY:
                    return False
                if c is None:
                    color[t] = GRAY
                    iters[t] = iter(trans[t])
                    path.append(t)
                    advanced = True
                    break
            if not advanced:
                color[top] = BLACK
                path.pop()
        return True

    def completed(self) -> Dfa:
        """Fill every missing entry with a self-loop.

        Keeps the state count and stays consistent with every sample the
        partial automaton was consistent with, since a fallen-off run is
        rejected and a self-loop on a non-accepting state still rejects.
        """
        rows = tuple(
            tuple(q if t is None else t for t in row)
            for q, row in enumerate(self.transitions)
        )
        return Dfa(self.num_states, self.alphabet, self.initial, rows, self.accepting)


@dataclass(frozen=True)
class MooreMachine:
    """Transducer emitting one output per state entered; M(empty) = empty."""

    num_states: int
    alphabet: Alphabet
    initial: int
    transitions: tuple[tuple[int, ...], ...]
    output: tuple[bool, ...]  # per state; True = "+"

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "transitions",
            _normalize_rows(self.transitions, self.num_states, self.alphabet.size, partial=False),
        )
        _check_states(self.num_states, self.initial, frozenset())
        output = tuple(bool(b) for b in self.output)
        object.__setattr__(self, "output", output)
        if len(output) != self.num_states:
            raise ValueError("need one output per state")

    def outputs(self, word: Iterable[int]) -> tuple[bool, ...]:
        state = self.initial
        trans = self.transitions
        out = []
        for a in self.alphabet.check_word(word):
            state = trans[state][a]
            out.append(self.output[state])
        return tuple(out)


@dataclass(frozen=True)
class MealyMachine:
    """Transducer emitting one output per transition taken; M(empty) = empty."""

    num_states: int
    alphabet: Alphabet
    initial: int
    transitions: tuple[tuple[int, ...], ...]
    output: tuple[tuple[bool, ...], ...]  # per (state, symbol); True = "+"

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "transitions",
            _normalize_rows(self.transitions, self.num_states, self.alphabet.size, partial=False),
        )
        _check_states(self.num_states, self.initial, frozenset())
        output = tuple(tuple(bool(b) for b in row) for row in self.output)
        object.__setattr__(self, "output", output)
        if len(output) != self.num_states or any(len(row) != self.alphabet.size for row in output):
            raise ValueError("need one output per (state, symbol)")

    def outputs(self, word: Iterable[int]) -> tuple[bool, ...]:
        state = self.initial
        trans = self.transitions
        out = []
        for a in self.alphabet.check_word(word):
            out.append(self.output[state][a])
            state = trans[state][a]
        return tuple(out)


def _format_run(run: tuple[Word, tuple[bool, ...]]) -> str:
    word, out = run
    return f"({list(word)}, {output_str(out)!r})"


@dataclass(frozen=True)
class MachineSample:
    """Finite set of observed (input, output) runs with equal lengths.

    Two runs must agree on outputs along any shared input prefix.
    """

    alphabet: Alphabet
    runs: frozenset[tuple[Word, tuple[bool, ...]]]

    def __post_init__(self) -> None:
        runs = frozenset((tuple(s), tuple(bool(b) for b in t)) for s, t in self.runs)
        object.__setattr__(self, "runs", runs)
        for s, t in runs:
            if len(s) != len(t):
                raise SampleError(f"run {_format_run((s, t))} has |input| != |output|")
        _check_sample_words(frozenset(s for s, _ in runs), self.alphabet.size)
        # Prefix agreement between lexicographically adjacent runs implies
        # agreement between all pairs (lcp(a, c) = min(lcp(a, b), lcp(b, c))).
        ordered = sorted(runs)
        for (s1, t1), (s2, t2) in zip(ordered, ordered[1:]):
            n = _shared_prefix_len(s1, s2)
            if t1[:n] != t2[:n]:
                raise SampleError(
                    "conflicting runs: "
                    f"{_format_run((s1, t1))} and {_format_run((s2, t2))} "
                    "disagree on a shared input prefix"
                )


class PrefixCompleteness(Enum):
    COMPLETE = "complete"
    ALMOST_COMPLETE = "almost_complete"
    NEITHER = "neither"


def prefix_completeness(sample: DfaSample) -> PrefixCompleteness:
    """Classify whether the sample's string set is closed under prefixes.

    COMPLETE means the set equals its own prefix closure; ALMOST_COMPLETE
    means only the empty string is missing.
    """
    strings = sample.strings()
    missing = {w[:-1] for w in strings if w} - strings
    if not missing:
        return PrefixCompleteness.COMPLETE
    if missing == {()} :
        return PrefixCompleteness.ALMOST_COMPLETE
    return PrefixCompleteness.NEITHER


def _shared_prefix_len(a: Word, b: Word) -> int:
    """Length of the longest common prefix, via slice comparisons."""
    n = min(len(a), len(b))
    if a[:n] == b[:n]:
        return n
    lo, hi = 0, n  # invariant: a[:lo] == b[:lo], a[:hi] != b[:hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[:mid] == b[:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def consistency_violations(machine: Dfa | PartialDfa, sample: DfaSample) -> list[LabeledString]:
    """All sample strings whose verdict under `machine` contradicts their label.

    Empty result means the machine is consistent with the sample.  Strings
    are replayed in sorted order along a shared-prefix stack, so the cost is
    proportional to the sample's prefix-tree size rather than the sum of
    string lengths squared.
    """
    if machine.alphabet.size != sample.alphabet.size:
        raise ValueError(
            f"alphabet mismatch: machine has {machine.alphabet.size} symbols, "
            f"sample has {sample.alphabet.size}"
        )
    trans = machine.transitions
    accepting = machine.accepting
    positives = sample.positives
    bad = []
    path: list[int | None] = [machine.initial]  # path[d] = state after d symbols
    prev: Word = ()
    for word in sorted(sample.strings()):
        keep = _shared_prefix_len(prev, word)
        del path[keep + 1:]
        state = path[-1]
        for a in word[keep:]:
            state = None if state is None else trans[state][a]
            path.append(state)
        accepted = state is not None and state in accepting
        expected = word in positives
        if accepted != expected:
            bad.append(LabeledString(word, expected))
        prev = word
    return bad


def is_consistent(machine: Dfa | PartialDfa, sample: DfaSample) -> bool:
    return not consistency_violations(machine, sample)


def prefix_tree_acceptor(sample: DfaSample) -> PartialDfa:
    """Tree-shaped partial DFA with one state per distinct prefix.

    A state is accepting iff its prefix is a positive string, so the tree
    is consistent with the sample by construction and trivially acyclic.
    """
    words = sorted(sample.strings())
    if not words:
        raise SampleError("cannot build a prefix tree from an empty sample")
    children: list[dict[int, int]] = [{}]
    accepting: set[int] = set()
    path = [0]
    prev: Word = ()
    for word in words:
        keep = _shared_prefix_len(prev, word)
        del path[keep + 1:]
        node = path[-1]
        for a in word[keep:]:
            nxt = children[node].get(a)
            if nxt is None:
                nxt = len(children)
                children.append({})
                children[node][a] = nxt
            node = nxt
            path.append(node)
        if word in sample.positives:
            accepting.add(node)
        prev = word
    size = sample.alphabet.size
    rows = tuple(tuple(ch.get(a) for a in range(size)) for ch in children)
    return PartialDfa(len(children), sample.alphabet, 0, rows, frozenset(accepting))


def _maximal_strings(strings: frozenset[Word]) -> list[Word]:
    """Strings that are not proper prefixes of another string in the set.

    In sorted order every extension of w directly follows w, so comparing
    each string with its successor suffices.
    """
    ordered = sorted(strings)
    out = []
    for w, nxt in zip(ordered, ordered[1:]):
        if not (len(nxt) > len(w) and nxt[: len(w)] == w):
            out.append(w)
    if ordered:
        out.append(ordered[-1])
    return out


def dfa_sample_to_machine_sample(sample: DfaSample) -> MachineSample:
    """One run per maximal string; output position k is the label of the
    length-k prefix.  The empty string's label is dropped.

    Requires a prefix-complete or almost prefix-complete sample, otherwise
    some per-position outputs would be undefined.
    """
    if prefix_completeness(sample) is PrefixCompleteness.NEITHER:
        raise SampleError(
            "sample is not (almost) prefix-complete; per-position outputs are undefined"
        )
    positives = sample.positives
    runs = set()
    for w in _maximal_strings(sample.strings()):
        if not w:
            continue
        out = tuple(w[:k] in positives for k in range(1, len(w) + 1))
        runs.add((w, out))
    return MachineSample(sample.alphabet, frozenset(runs))


def machine_sample_to_dfa_sample(ms: MachineSample) -> DfaSample:
    """Label every nonempty prefix of every run input by its output symbol.

    The result is almost prefix-complete; the empty string is placed in
    neither set.
    """
    pos: set[Word] = set()
    neg: set[Word] = set()
    for s, t in ms.runs:
        for k in range(1, len(s) + 1):
            (pos if t[k - 1] else neg).add(s[:k])
    # MachineSample validation already rejected conflicting runs
    return DfaSample(ms.alphabet, frozenset(pos), frozenset(neg))
