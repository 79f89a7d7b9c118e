"""Exact minimum-consistent-DFA search plus two reference points:
a brute-force enumeration oracle for tiny binary instances and the greedy
RPNI merge baseline.

The exact search folds the sample's prefix tree into at most m classes
with determinization closure.  Tree states are processed in breadth-first
order; each may join an existing class (tried in ascending creation
order) or open the next class index, which breaks class-renaming
symmetry.  The search is sequential and therefore deterministic.
"""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .automata import (
    Dfa,
    DfaSample,
    PartialDfa,
    consistency_violations,
    _shared_prefix_len,
)


class SolveStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SolveRequest:
    sample: DfaSample
    max_states: int
    require_acyclic: bool = False
    time_budget: float | None = None  # wall-clock seconds

    def __post_init__(self) -> None:
        if self.max_states < 1:
            raise ValueError("max_states must be at least 1")


@dataclass
class SolveOutcome:
    status: SolveStatus
    witness: Dfa | PartialDfa | None
    states_explored: int


class BoundExceededError(ValueError):
    """No consistent automaton exists within the given state bound."""


class SolveTimeoutError(RuntimeError):
    """The time budget ran out before the search finished."""


class _Timeout(Exception):
    pass


class _Pta:
    """Prefix tree of the sample with three-valued node labels."""

    def __init__(self, sample: DfaSample):
        self.alphabet = sample.alphabet
        self.children: list[dict[int, int]] = [{}]
        self.labels: list[int] = [0]  # 0 unknown, 1 accept, -1 reject
        positives = sample.positives
        path = [0]
        prev: tuple[int, ...] = ()
        for word in sorted(sample.strings()):
            keep = _shared_prefix_len(prev, word)
            del path[keep + 1:]
            node = path[-1]
            for a in word[keep:]:
                nxt = self.children[node].get(a)
                if nxt is None:
                    nxt = len(self.children)
                    self.children.append({})
                    self.labels.append(0)
                    self.children[node][a] = nxt
                node = nxt
                path.append(node)
            self.labels[node] = 1 if word in positives else -1
            prev = word
        order = []
        queue = deque([0])
        while queue:
            node = queue.popleft()
            order.append(node)
            for a in sorted(self.children[node]):
                queue.append(self.children[node][a])
        self.bfs = order


class _MergeEngine:
    """Union-find over prefix-tree nodes with an undo trail."""

    def __init__(self, pta: _Pta):
        n = len(pta.children)
        self.rep = list(range(n))
        self.label = list(pta.labels)
        self.trans = [dict(ch) for ch in pta.children]
        self.reds: list[int] = []
        self.red_set: set[int] = set()
        self.trail: list[tuple] = []

    def find(self, x: int) -> int:
        rep = self.rep
        while rep[x] != x:
            x = rep[x]
        return x

    def fold(self, keep: int, drop: int) -> bool:
        """Merge class `drop` into class `keep`, closing under determinism.

        Fails (returns False) on a label conflict or when the closure would
        identify two distinct committed classes; the caller must undo to
        its trail mark either way.
        """
        queue = [(keep, drop)]
        while queue:
            x, y = queue.pop()
            x = self.find(x)
            y = self.find(y)
            if x == y:
                continue
            if y in self.red_set:
                if x in self.red_set:
                    return False
                x, y = y, x
            la, lb = self.label[x], self.label[y]
            if la and lb and la != lb:
                return False
            self.trail.append(("rep", y, y))
            self.rep[y] = x
            if lb and not la:
                self.trail.append(("label", x, la))
                self.label[x] = lb
            tx = self.trans[x]
            for sym, target in self.trans[y].items():
                cur = tx.get(sym)
                if cur is None:
                    tx[sym] = target
                    self.trail.append(("trans", x, sym))
                else:
                    queue.append((cur, target))
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            kind, a, b = self.trail.pop()
            if kind == "rep":
                self.rep[a] = b
            elif kind == "label":
                self.label[a] = b
            else:
                del self.trans[a][b]

    def quotient_acyclic(self, root_node: int) -> bool:
        start = self.find(root_node)
        GRAY, BLACK = 1, 2
        color = {start: GRAY}
        path = [start]
        iters = {start: iter(list(self.trans[start].values()))}
        while path:
            top = path[-1]
            advanced = False
            for target in iters[top]:
                c = self.find(target)
                mark = color.get(c)
                if mark == GRAY:
                    return False
                if mark is None:
                    color[c] = GRAY
                    iters[c] = iter(list(self.trans[c].values()))
                    path.append(c)
                    advanced = True
                    break
            if not advanced:
                color[top] = BLACK
                path.pop()
        return True

    def materialize(self, alphabet) -> PartialDfa:
        roots: list[int] = []
        index: dict[int, int] = {}
        for node in range(len(self.rep)):
            r = self.find(node)
            if r not in index:
                index[r] = len(roots)
                roots.append(r)
        size = alphabet.size
        rows = []
        for r in roots:
            row: list[int | None] = [None] * size
            for sym, target in self.trans[r].items():
                row[sym] = index[self.find(target)]
            rows.append(tuple(row))
        accepting = frozenset(index[r] for r in roots if self.label[r] == 1)
        return PartialDfa(len(roots), alphabet, index[self.find(0)], tuple(rows), accepting)


class _ExactSearch:
    def __init__(self, pta: _Pta, max_states: int, require_acyclic: bool, deadline: float | None):
        self.pta = pta
        self.engine = _MergeEngine(pta)
        self.max_states = max_states
        self.require_acyclic = require_acyclic
        self.deadline = deadline
        self.explored = 0

    def run(self) -> bool:
        return self._search(0)

    def _search(self, idx: int) -> bool:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Timeout
        eng = self.engine
        order = self.pta.bfs
        while idx < len(order) and eng.find(order[idx]) != order[idx]:
            idx += 1
        if idx == len(order):
            return True
        node = order[idx]
        for red in tuple(eng.reds):
            self.explored += 1
            mark = len(eng.trail)
            if eng.fold(red, node) and (
                not self.require_acyclic or eng.quotient_acyclic(order[0])
            ):
                if self._search(idx + 1):
                    return True
            eng.undo(mark)
        if len(eng.reds) < self.max_states:
            self.explored += 1
            eng.reds.append(node)
            eng.red_set.add(node)
            if self._search(idx + 1):
                return True
            eng.reds.pop()
            eng.red_set.discard(node)
        return False


def exists_consistent(req: SolveRequest) -> SolveOutcome:
    """Exact decision: is some consistent automaton within max_states?

    A SAT outcome carries a verified witness (total DFA, or a partial
    acyclic one when require_acyclic is set).  UNSAT is returned only
    after the merge search is exhausted; running out of time yields a
    TIMEOUT status, never a wrong answer.

    The search ranges over quotients of the sample's prefix tree, so every
    witness realizes every sample string.  In acyclic mode this is part of
    the contract: a partial automaton that lets some negative strings fall
    off early is not considered.
    """
    deadline = time.monotonic() + req.time_budget if req.time_budget is not None else None
    pta = _Pta(req.sample)
    search = _ExactSearch(pta, req.max_states, req.require_acyclic, deadline)
    try:
        sat = search.run()
    except _Timeout:
        return SolveOutcome(SolveStatus.TIMEOUT, None, search.explored)
    if not sat:
        return SolveOutcome(SolveStatus.UNSAT, None, search.explored)
    partial = search.engine.materialize(req.sample.alphabet)
    witness: Dfa | PartialDfa = partial if req.require_acyclic else partial.completed()
    if consistency_violations(witness, req.sample):
        raise RuntimeError("solver bug: sat witness is not consistent with the sample")
    if req.require_acyclic and not partial.is_acyclic():
        raise RuntimeError("solver bug: acyclic-mode witness has a reachable cycle")
    return SolveOutcome(SolveStatus.SAT, witness, search.explored)


def min_consistent(
    sample: DfaSample,
    upper_bound: int,
    require_acyclic: bool = False,
    time_budget: float | None = None,
) -> tuple[int, Dfa | PartialDfa]:
    """Smallest state count admitting a consistent automaton, found by
    deciding m = 1, 2, ... up to upper_bound.

    Raises BoundExceededError when every m up to the bound is UNSAT and
    SolveTimeoutError when the shared time budget runs out first.
    """
    if upper_bound < 1:
        raise ValueError("upper_bound must be at least 1")
    deadline = time.monotonic() + time_budget if time_budget is not None else None
    for m in range(1, upper_bound + 1):
        remaining = None
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise SolveTimeoutError(f"time budget exhausted before deciding m={m}")
        outcome = exists_consistent(SolveRequest(sample, m, require_acyclic, remaining))
        if outcome.status is SolveStatus.SAT:
            assert outcome.witness is not None
            return m, outcome.witness
        if outcome.status is SolveStatus.TIMEOUT:
            raise SolveTimeoutError(f"time budget exhausted while deciding m={m}")
    kind = "acyclic automaton" if require_acyclic else "DFA"
    raise BoundExceededError(f"no consistent {kind} with at most {upper_bound} states")


def brute_force_min(sample: DfaSample, m_max: int = 3) -> tuple[int, Dfa]:
    """Independent oracle: enumerate every transition table outright.

    Only for binary alphabets and m_max <= 3, where total enumeration is
    cheap.  The initial state is fixed to 0 (any DFA is isomorphic to one
    rooted at 0, and consistency is isomorphism-invariant); accepting sets
    are forced by the end state of each sample string rather than
    enumerated.
    """
    if sample.alphabet.size != 2:
        raise ValueError("brute-force oracle only covers binary alphabets")
    if not 1 <= m_max <= 3:
        raise ValueError("brute-force oracle is limited to m_max in [1, 3]")
    words = sorted(sample.strings())
    positives = sample.positives
    for m in range(1, m_max + 1):
        for table in itertools.product(range(m), repeat=2 * m):
            labels: list[bool | None] = [None] * m
            ok = True
            for w in words:
                state = 0
                for a in w:
                    state = table[2 * state + a]
                want = w in positives
                if labels[state] is None:
                    labels[state] = want
                elif labels[state] != want:
                    ok = False
                    break
            if ok:
                rows = tuple((table[2 * q], table[2 * q + 1]) for q in range(m))
                accepting = frozenset(q for q in range(m) if labels[q])
                return m, Dfa(m, sample.alphabet, 0, rows, accepting)
    raise BoundExceededError(f"no consistent DFA with at most {m_max} states")


def rpni(sample: DfaSample) -> Dfa:
    """Greedy merge baseline: fold each prefix-tree state (breadth-first)
    into the first earlier class that stays consistent, else promote it.

    The output is completed to a total DFA; it is always consistent and
    never larger than the prefix tree.
    """
    if not sample.strings():
        raise ValueError("rpni needs a nonempty sample")
    pta = _Pta(sample)
    eng = _MergeEngine(pta)
    for node in pta.bfs:
        if eng.find(node) != node:
            continue
        merged = False
        for red in tuple(eng.reds):
            mark = len(eng.trail)
            if eng.fold(red, node):
                merged = True
                break
            eng.undo(mark)
        if not merged:
            eng.reds.append(node)
            eng.red_set.add(node)
    dfa = eng.materialize(sample.alphabet).completed()
    if consistency_violations(dfa, sample):
        raise RuntimeError("rpni bug: merged automaton is not consistent with the sample")
    return dfa
