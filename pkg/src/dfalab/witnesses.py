"""Constructive witnesses tying colorings to small consistent automata.

Forward direction: a proper coloring of the graph yields a consistent
automaton within the advertised state bound (one construction per
reduction).  Converse direction: any consistent DFA within the bound
yields a proper coloring, extracted from where the zero-run chains end.
Also here: the chromatic-independent two-chain machine for the
single-string instance, and the bookkeeping relating a heuristic solver's
output size to the chromatic number.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import Alphabet, Dfa, PartialDfa, Word, consistency_violations
from .graphs import Coloring, Graph, chromatic_number, is_proper_coloring
from .reductions import (
    Encoding,
    ReductionParams,
    binary_sample,
    incident_pairs,
    param_warnings,
    single_run,
    zhang_alphabet,
    zhang_sample,
)


class InconsistentDfaError(ValueError):
    """The automaton handed to an extractor is not consistent with the sample."""


class ExtractionError(RuntimeError):
    """A structural fact guaranteed by consistency failed to hold.

    Raised instead of silently returning a bogus coloring; seeing this on a
    consistent input means a bug in the construction or the extractor.
    """


@dataclass(frozen=True)
class ChainAnalysis:
    """Where each vertex's head + 0^L walk ends, grouped into color classes.

    chain_states holds, for each class, the L+1 states along the zero run
    of the class's first vertex.  States within one chain are pairwise
    distinct and chains of distinct classes are disjoint; both facts are
    checked during extraction.
    """

    end_state_of_vertex: tuple[int, ...]
    num_classes: int
    chain_states: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RatioReport:
    """Numbers instantiating the approximation-ratio chain.

    k_hat = floor(m_hat / L) bounds the colors extracted from a heuristic
    DFA of size m_hat; k_star * L lower-bounds the optimum automaton size.
    """

    m_hat: int
    k_hat: int
    L: int
    k_star: int
    m_star_lower: int

    def as_dict(self) -> dict:
        return {
            "m_hat": self.m_hat,
            "k_hat": self.k_hat,
            "L": self.L,
            "k_star": self.k_star,
            "m_star_lower": self.m_star_lower,
        }


class _Builder:
    """Mutable construction buffer for partial DFAs."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.rows: list[list[int | None]] = []
        self.accepting: set[int] = set()

    def state(self, accepting: bool = False) -> int:
        q = len(self.rows)
        self.rows.append([None] * self.alphabet.size)
        if accepting:
            self.accepting.add(q)
        return q

    def link(self, src: int, symbol: int, dst: int) -> None:
        cur = self.rows[src][symbol]
        if cur is not None and cur != dst:
            raise ExtractionError(f"conflicting transition ({src}, {symbol})")
        self.rows[src][symbol] = dst

    def partial(self, initial: int) -> PartialDfa:
        rows = tuple(tuple(r) for r in self.rows)
        return PartialDfa(len(rows), self.alphabet, initial, rows, frozenset(self.accepting))


def _require_proper(g: Graph, coloring: Coloring) -> None:
    if not is_proper_coloring(g, coloring):
        raise ValueError("coloring is not proper for this graph")


def _require_legal(g: Graph, params: ReductionParams) -> None:
    issues = param_warnings(g, params)
    if issues:
        raise ValueError("illegal reduction parameters: " + "; ".join(issues))


def _check_encoding(g: Graph, params: ReductionParams, enc: Encoding) -> None:
    if len(enc.vertex_codes) != g.num_vertices or any(
        len(c) != params.head_len for c in enc.vertex_codes
    ):
        raise ValueError("encoding does not provide a head code per vertex")
    if len(enc.edge_codes) != g.num_edges or any(
        len(c) != params.tail_len for c in enc.edge_codes
    ):
        raise ValueError("encoding does not provide a tail code per edge")


def _require_consistent(machine: Dfa | PartialDfa, sample, what: str) -> None:
    bad = consistency_violations(machine, sample)
    if bad:
        first = bad[0]
        raise InconsistentDfaError(
            f"{what}: {len(bad)} sample strings violated, e.g. "
            f"{list(first.symbols)!r} should be {'accepted' if first.label else 'rejected'}"
        )


def _walk_single_run(
    m: Dfa, word, labels, what: str
) -> list[int]:
    """Check consistency with a fully prefix-closed single-string sample by
    one walk along the string, returning the state after each position.

    Equivalent to consistency with the materialized prefix sample: the
    verdict on the length-k prefix is the accept flag of the k-th state.
    """
    if m.initial in m.accepting:
        raise InconsistentDfaError(f"{what}: the empty prefix must be rejected")
    trans = m.transitions
    accepting = m.accepting
    state = m.initial
    states = []
    for pos, a in enumerate(word):
        state = trans[state][a]
        states.append(state)
        if (state in accepting) != labels[pos]:
            raise InconsistentDfaError(
                f"{what}: the length-{pos + 1} prefix should be "
                f"{'accepted' if labels[pos] else 'rejected'}"
            )
    return states


# ---------------------------------------------------------------------------
# Vertex/edge-alphabet reduction


def zhang_dfa_from_coloring(g: Graph, coloring: Coloring) -> PartialDfa:
    """K+1 states: the accepting initial state plus one state per color.

    Reading a vertex symbol moves to its color state; reading an edge
    symbol from the smaller endpoint's color returns to the initial state,
    from the larger endpoint's color it stays put.
    """
    _require_proper(g, coloring)
    alphabet = zhang_alphabet(g)
    k = coloring.num_colors
    rows: list[list[int | None]] = [[None] * alphabet.size for _ in range(k + 1)]
    for v in range(g.num_vertices):
        rows[0][v] = coloring.colors[v]
    nv = g.num_vertices
    for rank, (i, j) in enumerate(g.canonical_edges()):
        sym = nv + rank
        rows[coloring.colors[i]][sym] = 0
        rows[coloring.colors[j]][sym] = coloring.colors[j]
    return PartialDfa(k + 1, alphabet, 0, tuple(tuple(r) for r in rows), frozenset({0}))


def _group_by_first_occurrence(states: list[int]) -> tuple[list[int], int]:
    """Renumber a state list into colors 1..k in order of first appearance."""
    seen: dict[int, int] = {}
    colors = []
    for s in states:
        if s not in seen:
            seen[s] = len(seen) + 1
        colors.append(seen[s])
    return colors, len(seen)


def coloring_from_zhang_dfa(m: Dfa, g: Graph) -> Coloring:
    """Color each vertex by the state its one-symbol string reaches."""
    _require_consistent(m, zhang_sample(g), "zhang extraction")
    targets = [m.walk((v,)) for v in range(g.num_vertices)]
    colors, k = _group_by_first_occurrence(targets)
    coloring = Coloring(tuple(colors), k)
    if not is_proper_coloring(g, coloring):
        raise ExtractionError("consistent DFA produced an improper coloring")
    return coloring


# ---------------------------------------------------------------------------
# Binary prefix-complete reduction


def binary_dfa_from_coloring(
    g: Graph, coloring: Coloring, params: ReductionParams, enc: Encoding
) -> PartialDfa:
    """Acyclic consistent automaton with one zero-chain per used color.

    Head: a shared-prefix binary trie over the vertex codes whose final
    edges land on the chain of the vertex's color.  Body: chains of L+1
    states, only the last accepting.  Tail: per-chain tries over the codes
    of incident edges; a terminal accepts iff the chain's color belongs to
    the smaller endpoint.
    """
    _require_proper(g, coloring)
    _require_legal(g, params)
    _check_encoding(g, params, enc)
    L = params.L
    b = _Builder(Alphabet.binary())
    root = b.state()  # initial; the empty string is negative

    used = sorted(set(coloring.colors))
    chain: dict[int, list[int]] = {}
    for k in used:
        states = [b.state(accepting=(h == L)) for h in range(L + 1)]
        for h in range(L):
            b.link(states[h], 0, states[h + 1])
        chain[k] = states

    prefix_node: dict[Word, int] = {(): root}
    for v, code in enumerate(enc.vertex_codes):
        for d in range(1, len(code)):
            p = code[:d]
            if p not in prefix_node:
                prefix_node[p] = b.state()
                b.link(prefix_node[code[: d - 1]], code[d - 1], prefix_node[p])
        b.link(prefix_node[code[:-1]], code[-1], chain[coloring.colors[v]][0])

    edges = g.canonical_edges()
    for k in used:
        tail_node: dict[Word, int] = {(): chain[k][L]}
        for rank, (i, j) in enumerate(edges):
            if coloring.colors[i] != k and coloring.colors[j] != k:
                continue
            code = enc.edge_codes[rank]
            for d in range(1, len(code)):
                p = code[:d]
                if p not in tail_node:
                    tail_node[p] = b.state()
                    b.link(tail_node[code[: d - 1]], code[d - 1], tail_node[p])
            if code in tail_node:
                raise ExtractionError("tail-path conflict: two edges share a code")
            terminal = b.state(accepting=(coloring.colors[i] == k))
            tail_node[code] = terminal
            b.link(tail_node[code[:-1]], code[-1], terminal)

    return b.partial(initial=root)


def _chain_of(m: Dfa, start_word: Word, L: int, from_state: int | None = None) -> list[int]:
    """States q_0..q_L along start_word then L zeros."""
    q = m.walk(start_word, start=from_state)
    states = [q]
    for _ in range(L):
        q = m.transitions[q][0]
        states.append(q)
    return states


def _extract_grouping(
    m: Dfa, g: Graph, params: ReductionParams, enc: Encoding, from_state: int | None
) -> tuple[Coloring, ChainAnalysis]:
    chains = [
        _chain_of(m, enc.vertex_codes[v], params.L, from_state)
        for v in range(g.num_vertices)
    ]
    ends = [c[-1] for c in chains]
    colors, k_hat = _group_by_first_occurrence(ends)
    rep_chains = []
    seen: set[int] = set()
    for v, c in enumerate(colors):
        if c not in seen:
            seen.add(c)
            rep_chains.append(tuple(chains[v]))

    for states in rep_chains:
        if len(set(states)) != len(states):
            raise ExtractionError("zero-chain revisits a state; the input cannot be consistent")
    all_chain_states: set[int] = set()
    for states in rep_chains:
        if all_chain_states & set(states):
            raise ExtractionError("zero-chains of distinct classes overlap")
        all_chain_states |= set(states)
    if k_hat * params.L > m.num_states:
        raise ExtractionError(
            f"found {k_hat} disjoint chains of {params.L} states in a "
            f"{m.num_states}-state automaton"
        )

    coloring = Coloring(tuple(colors), k_hat)
    if not is_proper_coloring(g, coloring):
        raise ExtractionError("consistent DFA produced an improper coloring")
    analysis = ChainAnalysis(tuple(ends), k_hat, tuple(rep_chains))
    return coloring, analysis


def coloring_from_binary_dfa(
    m: Dfa, g: Graph, params: ReductionParams, enc: Encoding
) -> tuple[Coloring, ChainAnalysis]:
    """Group vertices by the state their head + 0^L walk reaches.

    Consistency alone forces adjacent vertices into different classes (the
    shared tail code is accepted from one end state and rejected from the
    other), so the returned coloring is proper for any consistent input;
    no size bound is required.
    """
    _require_consistent(m, binary_sample(g, params, enc), "binary extraction")
    return _extract_grouping(m, g, params, enc, from_state=None)


# ---------------------------------------------------------------------------
# Single-string reduction


def single_dfa_from_coloring(
    g: Graph, coloring: Coloring, params: ReductionParams, enc: Encoding
) -> Dfa:
    """The binary witness plus an N-state accepting zero-chain in front.

    The chain absorbs each block's leading zero run and ends in the binary
    witness's initial state; every full-string terminal loops back into the
    chain's second state.  Completed with self-loops into a total DFA.
    """
    _require_legal(g, params)
    if coloring.num_colors > params.K:
        raise ValueError(
            f"coloring uses {coloring.num_colors} colors but params.K = {params.K}"
        )
    base = binary_dfa_from_coloring(g, coloring, params, enc)
    rows = [list(r) for r in base.transitions]
    accepting = set(base.accepting)

    terminals = set()
    for v, rank, _edge in incident_pairs(g):
        word = enc.vertex_codes[v] + (0,) * params.L + enc.edge_codes[rank]
        t = base.walk(word)
        if t is None:
            raise ExtractionError("binary witness does not realize a generated string")
        terminals.add(t)

    first = len(rows)  # chain states first..first+N-1; first is the new initial
    for t in range(params.N):
        rows.append([None, None])
        if t >= 1:
            accepting.add(first + t)
    for t in range(params.N - 1):
        rows[first + t][0] = first + t + 1
    rows[first + params.N - 1][0] = base.initial
    for t in sorted(terminals):
        if rows[t][0] is not None:
            raise ExtractionError("full-string terminal already has a zero transition")
        rows[t][0] = first + 1

    pdfa = PartialDfa(
        len(rows), Alphabet.binary(), first, tuple(tuple(r) for r in rows), frozenset(accepting)
    )
    return pdfa.completed()


def coloring_from_single_dfa(
    m: Dfa, g: Graph, params: ReductionParams, enc: Encoding
) -> Coloring:
    """Verify the common-return-state property, then group chain ends.

    The automaton must return to one fixed state after each block's leading
    zero run (checked by direct simulation, not assumed); vertex classes
    are then read off relative to that state exactly as in the binary
    extraction.
    """
    _require_legal(g, params)
    bound = params.N + (params.K + 1) * params.L
    if m.num_states > bound:
        raise ValueError(
            f"automaton has {m.num_states} states, above the bound N+(K+1)L = {bound}"
        )
    word, labels = single_run(g, params, enc)
    states = _walk_single_run(m, word, labels, "single-string extraction")

    block = params.block_len()
    returns = [
        states[pos - 1] for pos in range(1, len(word) + 1) if pos % block == params.N
    ]
    if len(set(returns)) != 1:
        raise ExtractionError(
            f"no common return state after the zero runs: saw {sorted(set(returns))}"
        )
    q_ret = returns[0]

    coloring, _analysis = _extract_grouping(m, g, params, enc, from_state=q_ret)
    if coloring.num_colors > params.K:
        raise ExtractionError(
            f"extraction found {coloring.num_colors} classes, above K = {params.K}"
        )
    return coloring


def two_chain_dfa(g: Graph, params: ReductionParams, enc: Encoding) -> Dfa:
    """Consistent automaton for the single-string sample with fewer than
    2(N + 2L) states, no matter the graph's chromatic number.

    Two input-oblivious chains carry the fixed per-block label pattern; the
    block's final tail code steers into one of four connector states that
    encode (this block's sign, next block's sign).  The two occurrences of
    an edge code have opposite signs, so each chain sees each code once and
    the connectors are well defined.  The layout is certified by a
    consistency check at build time.
    """
    _require_legal(g, params)
    _check_encoding(g, params, enc)
    pairs = incident_pairs(g)
    if not pairs:
        raise ValueError("the two-chain construction needs a graph with at least one edge")

    signs = [v == i for v, _rank, (i, _j) in pairs]
    next_signs = signs[1:] + [True]  # last block exits arbitrarily; no input remains

    b = _Builder(Alphabet.binary())
    start = b.state()
    chain_len = params.N + params.head_len + params.L
    chains: dict[bool, list[int]] = {}
    for sign in (True, False):
        # position p of a block sits on chain index p-1: accepting inside the
        # leading zero run (except its end) and at the body end
        states = [
            b.state(accepting=(idx <= params.N - 2 or idx == chain_len - 1))
            for idx in range(chain_len)
        ]
        for idx in range(chain_len - 1):
            b.link(states[idx], 0, states[idx + 1])
            b.link(states[idx], 1, states[idx + 1])
        chains[sign] = states

    connector: dict[tuple[bool, bool], int] = {}
    for a in (True, False):
        for nxt in (True, False):
            q = b.state(accepting=a)
            connector[(a, nxt)] = q
            b.link(q, 0, chains[nxt][0])

    tail_nodes: dict[bool, dict[Word, int]] = {
        True: {(): chains[True][-1]},
        False: {(): chains[False][-1]},
    }
    seen_codes: dict[bool, set[Word]] = {True: set(), False: set()}
    for t, (v, rank, (i, j)) in enumerate(pairs):
        sign = signs[t]
        code = enc.edge_codes[rank]
        if code in seen_codes[sign]:
            raise ExtractionError("edge code appears twice with the same sign")
        seen_codes[sign].add(code)
        nodes = tail_nodes[sign]
        for d in range(1, len(code)):
            p = code[:d]
            if p not in nodes:
                nodes[p] = b.state()
                b.link(nodes[code[: d - 1]], code[d - 1], nodes[p])
        b.link(nodes[code[:-1]], code[-1], connector[(sign, next_signs[t])])

    b.link(start, 0, chains[signs[0]][0])
    dfa = b.partial(initial=start).completed()

    word, labels = single_run(g, params, enc)
    _walk_single_run(dfa, word, labels, "two-chain construction self-check")
    return dfa


# ---------------------------------------------------------------------------
# Approximation-ratio bookkeeping


def ratio_report(
    g: Graph, heuristic_dfa: Dfa, params: ReductionParams, enc: Encoding
) -> RatioReport:
    """Relate a heuristic solver's output size to the chromatic number.

    Extraction gives a proper k_hat-coloring, so k_star <= k_hat; the
    disjoint-chain count gives k_hat <= floor(m_hat / L); and any
    consistent automaton below k_star * L states would yield a proper
    (k_star - 1)-coloring, so k_star * L lower-bounds the optimum size.
    """
    coloring, _analysis = coloring_from_binary_dfa(heuristic_dfa, g, params, enc)
    k_hat = coloring.num_colors
    m_hat = heuristic_dfa.num_states
    result = chromatic_number(g)
    assert result is not None
    k_star, _witness = result
    if k_hat > m_hat // params.L:
        raise ExtractionError(f"k_hat={k_hat} exceeds floor(m_hat/L)={m_hat // params.L}")
    if k_star > k_hat:
        raise ExtractionError(f"k_star={k_star} exceeds extracted k_hat={k_hat}")
    return RatioReport(m_hat, k_hat, params.L, k_star, k_star * params.L)
