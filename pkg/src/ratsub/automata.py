"""Nondeterministic automata over the group alphabet.

States are positive integers.  Transitions are kept as an ordered tuple of
``(p, label, q)`` triples; their positions are used as stable indices by the
reduction (one generator per transition).  The label ``eps`` is reserved for
empty moves.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, replace
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .group_core import EPS, GroupError, InstanceGroup

Transition = tuple[int, str, int]


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class Nfa:
    states: frozenset[int]
    initial: int
    finals: frozenset[int]
    transitions: tuple[Transition, ...]
    alphabet: frozenset[str] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        if not self.states:
            raise AutomatonError("automaton has no states")
        if any(not isinstance(q, int) or q < 1 for q in self.states):
            raise AutomatonError("states must be integers >= 1")
        if self.initial not in self.states:
            raise AutomatonError(f"initial state {self.initial} not in states")
        if not self.finals <= self.states:
            raise AutomatonError("final states must be states")
        for p, label, q in self.transitions:
            if p not in self.states or q not in self.states:
                raise AutomatonError(f"transition ({p}, {label}, {q}) leaves the state set")
            if self.alphabet is not None and label != EPS and label not in self.alphabet:
                raise AutomatonError(f"unknown label {label!r}")

    @property
    def max_state(self) -> int:
        return max(self.states)

    def eps_closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for s, label, q in self.transitions:
                if s == p and label == EPS and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def step(self, states: Iterable[int], symbol: str) -> frozenset[int]:
        current = set(states)
        nxt = {q for p, label, q in self.transitions if p in current and label == symbol}
        return self.eps_closure(nxt)

    def to_dict(self) -> dict:
        return {
            "states": sorted(self.states),
            "initial": self.initial,
            "finals": sorted(self.finals),
            "transitions": [list(t) for t in self.transitions],
        }


def nfa_over(
    g: InstanceGroup,
    states: Iterable[int],
    initial: int,
    finals: Iterable[int],
    transitions: Iterable[Sequence],
) -> Nfa:
    """Build an Nfa whose labels are canonicalized against ``g``."""
    trans = []
    for t in transitions:
        if len(t) != 3:
            raise AutomatonError(f"malformed transition {t!r}")
        p, label, q = t
        if not isinstance(label, str):
            raise AutomatonError(f"label must be a string: {label!r}")
        if label != EPS:
            try:
                label = g.canonical_symbol(label)
            except GroupError as exc:
                raise AutomatonError(str(exc)) from None
        trans.append((p, label, q))
    return Nfa(frozenset(states), initial, frozenset(finals), tuple(trans), frozenset(g.alphabet))


def automaton_from_dict(g: InstanceGroup, data: dict) -> Nfa:
    try:
        return nfa_over(g, data["states"], data["initial"], data["finals"], data["transitions"])
    except (KeyError, TypeError) as exc:
        raise AutomatonError(f"malformed automaton description: {exc!r}") from None


def load_automaton(g: InstanceGroup, path: str | Path) -> Nfa:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AutomatonError(f"cannot read automaton file {path}: {exc}") from None
    return automaton_from_dict(g, data)


def accepts(a: Nfa, word: Sequence[str]) -> bool:
    if isinstance(word, str):
        word = word.split()
    current = a.eps_closure({a.initial})
    for symbol in word:
        if symbol == EPS:
            raise AutomatonError("eps cannot appear in an input word")
        if a.alphabet is not None and symbol not in a.alphabet:
            raise AutomatonError(f"unknown symbol {symbol!r}")
        current = a.step(current, symbol)
        if not current:
            return False
    return bool(current & a.finals)


def normalize_single_final(a: Nfa) -> Nfa:
    """Return an equivalent automaton with exactly one final state."""
    if not a.finals:
        raise AutomatonError("automaton has no final states")
    if len(a.finals) == 1:
        return a
    qf = a.max_state + 1
    extra = tuple((f, EPS, qf) for f in sorted(a.finals))
    return replace(
        a,
        states=a.states | {qf},
        finals=frozenset({qf}),
        transitions=a.transitions + extra,
    )


def is_admissible(a: Nfa, P: Iterable[int]) -> bool:
    P = frozenset(P)
    return P <= a.states and a.initial in P and bool(P & a.finals)


def admissible_subsets(a: Nfa) -> list[tuple[int, ...]]:
    """All admissible subsets, by size and then lexicographically."""
    states = sorted(a.states)
    out = []
    for size in range(1, len(states) + 1):
        for P in combinations(states, size):
            if is_admissible(a, P):
                out.append(P)
    return out


Pair = tuple[int, frozenset[int]]


def build_AP(a: Nfa, P: Iterable[int]) -> tuple[Nfa, dict[Pair, int]]:
    """The automaton that tracks the set of visited states inside ``P``.

    States ``(q, R)`` with ``q in P`` and ``initial in R <= P`` are numbered
    1.. in lexicographic order of ``(q, sorted(R))``.  Returns the automaton
    and the pair-to-number map.
    """
    P = tuple(sorted(set(P)))
    if not is_admissible(a, P):
        raise AutomatonError(f"{list(P)} is not admissible")
    q0 = a.initial
    rest = [q for q in P if q != q0]
    subsets = [
        frozenset((q0,) + extra) for r in range(len(rest) + 1) for extra in combinations(rest, r)
    ]
    pairs = sorted(((q, R) for q in P for R in subsets), key=lambda s: (s[0], sorted(s[1])))
    number = {pair: i for i, pair in enumerate(pairs, start=1)}
    Pset = frozenset(P)
    trans = []
    for q, R in pairs:
        for p, label, r in a.transitions:
            if p == q and r in Pset:
                trans.append((number[(q, R)], label, number[(r, R | {r})]))
    finals = frozenset(number[(q, Pset)] for q in P if q in a.finals)
    ap = Nfa(
        frozenset(number.values()),
        number[(q0, frozenset({q0}))],
        finals,
        tuple(trans),
        a.alphabet,
    )
    return ap, number


def trim(a: Nfa) -> tuple[Nfa, dict[int, int]]:
    """Drop states that are not on some path from the initial to a final state.

    Survivors are renumbered densely in increasing order.  The initial and
    final states are always kept, so the result is never without finals.  Returns the trimmed automaton and the old-to-new map.
    """
    fwd = _reachable(a.transitions, {a.initial}, forward=True)
    bwd = _reachable(a.transitions, set(a.finals), forward=False)
    keep = sorted((fwd & bwd) | {a.initial} | a.finals)
    renum = {q: i for i, q in enumerate(keep, start=1)}
    trans = tuple(
        (renum[p], label, renum[q]) for p, label, q in a.transitions if p in renum and q in renum
    )
    finals = frozenset(renum[f] for f in a.finals if f in renum)
    return Nfa(frozenset(renum.values()), renum[a.initial], finals, trans, a.alphabet), renum


def _reachable(transitions, start: set[int], forward: bool) -> set[int]:
    seen = set(start)
    queue = deque(start)
    while queue:
        p = queue.popleft()
        for s, _, q in transitions:
            src, dst = (s, q) if forward else (q, s)
            if src == p and dst not in seen:
                seen.add(dst)
                queue.append(dst)
    return seen


def loop_nfa(a: Nfa, q: int) -> Nfa:
    if q not in a.states:
        raise AutomatonError(f"unknown state {q}")
    return replace(a, initial=q, finals=frozenset({q}))


def find_run(a: Nfa, word: Sequence[str], start: int, ends: Iterable[int]) -> tuple[int, ...] | None:
    """Shortest transition sequence from ``start`` to a state in ``ends`` labelled ``word``.

    ``eps`` moves are free.  Ties go to the lowest transition index.  Returns
    transition indices, or None when no such path exists.
    """
    ends = frozenset(ends)
    word = tuple(word)
    origin = (start, 0)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {origin: None}
    queue = deque([origin])
    while queue:
        node = queue.popleft()
        state, pos = node
        if pos == len(word) and state in ends:
            path = []
            while parent[node] is not None:
                node, i = parent[node]
                path.append(i)
            return tuple(reversed(path))
        for i, (p, label, q) in enumerate(a.transitions):
            if p != state:
                continue
            if label == EPS:
                nxt = (q, pos)
            elif pos < len(word) and label == word[pos]:
                nxt = (q, pos + 1)
            else:
                continue
            if nxt not in parent:
                parent[nxt] = (node, i)
                queue.append(nxt)
    return None


def run_states(a: Nfa, run: Sequence[int]) -> list[int]:
    """States visited by a run given as transition indices, starting at its source."""
    if not run:
        return [a.initial]
    states = [a.transitions[run[0]][0]]
    for i in run:
        p, _, q = a.transitions[i]
        if p != states[-1]:
            raise AutomatonError("transition sequence is not a path")
        states.append(q)
    return states


def run_word(a: Nfa, run: Sequence[int]) -> tuple[str, ...]:
    return tuple(a.transitions[i][1] for i in run if a.transitions[i][1] != EPS)
