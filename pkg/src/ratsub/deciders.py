"""Rational subset membership in H = F_k x A.

The finite component is tracked in the states (A is central, so only the
product of the finite letters matters), which leaves an automaton over free
letters.  Benois saturation then turns membership of a reduced free word in
the image of that automaton into plain acceptance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automata import AutomatonError, Nfa, loop_nfa
from .group_core import (
    EPS,
    FreeWord,
    HElement,
    InstanceGroup,
    free_reduce,
    free_symbol,
    parse_free_symbol,
)


def _inverse_label(label: str) -> str:
    return free_symbol(-parse_free_symbol(label))


@dataclass
class SaturatedNfa:
    """A free-letter automaton with the eps-edges added by saturation.

    ``added`` maps each new edge ``(p, q)`` to a path of base transitions
    (indices into ``base.transitions``) from p to q whose label freely
    reduces to the empty word.
    """

    base: Nfa
    added: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def with_finals(self, finals: Iterable[int]) -> "SaturatedNfa":
        base = Nfa(self.base.states, self.base.initial, frozenset(finals), self.base.transitions)
        return SaturatedNfa(base, self.added)

    def witness_word(self, path: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.base.transitions[i][1] for i in path if self.base.transitions[i][1] != EPS)


def benois_saturate(a: Nfa) -> SaturatedNfa:
    """Add eps-edges p -> q whenever p -l-> r =eps=> s -l^-1-> q, until fixpoint."""
    for _, label, _ in a.transitions:
        if label != EPS and parse_free_symbol(label) is None:
            raise AutomatonError(f"non-free label {label!r}")
    sat = SaturatedNfa(a)
    out_by_label: dict[tuple[int, str], list[int]] = {}
    for i, (p, label, q) in enumerate(a.transitions):
        if label != EPS:
            out_by_label.setdefault((p, label), []).append(i)
    original_eps = {(p, q) for p, label, q in a.transitions if label == EPS}

    changed = True
    while changed:
        changed = False
        paths = _eps_paths(a, sat.added)
        for i, (p, label, r) in enumerate(a.transitions):
            if label == EPS:
                continue
            inv = _inverse_label(label)
            for s, mid in paths[r].items():
                for j in out_by_label.get((s, inv), ()):
                    q = a.transitions[j][2]
                    if p == q or (p, q) in original_eps or (p, q) in sat.added:
                        continue
                    witness = (i,) + mid + (j,)
                    # soundness: the witness label must cancel completely
                    letters = [parse_free_symbol(lbl) for lbl in sat.witness_word(witness)]
                    assert free_reduce(letters) == (), "saturation witness does not cancel"
                    sat.added[(p, q)] = witness
                    changed = True
    return sat


def _eps_paths(a: Nfa, added: dict) -> dict[int, dict[int, tuple[int, ...]]]:
    """For each state, a shortest expanded eps-path to every eps-reachable state."""
    edges: dict[int, list[tuple[int, tuple[int, ...]]]] = {q: [] for q in a.states}
    for i, (p, label, q) in enumerate(a.transitions):
        if label == EPS:
            edges[p].append((q, (i,)))
    for (p, q), path in added.items():
        edges[p].append((q, path))
    out = {}
    for r in a.states:
        found = {r: ()}
        queue = deque([r])
        while queue:
            s = queue.popleft()
            for q, path in edges[s]:
                if q not in found:
                    found[q] = found[s] + path
                    queue.append(q)
        out[r] = found
    return out


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership query.

    ``run`` is the accepting path as transition indices of the queried
    automaton and ``word`` its label with eps moves dropped.
    """

    member: bool
    word: tuple[str, ...] | None = None
    run: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.member


def free_rational_member(s: SaturatedNfa, w: FreeWord) -> Membership:
    """Is the reduced word ``w`` in the image of ``s.base``?  With a witness if so."""
    a = s.base
    moves: dict[int, list[tuple[str | None, int, tuple[int, ...]]]] = {q: [] for q in a.states}
    for i, (p, label, q) in enumerate(a.transitions):
        moves[p].append((None if label == EPS else label, q, (i,)))
    for (p, q), path in s.added.items():
        moves[p].append((None, q, path))
    target = tuple(free_symbol(x) for x in w)

    start = (a.initial, 0)
    parent: dict[tuple[int, int], tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        state, pos = node
        if pos == len(target) and state in a.finals:
            pieces = []
            while parent[node] is not None:
                node, path = parent[node]
                pieces.append(path)
            run = tuple(i for path in reversed(pieces) for i in path)
            return Membership(True, s.witness_word(run), run)
        for label, q, path in moves[state]:
            if label is None:
                nxt = (q, pos)
            elif pos < len(target) and label == target[pos]:
                nxt = (q, pos + 1)
            else:
                continue
            if nxt not in parent:
                parent[nxt] = (node, path)
                queue.append(nxt)
    return Membership(False)


@dataclass(frozen=True)
class TrackedNfa:
    """Product of an automaton with A, over free letters only.

    ``pairs[n - 1]`` is the ``(state, finite element)`` pair numbered n and
    ``origin[i]`` the transition of the source automaton behind transition i.
    """

    nfa: Nfa
    pairs: tuple[tuple[int, int], ...]
    origin: tuple[int, ...]

    def number(self, state: int, x: int) -> int:
        return self.pairs.index((state, x)) + 1


def track_finite(g: InstanceGroup, a: Nfa) -> TrackedNfa:
    order = g.finite.order
    pairs = tuple((q, x) for q in sorted(a.states) for x in range(order))
    number = {pair: i for i, pair in enumerate(pairs, start=1)}
    trans = []
    origin = []
    for idx, (p, label, q) in enumerate(a.transitions):
        value = g.symbol_value(label) if label != EPS else g.identity
        out_label = free_symbol(value.free[0]) if value.free else EPS
        for x in range(order):
            y = g.finite.mul(x, value.finite)
            trans.append((number[(p, x)], out_label, number[(q, y)]))
            origin.append(idx)
    finals = frozenset(number[(f, x)] for f in a.finals for x in range(order))
    nfa = Nfa(frozenset(number.values()), number[(a.initial, 0)], finals, tuple(trans))
    return TrackedNfa(nfa, pairs, tuple(origin))


class RationalDecider:
    """Saturates an automaton once and answers membership for many elements."""

    def __init__(self, g: InstanceGroup, a: Nfa):
        self.group = g
        self.automaton = a
        self.tracked = track_finite(g, a)
        self.saturated = benois_saturate(self.tracked.nfa)
        self._index = {pair: i for i, pair in enumerate(self.tracked.pairs, start=1)}

    def query(self, h: HElement) -> Membership:
        finals = {self._index[(f, h.finite)] for f in self.automaton.finals}
        result = free_rational_member(self.saturated.with_finals(finals), h.free)
        if not result:
            return result
        run = tuple(self.tracked.origin[i] for i in result.run)
        word = tuple(
            self.automaton.transitions[i][1]
            for i in run
            if self.automaton.transitions[i][1] != EPS
        )
        return Membership(True, word, run)


def h_rational_member(g: InstanceGroup, a: Nfa, h: HElement) -> Membership:
    """Decide ``h in pi(L(a))``; on success the witness is a word of L(a) evaluating to h."""
    return RationalDecider(g, a).query(h)


@dataclass(frozen=True)
class LoopSubgroup:
    state: int
    elements: tuple[int, ...]
    witnesses: dict[int, tuple[str, ...]]

    def __contains__(self, x: int) -> bool:
        return x in self.elements


def loop_subgroup(g: InstanceGroup, a: Nfa, q: int) -> LoopSubgroup:
    """Finite elements represented by loops at ``q``."""
    decider = RationalDecider(g, loop_nfa(a, q))
    elements = []
    witnesses = {}
    for x in range(g.finite.order):
        result = decider.query(HElement(x, ()))
        if result:
            elements.append(x)
            witnesses[x] = result.word
    return LoopSubgroup(q, tuple(elements), witnesses)


def generated_subgroup(g: InstanceGroup, gens: Iterable[int]) -> frozenset[int]:
    """Closure of ``gens`` (plus the identity) under the table operation."""
    out = {0}
    frontier = list(set(gens))
    while frontier:
        x = frontier.pop()
        for y in list(out):
            z = g.finite.mul(x, y)
            if z not in out:
                out.add(z)
                frontier.append(z)
    return frozenset(out)
