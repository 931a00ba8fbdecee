import random
from itertools import product

import pytest

from ratsub.automata import Nfa, nfa_over
from ratsub.group_core import (
    EPS,
    FiniteAbelianGroup,
    HElement,
    InstanceGroup,
    f2_times_z2,
    free_reduce,
    z_times_z2,
)


@pytest.fixture
def zz2():
    return z_times_z2()


@pytest.fixture
def f2z2():
    return f2_times_z2()


@pytest.fixture
def worked(zz2):
    """L = a1 x* over Z x Z/2."""
    return nfa_over(zz2, [1, 2], 1, [2], [(1, "a1", 2), (2, "x", 2)])


def klein_four() -> FiniteAbelianGroup:
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return FiniteAbelianGroup(4, tuple(map(tuple, table)), ("1", "u", "v", "w"))


def small_groups() -> list[InstanceGroup]:
    """Rank <= 2, finite order <= 4."""
    finites = [FiniteAbelianGroup.cyclic(2), FiniteAbelianGroup.cyclic(3),
               FiniteAbelianGroup.cyclic(4), klein_four()]
    return [InstanceGroup(k, f) for k in (1, 2) for f in finites]


def random_h(rng: random.Random, g: InstanceGroup, max_len: int = 6) -> HElement:
    letters = [rng.choice([1, -1]) * rng.randint(1, g.free_rank) for _ in range(rng.randint(0, max_len))]
    return HElement(rng.randrange(g.finite.order), free_reduce(letters))


def random_nfa(
    rng: random.Random,
    g: InstanceGroup,
    max_states: int = 4,
    labels=None,
    eps_weight: float = 0.15,
    max_transitions: int | None = None,
) -> Nfa:
    n = rng.randint(1, max_states)
    states = list(range(1, n + 1))
    labels = list(labels if labels is not None else g.alphabet)
    count = rng.randint(0, max_transitions if max_transitions is not None else 2 * n + 1)
    trans = []
    for _ in range(count):
        label = EPS if rng.random() < eps_weight else rng.choice(labels)
        trans.append((rng.choice(states), label, rng.choice(states)))
    finals = [q for q in states if rng.random() < 0.4] or [rng.choice(states)]
    return nfa_over(g, states, 1, finals, trans)


def all_words(alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


def path_runs(a: Nfa, word, start=None):
    """Brute force: all (end state, visited set) over paths labelled ``word``.

    Eps moves are bounded by the number of states between letters, which is
    enough to reach every eps-reachable state.
    """
    start = a.initial if start is None else start
    limit = len(a.states)
    results = set()

    def go(state, pos, visited, eps_run):
        if pos == len(word):
            results.add((state, frozenset(visited)))
        for p, label, q in a.transitions:
            if p != state:
                continue
            if label == EPS:
                if eps_run < limit:
                    go(q, pos, visited | {q}, eps_run + 1)
            elif pos < len(word) and label == word[pos]:
                go(q, pos + 1, visited | {q}, 0)

    go(start, 0, {start}, 0)
    return results


def naive_accepts(a: Nfa, word) -> bool:
    return any(state in a.finals for state, _ in path_runs(a, word))


def reduced_words(rank: int, max_len: int):
    letters = [i for k in range(1, rank + 1) for i in (k, -k)]
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for x in letters:
                if not w or w[-1] != -x:
                    nxt.append(w + (x,))
        out += nxt
        frontier = nxt
    return out


CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
