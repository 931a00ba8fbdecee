"""Deterministic random instances (automaton, element) for end-to-end checks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automata import Nfa, nfa_over
from .group_core import EPS, HElement, InstanceGroup, eval_word, f2_times_z2, z_times_z2

GROUPS = {"ZxZ2": z_times_z2, "F2xZ2": f2_times_z2}


@dataclass(frozen=True)
class Instance:
    index: int
    group_name: str
    group: InstanceGroup
    automaton: Nfa
    element: str

    @property
    def h(self) -> HElement:
        return eval_word(self.group, self.element.split())


def random_automaton(
    rng: random.Random,
    g: InstanceGroup,
    max_states: int = 4,
    eps_weight: float = 0.1,
    labels: tuple[str, ...] | None = None,
) -> Nfa:
    n = rng.randint(1, max_states)
    states = list(range(1, n + 1))
    labels = labels if labels is not None else g.alphabet
    transitions = []
    for _ in range(rng.randint(1, 2 * n + 1)):
        label = EPS if rng.random() < eps_weight else rng.choice(labels)
        transitions.append((rng.choice(states), label, rng.choice(states)))
    finals = [q for q in states if rng.random() < 0.4] or [rng.choice(states)]
    return nfa_over(g, states, 1, finals, transitions)


def random_accepted_word(rng: random.Random, a: Nfa, max_len: int) -> list[str] | None:
    """A random walk from the initial state, cut at a random visit to a final state."""
    state = a.initial
    word: list[str] = []
    candidates = [list(word)] if state in a.finals else []
    steps = 0
    while steps < 3 * max_len:
        out = [t for t in a.transitions if t[0] == state]
        if not out:
            break
        _, label, state = rng.choice(out)
        steps += 1
        if label != EPS:
            if len(word) == max_len:
                break
            word.append(label)
        if state in a.finals:
            candidates.append(list(word))
    return rng.choice(candidates) if candidates else None


def generate_corpus(seed: int, count: int = 240, max_states: int = 4, max_len: int = 4) -> list[Instance]:
    rng = random.Random(seed)
    names = sorted(GROUPS)
    out = []
    for i in range(count):
        name = names[i % len(names)]
        g = GROUPS[name]()
        a = random_automaton(rng, g, max_states)
        word = random_accepted_word(rng, a, max_len) if rng.random() < 0.5 else None
        if word is None:
            word = [rng.choice(g.alphabet) for _ in range(rng.randint(0, max_len))]
        out.append(Instance(i, name, g, a, " ".join(word)))
    return out
