"""Brute-force engines used as ground truth."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Nfa
from .group_core import EPS, HElement, InstanceGroup, h_mul
from .hnn import IDENTITY, HnnElement, hnn_mul


@dataclass(frozen=True)
class BfsResult:
    found: bool
    certificate: tuple[int, ...] | None
    explored: int
    max_factors: int
    max_syllables: int

    @property
    def outcome(self) -> str:
        return "found" if self.found else "not-within-bound"


def default_max_syllables(delta: Sequence[HnnElement], target: HnnElement, max_factors: int) -> int:
    """``2 * height * (max_factors + 1)`` where height is the largest t-depth seen.

    For bracket-shaped generators ``t^q k t^-q ...`` the t-depth is the state
    index, so this is the state-based default.  Heuristic only.
    """
    height = max([target.max_height] + [d.max_height for d in delta] + [1])
    return 2 * height * (max_factors + 1)


def submonoid_bfs(
    g: InstanceGroup,
    delta: Sequence[HnnElement],
    target: HnnElement,
    max_factors: int,
    max_syllables: int | None = None,
) -> BfsResult:
    """Breadth-first search for ``target`` among products of ``delta``.

    Products are deduplicated by normal form and dropped once their t-length
    exceeds ``max_syllables``.  Generators are tried in index order, so the
    certificate (a list of delta indices) is deterministic.
    """
    if max_factors < 0:
        raise ValueError("max_factors must be >= 0")
    if max_syllables is None:
        max_syllables = default_max_syllables(delta, target, max_factors)

    def result(found: bool, cert=None) -> BfsResult:
        return BfsResult(found, cert, len(parent), max_factors, max_syllables)

    parent: dict[HnnElement, tuple[HnnElement, int] | None] = {IDENTITY: None}
    if target == IDENTITY:
        return result(True, ())
    # identical generators add nothing; keep the first index
    gens: list[tuple[int, HnnElement]] = []
    seen_gens = set()
    for i, d in enumerate(delta):
        if d not in seen_gens and d != IDENTITY:
            seen_gens.add(d)
            gens.append((i, d))

    frontier = [IDENTITY]
    for _ in range(max_factors):
        nxt = []
        for u in frontier:
            for i, d in gens:
                v = hnn_mul(g, u, d)
                if v in parent or v.t_length > max_syllables:
                    continue
                parent[v] = (u, i)
                if v == target:
                    cert = []
                    node = v
                    while parent[node] is not None:
                        node, j = parent[node]
                        cert.append(j)
                    return result(True, tuple(reversed(cert)))
                nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return result(False)


def enumerate_image(g: InstanceGroup, a: Nfa, max_len: int) -> set[HElement]:
    """Values of all accepted words with at most ``max_len`` non-eps letters."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    values = {label: (g.identity if label == EPS else g.symbol_value(label))
              for _, label, _ in a.transitions}
    letters_from: dict[int, list[tuple[HElement, int]]] = {q: [] for q in a.states}
    for p, label, q in a.transitions:
        if label != EPS:
            letters_from[p].append((values[label], q))

    # eps moves do not change the value, so a state-level closure suffices
    reach = {q: a.eps_closure({q}) for q in a.states}

    def closure(configs: set[tuple[int, HElement]]) -> set[tuple[int, HElement]]:
        return {(q, h) for state, h in configs for q in reach[state]}

    layer = closure({(a.initial, g.identity)})
    image = {h for q, h in layer if q in a.finals}
    for _ in range(max_len):
        step = {(q, h_mul(g, h, v)) for state, h in layer for v, q in letters_from[state]}
        layer = closure(step)
        if not layer:
            break
        image |= {h for q, h in layer if q in a.finals}
    return image
