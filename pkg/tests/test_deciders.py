import random

import pytest

from ratsub.automata import AutomatonError, Nfa, accepts, loop_nfa, nfa_over
from ratsub.deciders import (
    benois_saturate,
    free_rational_member,
    generated_subgroup,
    h_rational_member,
    loop_subgroup,
    track_finite,
)
from ratsub.group_core import EPS, HElement, eval_word, free_reduce, parse_free_symbol
from ratsub.oracles import enumerate_image

from conftest import all_words, path_runs, random_nfa, reduced_words, small_groups


def free_nfa(states, initial, finals, transitions):
    return Nfa(frozenset(states), initial, frozenset(finals), tuple(transitions))


def test_single_saturation_step():
    s = benois_saturate(free_nfa([1, 2, 3], 1, [3], [(1, "a1", 2), (2, "a1^-1", 3)]))
    assert s.added == {(1, 3): (0, 1)}
    assert s.witness_word(s.added[(1, 3)]) == ("a1", "a1^-1")


def test_no_inverse_pairs_no_additions():
    s = benois_saturate(free_nfa([1, 2, 3], 1, [3], [(1, "a1", 2), (2, "a2", 3), (3, "a1", 1)]))
    assert s.added == {}


def test_non_free_label_rejected():
    with pytest.raises(AutomatonError):
        benois_saturate(free_nfa([1], 1, [1], [(1, "x", 1)]))


def test_saturation_witnesses_and_fixpoint():
    rng = random.Random(21)
    labels = ["a1", "a1^-1", "a2", "a2^-1"]
    from ratsub.group_core import f2_times_z2

    g = f2_times_z2()
    for _ in range(100):
        a = random_nfa(rng, g, max_states=5, labels=labels)
        a = free_nfa(a.states, a.initial, a.finals, a.transitions)
        s = benois_saturate(a)
        for (p, q), path in s.added.items():
            ends = [a.transitions[path[0]][0], a.transitions[path[-1]][2]]
            assert ends == [p, q]
            for i, j in zip(path, path[1:]):
                assert a.transitions[i][2] == a.transitions[j][0]
            assert free_reduce(parse_free_symbol(x) for x in s.witness_word(path)) == ()
        assert len(s.added) <= len(a.states) ** 2
        # fixpoint: saturating again with the added edges as real eps-edges adds nothing new
        extended = free_nfa(a.states, a.initial, a.finals,
                            a.transitions + tuple((p, EPS, q) for p, q in s.added))
        again = benois_saturate(extended)
        assert set(again.added) <= set(s.added) | {(p, q) for p, l, q in a.transitions if l == EPS}


def test_free_member_examples():
    s = benois_saturate(free_nfa([1, 2, 3], 1, [3], [(1, "a1", 2), (2, "a1^-1", 3)]))
    m = free_rational_member(s, ())
    assert m and m.word == ("a1", "a1^-1")
    s = benois_saturate(free_nfa([1, 2, 3, 4], 1, [4], [(1, "a1", 2), (2, "a1^-1", 3), (3, "a1", 4)]))
    m = free_rational_member(s, (1,))
    assert m and m.word == ("a1", "a1^-1", "a1")
    s = benois_saturate(free_nfa([1, 2], 1, [2], [(1, "a1", 2)]))
    assert not free_rational_member(s, (2,))


def test_free_member_agrees_with_enumeration():
    from ratsub.group_core import f2_times_z2

    g = f2_times_z2()
    rng = random.Random(22)
    labels = ["a1", "a1^-1", "a2", "a2^-1"]
    words = reduced_words(2, 3)
    for _ in range(60):
        a = random_nfa(rng, g, max_states=4, labels=labels)
        s = benois_saturate(free_nfa(a.states, a.initial, a.finals, a.transitions))
        image = {h.free for h in enumerate_image(g, a, 9)}
        for w in words:
            m = free_rational_member(s, w)
            if w in image:
                assert m
            if m:
                assert free_reduce(parse_free_symbol(x) for x in m.word) == w


def test_h_member_examples(zz2, worked):
    m = h_rational_member(zz2, worked, HElement(1, (1,)))
    assert m and m.word == ("a1", "x")
    assert not h_rational_member(zz2, worked, HElement(0, (-1,)))
    eps_only = nfa_over(zz2, [1], 1, [1], [])
    m = h_rational_member(zz2, eps_only, zz2.identity)
    assert m and m.word == ()


def test_h_member_examples_by_enumeration(zz2, worked):
    words = [w for w in all_words(["a1", "a1^-1", "x"], 4) if accepts(worked, w)]
    values = {eval_word(zz2, w) for w in words}
    assert HElement(1, (1,)) in values
    assert HElement(0, (-1,)) not in values


def test_tracked_product_reaches_pairs(zz2):
    rng = random.Random(23)
    alphabet = ["a1", "a1^-1", "x"]
    for _ in range(30):
        a = random_nfa(rng, zz2, labels=alphabet)
        tr = track_finite(zz2, a)
        pair_of = {i: pair for i, pair in enumerate(tr.pairs, start=1)}
        for w in all_words(alphabet, 3):
            x = eval_word(zz2, w).finite
            free = tuple(s for s in w if s != "x")
            reached = {pair_of[s] for s, _ in path_runs(tr.nfa, free)}
            expected = {(q, x) for q, _ in path_runs(a, w)}
            assert expected <= reached


def test_witness_contract_random():
    rng = random.Random(24)
    for _ in range(150):
        g = rng.choice(small_groups())
        a = random_nfa(rng, g)
        for x in range(g.finite.order):
            for w in reduced_words(g.free_rank, 2):
                h = HElement(x, w)
                m = h_rational_member(g, a, h)
                if m:
                    assert accepts(a, m.word)
                    assert eval_word(g, m.word) == h


def test_loop_subgroup_examples(zz2):
    a = nfa_over(zz2, [1, 2], 1, [2], [(1, "a1", 2), (2, "x", 2)])
    ls = loop_subgroup(zz2, a, 2)
    assert ls.elements == (0, 1)
    assert ls.witnesses == {0: (), 1: ("x",)}
    assert loop_subgroup(zz2, a, 1).elements == (0,)


def test_loop_subgroup_by_enumeration(zz2):
    a = nfa_over(zz2, [1, 2], 1, [2], [(1, "a1", 2), (2, "x", 2)])
    values = {eval_word(zz2, w) for w in all_words(["a1", "x"], 2) if accepts(loop_nfa(a, 2), w)}
    assert {v.finite for v in values if v.in_finite} == {0, 1}


def test_loop_subgroup_closed():
    rng = random.Random(25)
    for _ in range(100):
        g = rng.choice(small_groups())
        a = random_nfa(rng, g)
        for q in sorted(a.states):
            ls = loop_subgroup(g, a, q)
            assert 0 in ls
            assert generated_subgroup(g, ls.elements) == set(ls.elements)
            for x, word in ls.witnesses.items():
                assert eval_word(g, word) == HElement(x, ())
                assert accepts(loop_nfa(a, q), word)
