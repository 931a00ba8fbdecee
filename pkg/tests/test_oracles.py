import random

from ratsub.automata import nfa_over
from ratsub.group_core import HElement
from ratsub.hnn import IDENTITY, bracket, hnn_product, parse_hnn
from ratsub.oracles import default_max_syllables, enumerate_image, submonoid_bfs
from ratsub.reduction import lemma_main_reduce

from conftest import random_nfa


def test_identity_target(zz2):
    res = submonoid_bfs(zz2, [bracket(zz2, 1)], IDENTITY, 0)
    assert res.found and res.certificate == ()


def test_single_generator_power(zz2):
    d = parse_hnn(zz2, "t a1 t^-1")
    res = submonoid_bfs(zz2, [d], hnn_product(zz2, [d, d, d]), 5)
    assert res.found and res.certificate == (0, 0, 0)
    assert res.outcome == "found"


def test_worked_instance(zz2, worked):
    r = lemma_main_reduce(zz2, worked, HElement(1, (1,)))
    res = submonoid_bfs(zz2, r.delta, r.g, 8)
    assert res.found and len(res.certificate) == 2
    assert hnn_product(zz2, [r.delta[i] for i in res.certificate]) == r.g


def test_not_within_bound(zz2, worked):
    r = lemma_main_reduce(zz2, worked, HElement(0, (-1,)))
    res = submonoid_bfs(zz2, r.delta, r.g, 6)
    assert not res.found and res.outcome == "not-within-bound"
    again = submonoid_bfs(zz2, r.delta, r.g, 6)
    assert again.explored == res.explored


def test_default_syllable_cap(zz2, worked):
    r = lemma_main_reduce(zz2, worked, zz2.identity)
    assert default_max_syllables(r.delta, r.g, 3) == 2 * 2 * 4


def test_bfs_monotone_in_bounds(f2z2):
    rng = random.Random(31)
    for _ in range(40):
        a = random_nfa(rng, f2z2, max_states=3)
        h = HElement(rng.randrange(2), tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 1))))
        r = lemma_main_reduce(f2z2, a, h)
        small = submonoid_bfs(f2z2, r.delta, r.g, 3, 16)
        if small.found:
            assert submonoid_bfs(f2z2, r.delta, r.g, 4, 16).found
            assert submonoid_bfs(f2z2, r.delta, r.g, 3, 24).found
            assert hnn_product(f2z2, [r.delta[i] for i in small.certificate]) == r.g


def test_enumerate_examples(zz2):
    eps_only = nfa_over(zz2, [1], 1, [1], [])
    assert enumerate_image(zz2, eps_only, 3) == {zz2.identity}
    a = nfa_over(zz2, [1, 2], 1, [2], [(1, "a1", 2), (2, "x", 2)])
    assert enumerate_image(zz2, a, 3) == {HElement(0, (1,)), HElement(1, (1,))}
    assert enumerate_image(zz2, a, 0) == set()


def test_enumerate_monotone(f2z2):
    rng = random.Random(32)
    for _ in range(40):
        a = random_nfa(rng, f2z2)
        prev = set()
        for n in range(5):
            cur = enumerate_image(f2z2, a, n)
            assert prev <= cur
            prev = cur
