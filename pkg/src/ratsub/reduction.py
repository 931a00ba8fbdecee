"""From rational subset membership in H to submonoid membership in G.

For an automaton with a single final state q_f, each transition (q, c, p)
gives the generator ``[q] c [p]^-1`` and the target is
``[q0] h [q_f]^-1``, where ``[q] = t^q k t^-q``.  Accepting runs for h turn
into products of generators equal to the target; the converse holds up to
loops with finite values, which the admissible-subset automata absorb.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .automata import (
    AutomatonError,
    Nfa,
    Transition,
    admissible_subsets,
    build_AP,
    find_run,
    normalize_single_final,
    run_states,
    trim,
)
from .deciders import Membership
from .group_core import EPS, HElement, InstanceGroup, eval_word, free_mul
from .hnn import HnnElement, bracket, bracket_inv, embed_h, hnn_mul, hnn_product
from .oracles import BfsResult, submonoid_bfs


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionOutput:
    """Generators ``delta`` (one per transition of ``automaton``) and target ``g``.

    ``automaton`` is the single-final automaton the construction ran on and
    ``state_map`` sends the caller's state names to its states.
    """

    delta: tuple[HnnElement, ...]
    g: HnnElement
    automaton: Nfa
    h: HElement
    state_map: dict = field(default_factory=dict)

    @property
    def transitions(self) -> tuple[Transition, ...]:
        return self.automaton.transitions

    @property
    def q0(self) -> int:
        return self.automaton.initial

    @property
    def qf(self) -> int:
        (qf,) = self.automaton.finals
        return qf


@dataclass(frozen=True)
class Certificate:
    factors: tuple[int, ...]
    product: HnnElement


def transition_generator(g: InstanceGroup, q: int, label: str, p: int) -> HnnElement:
    c = g.identity if label == EPS else g.symbol_value(label)
    return hnn_mul(g, hnn_mul(g, bracket(g, q), embed_h(c)), bracket_inv(g, p))


def lemma_main_reduce(
    g: InstanceGroup, a: Nfa, h: HElement, state_map: dict | None = None
) -> ReductionOutput:
    b = normalize_single_final(a)
    delta = tuple(transition_generator(g, q, c, p) for q, c, p in b.transitions)
    (qf,) = b.finals
    target = hnn_mul(g, hnn_mul(g, bracket(g, b.initial), embed_h(h)), bracket_inv(g, qf))
    if state_map is None:
        state_map = {q: q for q in a.states}
    return ReductionOutput(delta, target, b, h, dict(state_map))


def certificate_product(g: InstanceGroup, r: ReductionOutput, factors: Iterable[int]) -> HnnElement:
    return hnn_product(g, (r.delta[i] for i in factors))


def verify_certificate(g: InstanceGroup, r: ReductionOutput, cert: Certificate) -> bool:
    """Factors must name transitions and multiply out to ``r.g``."""
    if any(not (0 <= i < len(r.transitions)) for i in cert.factors):
        return False
    product = certificate_product(g, r, cert.factors)
    return product == cert.product == r.g


def certificate_from_run(
    g: InstanceGroup,
    r: ReductionOutput,
    run: Sequence[int],
    loops: Sequence[tuple[int, Sequence[str]]] = (),
) -> Certificate:
    """Certificate for ``r.g`` from an accepting run plus loops with finite values.

    ``run`` holds transition indices of ``r.automaton`` starting at q0.  It may
    stop at a final state of the automaton before normalization; the eps move
    into the added final state is then appended.  Loop factors come first,
    which is harmless since their values are central.
    """
    b = r.automaton
    run = list(run)
    try:
        states = run_states(b, run)
    except (AutomatonError, IndexError):
        raise CertificateError("run is not a path") from None
    if states[0] != r.q0:
        raise CertificateError("run does not start at the initial state")
    if states[-1] != r.qf:
        closing = [
            i for i, (p, label, q) in enumerate(b.transitions)
            if p == states[-1] and label == EPS and q == r.qf
        ]
        if not closing:
            raise CertificateError("run does not end in a final state")
        run.append(closing[0])

    factors: list[int] = []
    for q, word in loops:
        word = tuple(word.split() if isinstance(word, str) else word)
        if q not in b.states:
            raise CertificateError(f"loop state {q} unknown")
        if not eval_word(g, word).in_finite:
            raise CertificateError(f"loop word {' '.join(word)!r} is not in the finite subgroup")
        path = find_run(b, word, q, {q})
        if path is None:
            raise CertificateError(f"{' '.join(word)!r} does not label a loop at {q}")
        factors.extend(path)
    factors.extend(run)

    product = certificate_product(g, r, factors)
    if product != r.g:
        raise CertificateError("certificate product differs from the target")
    return Certificate(tuple(factors), product)


class XCycleReport(tuple):
    """``(free, factor)``: whether no X-cycle occurs, and the first one found."""

    def __new__(cls, free: bool, factor: tuple[int, int] | None):
        return super().__new__(cls, (free, factor))

    @property
    def free(self) -> bool:
        return self[0]

    @property
    def factor(self) -> tuple[int, int] | None:
        return self[1]

    def __bool__(self) -> bool:
        return self[0]


def x_cycle_free(
    g: InstanceGroup, triples: Sequence[tuple[int, Sequence[str] | str, int]]
) -> XCycleReport:
    """Look for a factor ``[q_j] h_j [p_j]^-1 ... [q_l] h_l [p_l]^-1`` that is an X-cycle.

    Factors are scanned by start index, then end index.
    """
    values = [eval_word(g, word) for _, word, _ in triples]
    n = len(triples)
    for j in range(n):
        acc = g.identity
        for l in range(j, n):
            if l > j and triples[l - 1][2] != triples[l][0]:
                break
            v = values[l]
            acc = HElement(g.finite.mul(acc.finite, v.finite), free_mul(acc.free, v.free))
            if triples[l][2] == triples[j][0] and acc.in_finite:
                return XCycleReport(False, (j, l))
    return XCycleReport(True, None)


def admissible_reduction(
    g: InstanceGroup, a: Nfa, P: Sequence[int], h: HElement, trim_states: bool = True
) -> ReductionOutput:
    """Run the reduction on the visited-set automaton for ``P``.

    ``state_map`` of the result sends pairs ``(q, R)`` to states.  With
    ``trim_states`` the pairs that lie on no accepting path are dropped first.
    """
    ap, number = build_AP(a, P)
    if trim_states:
        ap, renum = trim(ap)
        number = {pair: renum[n] for pair, n in number.items() if n in renum}
    return lemma_main_reduce(g, ap, h, state_map=number)


def lift_run(a: Nfa, r: ReductionOutput, run: Sequence[int]) -> list[int]:
    """Translate a run of ``a`` into the visited-set automaton behind ``r``."""
    b = r.automaton
    index: dict[Transition, int] = {}
    for i, t in enumerate(b.transitions):
        index.setdefault(t, i)
    q = a.initial
    R = frozenset({q})
    out = []
    for i in run:
        p, label, q2 = a.transitions[i]
        if p != q:
            raise CertificateError("run is not a path")
        R2 = R | {q2}
        try:
            t = (r.state_map[(q, R)], label, r.state_map[(q2, R2)])
            out.append(index[t])
        except KeyError:
            raise CertificateError("run leaves the visited-set automaton") from None
        q, R = q2, R2
    return out


def certificate_for_witness(
    g: InstanceGroup,
    a: Nfa,
    h: HElement,
    witness: Membership,
    loops: Sequence[tuple[tuple[int, frozenset[int]], Sequence[str]]] = (),
    trim_states: bool = True,
) -> tuple[tuple[int, ...], ReductionOutput, Certificate]:
    """Constructive certificate from a decider witness, with no search.

    ``witness.run`` must be an accepting run of ``a``; P is its visit set.
    ``loops`` name states of the visited-set automaton as pairs ``(q, R)``.
    """
    P = tuple(sorted(set(run_states(a, witness.run)) if witness.run else {a.initial}))
    r = admissible_reduction(g, a, P, h, trim_states)
    lifted = lift_run(a, r, witness.run)
    mapped = [(r.state_map[pair], word) for pair, word in loops]
    return P, r, certificate_from_run(g, r, lifted, mapped)


Oracle = Callable[[ReductionOutput], BfsResult]


def chain_bound(r: ReductionOutput) -> int:
    """Largest t-length of a product ``[q0] w [q]^-1`` over the states of ``r``.

    Every prefix of a certificate built from a run has this shape, so pruning
    at this length keeps all run certificates.
    """
    return 2 * (r.q0 + r.automaton.max_state)


@dataclass(frozen=True)
class PVerdict:
    P: tuple[int, ...]
    reduction: ReductionOutput
    search: BfsResult

    @property
    def certificate(self) -> Certificate | None:
        if not self.search.found:
            return None
        return Certificate(self.search.certificate, self.reduction.g)


@dataclass(frozen=True)
class AdmissibleVerdict:
    per_P: tuple[PVerdict, ...]

    @property
    def member(self) -> bool:
        return any(v.search.found for v in self.per_P)

    @property
    def aggregate(self) -> str:
        return "member" if self.member else "not-within-bound"

    @property
    def witness(self) -> PVerdict | None:
        return next((v for v in self.per_P if v.search.found), None)


def rational_member_via_admissible(
    g: InstanceGroup,
    a: Nfa,
    h: HElement,
    oracle: Oracle | None = None,
    max_factors: int = 8,
    max_syllables: int | None = None,
    trim_states: bool = True,
) -> AdmissibleVerdict:
    """Ask the submonoid oracle about the reduction of every admissible P.

    The default oracle is ``submonoid_bfs`` with ``max_factors`` and a t-length
    cap of ``max_syllables`` (``chain_bound`` of each reduction when None).
    """
    if oracle is None:
        def oracle(r: ReductionOutput) -> BfsResult:
            cap = chain_bound(r) if max_syllables is None else max_syllables
            return submonoid_bfs(g, r.delta, r.g, max_factors, cap)

    verdicts = []
    for P in admissible_subsets(a):
        r = admissible_reduction(g, a, P, h, trim_states)
        verdicts.append(PVerdict(P, r, oracle(r)))
    return AdmissibleVerdict(tuple(verdicts))
