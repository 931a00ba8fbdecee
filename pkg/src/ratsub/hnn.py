"""Arithmetic in G = <H, t | t^-1 x t = x (x in A)> for H = F_k x A.

Since A is central in G, every element has a unique form

    x . w0 t^e1 w1 t^e2 ... t^en wn

with ``x`` in A, each ``wi`` a reduced free word, and no pinch: whenever
``e_i != e_(i+1)`` the word between them is nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .group_core import (
    FreeWord,
    HElement,
    InstanceGroup,
    format_free_word,
    free_inv,
    free_mul,
    free_reduce,
)


@dataclass(frozen=True)
class HnnElement:
    finite: int
    words: tuple[FreeWord, ...] = ((),)
    signs: tuple[int, ...] = ()

    @property
    def t_length(self) -> int:
        return len(self.signs)

    @property
    def syllables(self) -> tuple:
        """The alternating sequence w0, e1, w1, ..., en, wn."""
        out: list = [self.words[0]]
        for e, w in zip(self.signs, self.words[1:]):
            out += [e, w]
        return tuple(out)

    @property
    def max_height(self) -> int:
        """Largest absolute running t-exponent along the normal form."""
        h = best = 0
        for e in self.signs:
            h += e
            best = max(best, abs(h))
        return best

    def is_reduced(self) -> bool:
        if len(self.words) != len(self.signs) + 1:
            return False
        if any(e not in (1, -1) for e in self.signs):
            return False
        if any(free_reduce(w) != w for w in self.words):
            return False
        return all(
            self.words[i] or self.signs[i - 1] == self.signs[i] for i in range(1, len(self.signs))
        )


IDENTITY = HnnElement(0)


def britton_reduce(
    finite: int,
    words: Sequence[Iterable[int]],
    signs: Sequence[int],
) -> HnnElement:
    """Normal form of ``finite . words[0] t^signs[0] words[1] ...``.

    Words may be unreduced.  Pinches are removed with a stack, so a pinch
    exposed by an earlier cancellation is caught when the next t arrives.
    """
    if len(words) != len(signs) + 1:
        raise ValueError("need exactly one more word than t-letters")
    out_words: list[FreeWord] = [free_reduce(words[0])]
    out_signs: list[int] = []
    for e, w in zip(signs, words[1:]):
        if e not in (1, -1):
            raise ValueError(f"t exponent must be +-1, got {e}")
        if out_signs and not out_words[-1] and out_signs[-1] == -e:
            out_words.pop()
            out_signs.pop()
            out_words[-1] = free_mul(out_words[-1], free_reduce(w))
        else:
            out_signs.append(e)
            out_words.append(free_reduce(w))
    return HnnElement(finite, tuple(out_words), tuple(out_signs))


def hnn_mul(g: InstanceGroup, u: HnnElement, v: HnnElement) -> HnnElement:
    finite = g.finite.mul(u.finite, v.finite)
    if not v.signs:
        return HnnElement(finite, u.words[:-1] + (free_mul(u.words[-1], v.words[0]),), u.signs)
    words = list(u.words[:-1]) + [free_mul(u.words[-1], v.words[0])]
    signs = list(u.signs)
    # cancel pinches at the junction, then append the (already reduced) rest of v
    j = 0
    while j < len(v.signs) and signs and not words[-1] and signs[-1] == -v.signs[j]:
        words.pop()
        signs.pop()
        words[-1] = free_mul(words[-1], v.words[j + 1])
        j += 1
    return HnnElement(finite, tuple(words) + v.words[j + 1 :], tuple(signs) + v.signs[j:])


def hnn_inv(g: InstanceGroup, u: HnnElement) -> HnnElement:
    return HnnElement(
        g.finite.inv(u.finite),
        tuple(free_inv(w) for w in reversed(u.words)),
        tuple(-e for e in reversed(u.signs)),
    )


def hnn_product(g: InstanceGroup, factors: Iterable[HnnElement]) -> HnnElement:
    out = IDENTITY
    for f in factors:
        out = hnn_mul(g, out, f)
    return out


def embed_h(h: HElement) -> HnnElement:
    return HnnElement(h.finite, (h.free,), ())


def embed_t(power: int) -> HnnElement:
    e = 1 if power >= 0 else -1
    return HnnElement(0, ((),) * (abs(power) + 1), (e,) * abs(power))


def to_h(u: HnnElement) -> HElement | None:
    """The H-element equal to ``u``, or None when ``u`` is not in H."""
    if u.signs:
        return None
    return HElement(u.finite, u.words[0])


def bracket(g: InstanceGroup, q: int) -> HnnElement:
    """``t^q k t^-q`` for the instance's fixed element k."""
    if q < 1:
        raise ValueError(f"bracket index must be >= 1, got {q}")
    k = g.k_hat_value
    return HnnElement(k.finite, ((),) * q + (k.free,) + ((),) * q, (1,) * q + (-1,) * q)


def bracket_inv(g: InstanceGroup, q: int) -> HnnElement:
    return hnn_inv(g, bracket(g, q))


def format_hnn(g: InstanceGroup, u: HnnElement) -> str:
    parts = []
    if u.finite:
        parts.append(g.finite.names[u.finite])
    for i, w in enumerate(u.words):
        if i:
            parts.append("t" if u.signs[i - 1] == 1 else "t^-1")
        if w:
            parts.append(format_free_word(w))
    return " ".join(parts) if parts else "1"


def parse_hnn(g: InstanceGroup, text: str) -> HnnElement:
    """Parse a word over the alphabet plus ``t`` / ``t^-1`` into normal form."""
    finite = 0
    words: list[list[int]] = [[]]
    signs: list[int] = []
    for s in text.split():
        if s == "1":
            continue
        if s in ("t", "t^-1"):
            signs.append(1 if s == "t" else -1)
            words.append([])
            continue
        v = g.symbol_value(s)
        finite = g.finite.mul(finite, v.finite)
        words[-1].extend(v.free)
    return britton_reduce(finite, words, signs)


@dataclass(frozen=True)
class ShapeReport:
    t_length: int
    first_sign: int | None
    last_sign: int | None

    @property
    def ok(self) -> bool:
        return self.t_length >= 1 and self.first_sign == 1 and self.last_sign == -1


def claim1_shape(
    g: InstanceGroup, ps: Sequence[int], qs: Sequence[int]
) -> tuple[HnnElement, ShapeReport]:
    """Normal form of ``prod [p_i]^-1 [q_i]`` and whether it runs from t to t^-1."""
    if len(ps) != len(qs) or not ps:
        raise ValueError("ps and qs must be nonempty and of equal length")
    if any(p < 1 for p in ps) or any(q < 1 for q in qs):
        raise ValueError("states must be >= 1")
    if any(p == q for p, q in zip(ps, qs)):
        raise ValueError("need p_i != q_i")
    if any(qs[i] == ps[i + 1] for i in range(len(ps) - 1)):
        raise ValueError("need q_i != p_(i+1)")
    u = IDENTITY
    for p, q in zip(ps, qs):
        u = hnn_mul(g, u, bracket_inv(g, p))
        u = hnn_mul(g, u, bracket(g, q))
    report = ShapeReport(
        u.t_length,
        u.signs[0] if u.signs else None,
        u.signs[-1] if u.signs else None,
    )
    return u, report
