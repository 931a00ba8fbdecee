"""The instance family H = F_k x A with A finite abelian.

Elements of H are kept in a canonical form ``(finite, free)`` where ``finite``
indexes an element of A and ``free`` is a freely reduced word over the free
generators.  Free letters are signed integers: ``+i`` is the generator
``a<i>`` and ``-i`` its inverse.

Symbols are strings.  Free generators are named ``a1`` .. ``ak``, finite
elements carry the names given in the group file, and ``s^-1`` denotes the
inverse of the symbol ``s``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

FreeWord = tuple[int, ...]

EPS = "eps"
INV_SUFFIX = "^-1"
_FREE_SYMBOL = re.compile(r"^a([1-9][0-9]*)$")


class GroupError(ValueError):
    """Raised when a group description or an element literal is invalid."""


def free_reduce(letters: Iterable[int]) -> FreeWord:
    """Freely reduce a sequence of signed letters with a single stack pass."""
    stack: list[int] = []
    for x in letters:
        if x == 0:
            raise GroupError("0 is not a free letter")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def free_mul(u: FreeWord, v: FreeWord) -> FreeWord:
    # only the junction can cancel
    i = 0
    n = min(len(u), len(v))
    while i < n and u[-1 - i] == -v[i]:
        i += 1
    return u[: len(u) - i] + v[i:]


def free_inv(u: FreeWord) -> FreeWord:
    return tuple(-x for x in reversed(u))


def free_symbol(letter: int) -> str:
    return f"a{letter}" if letter > 0 else f"a{-letter}{INV_SUFFIX}"


def format_free_word(u: FreeWord) -> str:
    return " ".join(free_symbol(x) for x in u)


def parse_free_symbol(symbol: str) -> int | None:
    """Return the signed letter for ``a<i>`` / ``a<i>^-1``, or None."""
    inverse = symbol.endswith(INV_SUFFIX)
    base = symbol[: -len(INV_SUFFIX)] if inverse else symbol
    m = _FREE_SYMBOL.match(base)
    if m is None:
        return None
    i = int(m.group(1))
    return -i if inverse else i


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group given by its multiplication table.

    Element 0 is the identity.  ``names[0]`` is only used for display.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    _inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise GroupError("group order must be positive")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError(f"table must be {n}x{n}")
        if any(not (0 <= c < n) for row in self.table for c in row):
            raise GroupError("table entries must be element indices")
        if len(self.names) != n:
            raise GroupError("need one name per element")
        if len(set(self.names)) != n:
            raise GroupError("duplicate element names")
        t = self.table
        for i in range(n):
            if t[0][i] != i or t[i][0] != i:
                raise GroupError("index 0 is not an identity")
        for i in range(n):
            for j in range(n):
                if t[i][j] != t[j][i]:
                    raise GroupError(f"table is not abelian at ({i}, {j})")
        for i in range(n):
            for j in range(n):
                ij = t[i][j]
                for k in range(n):
                    if t[ij][k] != t[i][t[j][k]]:
                        raise GroupError(f"table is not associative at ({i}, {j}, {k})")
        inverse = []
        for i in range(n):
            inv = [j for j in range(n) if t[i][j] == 0]
            if not inv:
                raise GroupError(f"element {i} has no inverse")
            inverse.append(inv[0])
        object.__setattr__(self, "_inverse", tuple(inverse))

    @classmethod
    def cyclic(cls, n: int, names: Sequence[str] | None = None) -> "FiniteAbelianGroup":
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        if names is None:
            names = ["1"] + (["x"] if n == 2 else [f"x{i}" for i in range(1, n)])
        return cls(n, table, tuple(names))

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self._inverse[i]


@dataclass(frozen=True, order=True)
class HElement:
    finite: int
    free: FreeWord = ()

    @property
    def in_finite(self) -> bool:
        """True iff the element lies in the finite subgroup A."""
        return not self.free


@dataclass(frozen=True)
class InstanceGroup:
    """H = F_k x A together with its alphabet and the fixed element k_hat.

    The alphabet consists of ``a1`` .. ``ak`` and one symbol per nontrivial
    element of A.  ``canonical_symbol`` folds every accepted spelling
    (including ``^-1`` forms) onto this alphabet and its free inverses.
    """

    free_rank: int
    finite: FiniteAbelianGroup
    k_hat: str = "a1"
    _finite_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.free_rank < 1:
            raise GroupError("free rank must be at least 1")
        if self.finite.order < 2:
            raise GroupError("finite group must have order at least 2")
        index: dict[str, int] = {}
        for i, name in enumerate(self.finite.names[1:], start=1):
            if (
                not name
                or any(c.isspace() for c in name)
                or "^" in name
                or name in (EPS, "t", "1")
                or parse_free_symbol(name) is not None
            ):
                raise GroupError(f"invalid finite element name {name!r}")
            index[name] = i
        object.__setattr__(self, "_finite_index", index)
        k = self.symbol_value(self.k_hat)
        if k.in_finite:
            raise GroupError(f"k_hat in X: {self.k_hat!r} evaluates into the finite subgroup")

    @property
    def identity(self) -> HElement:
        return HElement(0, ())

    @property
    def k_hat_value(self) -> HElement:
        return self.symbol_value(self.k_hat)

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Canonical letters: free generators, their inverses, finite names."""
        free = []
        for i in range(1, self.free_rank + 1):
            free += [free_symbol(i), free_symbol(-i)]
        return tuple(free) + tuple(self.finite.names[1:])

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(free_symbol(i) for i in range(1, self.free_rank + 1)) + tuple(
            self.finite.names[1:]
        )

    def finite_symbol(self, i: int) -> str:
        return self.finite.names[i]

    def canonical_symbol(self, symbol: str) -> str:
        letter = parse_free_symbol(symbol)
        if letter is not None:
            if abs(letter) > self.free_rank:
                raise GroupError(f"unknown symbol {symbol!r}")
            return free_symbol(letter)
        inverse = symbol.endswith(INV_SUFFIX)
        base = symbol[: -len(INV_SUFFIX)] if inverse else symbol
        if base not in self._finite_index:
            raise GroupError(f"unknown symbol {symbol!r}")
        i = self._finite_index[base]
        return self.finite.names[self.finite.inv(i) if inverse else i]

    def symbol_value(self, symbol: str) -> HElement:
        letter = parse_free_symbol(symbol)
        if letter is not None:
            if abs(letter) > self.free_rank:
                raise GroupError(f"unknown symbol {symbol!r}")
            return HElement(0, (letter,))
        canon = self.canonical_symbol(symbol)
        return HElement(self._finite_index[canon], ())

    def parse_word(self, text: str | Sequence[str]) -> tuple[str, ...]:
        """Split an element literal and canonicalize its symbols."""
        symbols = text.split() if isinstance(text, str) else list(text)
        return tuple(self.canonical_symbol(s) for s in symbols)

    def format(self, h: HElement) -> str:
        parts = []
        if h.finite:
            parts.append(self.finite.names[h.finite])
        if h.free:
            parts.append(format_free_word(h.free))
        return " ".join(parts) if parts else "1"

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "finite_group": {
                "order": self.finite.order,
                "table": [list(r) for r in self.finite.table],
                "names": list(self.finite.names),
            },
            "k_hat": self.k_hat,
        }


def validate_group(
    table: Sequence[Sequence[int]],
    free_rank: int,
    names: Sequence[str] | None = None,
    k_hat: str = "a1",
) -> InstanceGroup:
    """Build an InstanceGroup from raw data, raising GroupError on any defect."""
    try:
        rows = tuple(tuple(int(c) for c in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise GroupError(f"malformed table: {exc}") from None
    n = len(rows)
    if names is None:
        names = ["1"] + (["x"] if n == 2 else [f"x{i}" for i in range(1, n)])
    finite = FiniteAbelianGroup(n, rows, tuple(names))
    return InstanceGroup(int(free_rank), finite, k_hat)


def group_from_dict(data: dict) -> InstanceGroup:
    try:
        fg = data["finite_group"]
        table = fg["table"]
        if "order" in fg and int(fg["order"]) != len(table):
            raise GroupError("finite_group.order does not match the table")
        return validate_group(table, data["free_rank"], fg.get("names"), data.get("k_hat", "a1"))
    except (KeyError, TypeError) as exc:
        raise GroupError(f"malformed group description: {exc!r}") from None


def load_group(path: str | Path) -> InstanceGroup:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupError(f"cannot read group file {path}: {exc}") from None
    return group_from_dict(data)


def h_mul(g: InstanceGroup, u: HElement, v: HElement) -> HElement:
    return HElement(g.finite.mul(u.finite, v.finite), free_mul(u.free, v.free))


def h_inv(g: InstanceGroup, u: HElement) -> HElement:
    return HElement(g.finite.inv(u.finite), free_inv(u.free))


def eval_word(g: InstanceGroup, word: str | Sequence[str]) -> HElement:
    """Evaluate a word over the alphabet (``eps`` letters are skipped)."""
    symbols = word.split() if isinstance(word, str) else word
    finite = 0
    letters: list[int] = []
    for s in symbols:
        if s == EPS:
            continue
        v = g.symbol_value(s)
        finite = g.finite.mul(finite, v.finite)
        letters.extend(v.free)
    return HElement(finite, free_reduce(letters))


def parse_element(g: InstanceGroup, text: str) -> HElement:
    return eval_word(g, g.parse_word(text))


def z_times_z2() -> InstanceGroup:
    """H = Z x Z/2 with alphabet {a1, x}."""
    return InstanceGroup(1, FiniteAbelianGroup.cyclic(2))


def f2_times_z2() -> InstanceGroup:
    """H = F_2 x Z/2 with alphabet {a1, a2, x}."""
    return InstanceGroup(2, FiniteAbelianGroup.cyclic(2))
