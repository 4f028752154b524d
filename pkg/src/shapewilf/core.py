"""Young diagrams, transversals and partially ordered patterns.

Conventions (used everywhere in the package):

* rows and columns are 1-based, row 1 is the top row, column 1 the leftmost;
* a transversal stores ``cols[r - 1]``, the column of the unique 1 in row ``r``;
* read as a permutation, the columns are the positions and the **row index is
  the value**.  A 1 lower on the page is therefore a larger letter.  With this
  reading the rows {2, 7, 8} / columns {1, 3, 4} of
  ``shape=8,8,8,6,6,6,4,4;cols=8,4,7,2,5,6,1,3`` spell 231.  Using
  the opposite reading silently swaps the roles of P_k and Q_k.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    CellOutsideShape,
    CycleDetected,
    InvalidInput,
    NonPositiveEntry,
    NotAPermutation,
    NotWeaklyDecreasing,
    PopSyntaxError,
    PositionOutOfRange,
    ShapeHasNoTransversals,
    UnsupportedLength,
)


class Cell(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class YoungDiagram:
    row_lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(int(x) for x in self.row_lengths)
        if not lengths:
            raise InvalidInput("a Young diagram needs at least one row")
        for i, x in enumerate(lengths, 1):
            if x <= 0:
                raise NonPositiveEntry(f"row {i} has non-positive length {x}")
        for i in range(1, len(lengths)):
            if lengths[i] > lengths[i - 1]:
                raise NotWeaklyDecreasing(
                    f"row {i + 1} (length {lengths[i]}) is longer than row {i} ({lengths[i - 1]})"
                )
        object.__setattr__(self, "row_lengths", lengths)

    @property
    def n(self) -> int:
        return len(self.row_lengths)

    @cached_property
    def admits_transversal(self) -> bool:
        # Hall's condition for Young diagrams: n columns, and row i has room
        # for the n+1-i columns still unused by the rows below it.
        n = self.n
        return self.row_lengths[0] == n and all(
            x >= n + 1 - i for i, x in enumerate(self.row_lengths, 1)
        )

    def contains(self, row: int, col: int) -> bool:
        return 1 <= row <= self.n and 1 <= col <= self.row_lengths[row - 1]

    def column_height(self, col: int) -> int:
        """Number of rows whose length is at least ``col``."""
        return sum(1 for x in self.row_lengths if x >= col)

    def require_transversals(self):
        if not self.admits_transversal:
            raise ShapeHasNoTransversals(f"shape {format_shape(self)} has no transversal")

    def __str__(self):
        return format_shape(self)

    @cached_property
    def lengths_array(self) -> np.ndarray:
        return np.asarray(self.row_lengths, dtype=np.int64)


def diagram_new(row_lengths: Sequence[int]) -> YoungDiagram:
    return YoungDiagram(tuple(row_lengths))


def square(n: int) -> YoungDiagram:
    return YoungDiagram((n,) * n)


def format_shape(shape: YoungDiagram, sep: str = ",") -> str:
    return sep.join(str(x) for x in shape.row_lengths)


def parse_shape(text: str) -> YoungDiagram:
    parts = re.split(r"[,|]", text.strip())
    try:
        lengths = tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidInput(f"cannot parse shape {text!r}") from None
    return YoungDiagram(lengths)


@dataclass(frozen=True)
class Transversal:
    shape: YoungDiagram
    cols: tuple[int, ...]

    def __post_init__(self):
        cols = tuple(int(c) for c in self.cols)
        n = self.shape.n
        if len(cols) != n or sorted(cols) != list(range(1, n + 1)):
            raise NotAPermutation(f"cols {list(cols)} is not a permutation of 1..{n}")
        for r, c in enumerate(cols, 1):
            if c > self.shape.row_lengths[r - 1]:
                raise CellOutsideShape(r, c, self.shape.row_lengths[r - 1])
        object.__setattr__(self, "cols", cols)

    @property
    def n(self) -> int:
        return self.shape.n

    def col_of(self, row: int) -> int:
        return self.cols[row - 1]

    @cached_property
    def row_of_col(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for r, c in enumerate(self.cols, 1):
            inv[c - 1] = r
        return tuple(inv)

    def cells(self) -> list[Cell]:
        return [Cell(r, c) for r, c in enumerate(self.cols, 1)]

    def replace(self, assignment: dict[int, int]) -> "Transversal":
        """Return a copy with ``row -> col`` entries overwritten."""
        cols = list(self.cols)
        for r, c in assignment.items():
            cols[r - 1] = c
        return Transversal(self.shape, tuple(cols))

    @cached_property
    def cols_array(self) -> np.ndarray:
        # 0-based copy for the kernels
        return np.asarray(self.cols, dtype=np.int64) - 1

    def to_text(self) -> str:
        return f"shape={format_shape(self.shape)};cols={','.join(map(str, self.cols))}"

    def __str__(self):
        return self.to_text()


def transversal_new(shape: YoungDiagram, cols: Sequence[int]) -> Transversal:
    shape.require_transversals()
    return Transversal(shape, tuple(cols))


_TRANSVERSAL_RE = re.compile(r"^\s*shape=([0-9,]+);cols=([0-9,]+)\s*$")


def parse_transversal(text: str) -> Transversal:
    m = _TRANSVERSAL_RE.match(text)
    if not m:
        raise InvalidInput(f"cannot parse transversal {text!r}; expected shape=...;cols=...")
    shape = parse_shape(m.group(1))
    try:
        cols = tuple(int(x) for x in m.group(2).split(","))
    except ValueError:
        raise InvalidInput(f"cannot parse columns in {text!r}") from None
    return Transversal(shape, cols)


@dataclass(frozen=True)
class ClassicalPattern:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise NotAPermutation(f"{word} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    def __len__(self):
        return len(self.word)

    def __str__(self):
        if len(self.word) < 10:
            return "".join(map(str, self.word))
        return "-".join(map(str, self.word))

    @classmethod
    def parse(cls, text: str) -> "ClassicalPattern":
        text = text.strip()
        try:
            parts = text.split("-") if "-" in text else list(text)
            word = tuple(int(x) for x in parts)
        except ValueError:
            raise InvalidInput(f"cannot parse pattern {text!r}") from None
        return cls(word)


def _transitive_closure(k: int, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    below = [[False] * (k + 1) for _ in range(k + 1)]
    for s, t in pairs:
        below[s][t] = True
    for m in range(1, k + 1):
        for s in range(1, k + 1):
            if below[s][m]:
                for t in range(1, k + 1):
                    if below[m][t]:
                        below[s][t] = True
    for s in range(1, k + 1):
        if below[s][s]:
            raise CycleDetected(f"relations form a cycle through position {s}")
    return frozenset((s, t) for s in range(1, k + 1) for t in range(1, k + 1) if below[s][t])


@dataclass(frozen=True)
class Pop:
    """A partially ordered pattern on positions 1..k.

    ``(s, t)`` in ``relations`` means ``s <_p t``: the letter at position s
    must be smaller than the letter at position t.  Relations are stored
    transitively closed, so two equal posets compare equal.
    """

    k: int
    relations: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInput("a POP needs at least one position")
        pairs = set()
        for s, t in self.relations:
            if not (1 <= s <= self.k and 1 <= t <= self.k):
                raise PositionOutOfRange(f"relation {s}<{t} outside positions 1..{self.k}")
            pairs.add((int(s), int(t)))
        object.__setattr__(self, "relations", _transitive_closure(self.k, pairs))

    def admits(self, word: Sequence[int]) -> bool:
        """True if ``word`` (any sequence of distinct values) respects every relation."""
        return all(word[s - 1] < word[t - 1] for s, t in self.relations)

    def cover_relations(self) -> list[tuple[int, int]]:
        rel = self.relations
        return sorted(
            (s, t)
            for s, t in rel
            if not any((s, m) in rel and (m, t) in rel for m in range(1, self.k + 1))
        )

    def to_text(self) -> str:
        return f"k={self.k};lt=" + ",".join(f"{s}<{t}" for s, t in self.cover_relations())

    def __str__(self):
        return self.to_text()

    @property
    def label(self) -> str:
        """Short name for the built-in families, otherwise the text form."""
        if self.k >= 3:
            if self == pop_Pk(self.k):
                return f"P{self.k}"
            if self == pop_Qk(self.k):
                return f"Q{self.k}"
        return self.to_text()


def _check_k(k: int):
    if k < 3:
        raise UnsupportedLength(f"k={k}: only k >= 3 is supported")


def pop_Pk(k: int) -> Pop:
    """Position k-1 is smaller than every other position."""
    _check_k(k)
    return Pop(k, frozenset((k - 1, t) for t in range(1, k + 1) if t != k - 1))


def pop_Qk(k: int) -> Pop:
    """Position k is larger than every other position."""
    _check_k(k)
    return Pop(k, frozenset((s, k) for s in range(1, k)))


def pop_pattern_set(p: Pop) -> set[ClassicalPattern]:
    return {
        ClassicalPattern(w)
        for w in itertools.permutations(range(1, p.k + 1))
        if p.admits(w)
    }


_POP_RE = re.compile(r"^\s*k=(\d+);lt=(.*?)\s*$")
_REL_RE = re.compile(r"^\s*(\d+)\s*<\s*(\d+)\s*$")


def pop_parse(text: str) -> Pop:
    """Parse ``k=<int>;lt=s<t,s<t,...``; also accepts the names ``P<k>``/``Q<k>``."""
    named = re.fullmatch(r"\s*([PQ])_?(\d+)\s*", text)
    if named:
        k = int(named.group(2))
        return pop_Pk(k) if named.group(1) == "P" else pop_Qk(k)
    m = _POP_RE.match(text)
    if not m:
        raise PopSyntaxError(f"cannot parse POP {text!r}; expected k=<int>;lt=<s><<t>,...")
    k = int(m.group(1))
    pairs = []
    body = m.group(2)
    if body:
        for item in body.split(","):
            rm = _REL_RE.match(item)
            if not rm:
                raise PopSyntaxError(f"bad relation {item!r} in {text!r}")
            pairs.append((int(rm.group(1)), int(rm.group(2))))
    return Pop(k, frozenset(pairs))


def split_pop_list(text: str) -> list[str]:
    """Split a comma-separated list of POP specs.

    Commas also separate relations inside one spec, so items are cut only
    before ``k=`` or a ``P<k>``/``Q<k>`` name.
    """
    items = re.split(r",(?=\s*(?:k=|[PQ]_?\d))", text.strip())
    return [s.strip() for s in items if s.strip()]
