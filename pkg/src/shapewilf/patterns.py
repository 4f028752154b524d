"""Pattern occurrences in transversals of Young diagrams.

Because a transversal has one 1 per row, an occurrence of a length-m pattern
is fixed by its row set: the columns are the columns of those rows.  The
brute-force routines here enumerate row subsets and act as the oracle for the
fast P_k/Q_k predicates backed by ``_kernels``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator


from . import _kernels as K
from .core import ClassicalPattern, Pop, Transversal, YoungDiagram, pop_Pk, pop_pattern_set, pop_Qk
from .errors import UnsupportedLength


@dataclass(frozen=True)
class OccurrenceWitness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def corner(self) -> tuple[int, int]:
        return self.rows[-1], self.cols[-1]

    @property
    def lowest_row(self) -> int:
        return self.rows[-1]

    @property
    def top_row(self) -> int:
        return self.rows[0]


def word_of(T: Transversal, rows) -> tuple[int, ...]:
    """Pattern spelled by the 1s in ``rows``: positions by column, values by row."""
    rows = sorted(rows)
    rank = {r: i for i, r in enumerate(rows, 1)}
    by_col = sorted((T.cols[r - 1], r) for r in rows)
    return tuple(rank[r] for _, r in by_col)


def iter_witnesses(T: Transversal, m: int) -> Iterator[OccurrenceWitness]:
    """All in-shape row subsets of size m, in lexicographic row order."""
    shape = T.shape
    for rows in itertools.combinations(range(1, T.n + 1), m):
        cols = tuple(sorted(T.cols[r - 1] for r in rows))
        if shape.contains(rows[-1], cols[-1]):
            yield OccurrenceWitness(rows, cols)


def find_occurrence_classical(T: Transversal, sigma: ClassicalPattern) -> OccurrenceWitness | None:
    for w in iter_witnesses(T, len(sigma)):
        if word_of(T, w.rows) == sigma.word:
            return w
    return None


def occurrence_exists_classical(T: Transversal, sigma: ClassicalPattern) -> bool:
    return find_occurrence_classical(T, sigma) is not None


def iter_pop_occurrences(T: Transversal, p: Pop) -> Iterator[OccurrenceWitness]:
    """Witnesses whose pattern belongs to the pattern set of ``p``."""
    words = {s.word for s in pop_pattern_set(p)}
    for w in iter_witnesses(T, p.k):
        if word_of(T, w.rows) in words:
            yield w


def occurrence_exists_pop(T: Transversal, p: Pop) -> bool:
    return next(iter_pop_occurrences(T, p), None) is not None


def _check_k(k):
    if k < 3:
        raise UnsupportedLength(f"k={k}: only k >= 3 is supported")


def contains_Qk(T: Transversal, k: int) -> bool:
    _check_k(k)
    return K.qk_lowest(T.cols_array, T.n, k) >= 0


def contains_Pk(T: Transversal, k: int) -> bool:
    _check_k(k)
    return bool(K.pk_exists(T.cols_array, T.shape.lengths_array, T.n, k))


def _fast_kind(p: Pop) -> int | None:
    if p.k >= 3:
        if p == pop_Pk(p.k):
            return K.KIND_PK
        if p == pop_Qk(p.k):
            return K.KIND_QK
    return None


def avoids(T: Transversal, p: Pop) -> bool:
    kind = _fast_kind(p)
    if kind == K.KIND_PK:
        return not contains_Pk(T, p.k)
    if kind == K.KIND_QK:
        return not contains_Qk(T, p.k)
    return not occurrence_exists_pop(T, p)


def count_avoiders(shape: YoungDiagram, p: Pop) -> int:
    """Number of transversals of ``shape`` avoiding every pattern of ``p``."""
    shape.require_transversals()
    kind = _fast_kind(p)
    if kind is not None:
        return int(K.count_avoiders_kernel(shape.lengths_array, p.k, kind))
    from .enumeration import transversals

    return sum(1 for T in transversals(shape) if not occurrence_exists_pop(T, p))


def count_avoiders_patterns(shape: YoungDiagram, patterns) -> int:
    """Number of transversals avoiding every classical pattern in ``patterns``."""
    from .enumeration import transversals

    patterns = list(patterns)
    return sum(
        1
        for T in transversals(shape)
        if not any(occurrence_exists_classical(T, s) for s in patterns)
    )


def count_transversals(shape: YoungDiagram) -> int:
    shape.require_transversals()
    return int(K.count_avoiders_kernel(shape.lengths_array, 3, K.KIND_NONE))
