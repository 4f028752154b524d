"""Generators for transversal-admitting shapes, their transversals, and censuses."""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import Pop, Transversal, YoungDiagram, format_shape
from .patterns import count_avoiders


def shapes_with_transversals(n: int) -> Iterator[YoungDiagram]:
    """Diagrams with n rows, first row n and row i at least n+1-i, lexicographically."""
    if n < 1:
        raise ValueError("n must be positive")
    lengths = [n] + [0] * (n - 1)

    def fill(i):
        if i == n:
            yield YoungDiagram(tuple(lengths))
            return
        for x in range(n - i, lengths[i - 1] + 1):
            lengths[i] = x
            yield from fill(i + 1)

    yield from fill(1)


def transversals(shape: YoungDiagram) -> Iterator[Transversal]:
    """All transversals of ``shape`` in lexicographic order of their column words."""
    shape.require_transversals()
    n = shape.n
    lam = shape.row_lengths
    cols = [0] * n
    used = [False] * (n + 1)

    def place(r):
        if r == n:
            yield Transversal(shape, tuple(cols))
            return
        for c in range(1, lam[r] + 1):
            if not used[c]:
                used[c] = True
                cols[r] = c
                yield from place(r + 1)
                used[c] = False

    yield from place(0)


@dataclass(frozen=True)
class CensusRow:
    n: int
    shape: tuple[int, ...]
    pop: str
    count: int

    def csv_fields(self) -> list:
        return [self.n, "|".join(map(str, self.shape)), self.pop, self.count]


CENSUS_HEADER = ["n", "shape", "pop", "count"]


def _census_shape(args) -> list[CensusRow]:
    shape, pops = args
    return [
        CensusRow(shape.n, shape.row_lengths, p.label, count_avoiders(shape, p))
        for p in pops
    ]


def census(n_max: int, pops: Sequence[Pop], jobs: int = 1) -> Iterator[CensusRow]:
    """One row per (shape, pop) for all shapes with 1..n_max rows.

    Order is by n, then shape (lexicographic), then the order of ``pops``,
    whatever the number of worker processes.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if not pops:
        raise ValueError("need at least one POP")
    pops = tuple(pops)
    tasks = ((shape, pops) for n in range(1, n_max + 1) for shape in shapes_with_transversals(n))
    if jobs <= 1:
        for task in tasks:
            yield from _census_shape(task)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for rows in pool.map(_census_shape, tasks, chunksize=8):
            yield from rows


def write_census_csv(rows: Iterable[CensusRow], fh) -> int:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CENSUS_HEADER)
    count = 0
    for row in rows:
        writer.writerow(row.csv_fields())
        count += 1
    return count


def read_census_csv(fh) -> list[CensusRow]:
    reader = csv.reader(fh)
    header = next(reader)
    if header != CENSUS_HEADER:
        raise ValueError(f"unexpected census header {header}")
    return [
        CensusRow(int(n), tuple(int(x) for x in shape.split("|")), pop, int(count))
        for n, shape, pop, count in reader
    ]


def shape_label(shape: YoungDiagram) -> str:
    return format_shape(shape, "|")
