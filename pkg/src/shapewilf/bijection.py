"""The maps Phi: S_lambda(P_k) -> S_lambda(Q_k) and Psi, its inverse.

One step of Phi (``phi_step``) picks a Q_k occurrence by extremal rules and
rewrites it into a P_k occurrence on the same rows and columns (``theta``).
Psi mirrors this with ``theta_prime``.  Runs are recorded as ``Trace``
objects whose step records serialize to JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels as K
from .core import Cell, Transversal
from .errors import (
    ConsistencyViolation,
    InputContainsPk,
    InputContainsQk,
    IterationCapExceeded,
    InvalidInput,
    NotAPkSubmatrix,
    NotAQkSubmatrix,
    SelectionIncomplete,
)
from .patterns import _check_k, contains_Pk, contains_Qk

CASE_I = "I"
CASE_II = "II"


@dataclass(frozen=True)
class SubmatrixG:
    """k 1-cells given by their rows (increasing) and matching columns."""

    rows: tuple[int, ...]
    assign: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        assign = tuple(int(c) for c in self.assign)
        if len(rows) != len(assign):
            raise InvalidInput("rows and assignment differ in length")
        if any(a >= b for a, b in zip(rows, rows[1:])):
            raise InvalidInput(f"rows {rows} are not strictly increasing")
        if len(set(assign)) != len(assign):
            raise InvalidInput(f"assignment {assign} repeats a column")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "assign", assign)

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> "SubmatrixG":
        rows = tuple(sorted(mapping))
        return cls(rows, tuple(mapping[r] for r in rows))

    @classmethod
    def from_rows(cls, T: Transversal, rows: Iterable[int]) -> "SubmatrixG":
        rows = tuple(sorted(rows))
        return cls(rows, tuple(T.cols[r - 1] for r in rows))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def cols(self) -> tuple[int, ...]:
        return tuple(sorted(self.assign))

    def mapping(self) -> dict[int, int]:
        return dict(zip(self.rows, self.assign))

    def row_at(self, col: int) -> int:
        return self.rows[self.assign.index(col)]

    @property
    def corner(self) -> Cell:
        return Cell(self.rows[-1], max(self.assign))

    @property
    def summary(self) -> tuple[int, int]:
        """(lowest row, topmost row), the key of the higher/lower comparison."""
        return self.rows[-1], self.rows[0]

    @property
    def word(self) -> tuple[int, ...]:
        rank = {r: i for i, r in enumerate(self.rows, 1)}
        return tuple(rank[r] for c, r in sorted(zip(self.assign, self.rows)))

    def is_Qk(self) -> bool:
        # the rightmost 1 is the lowest
        return self.row_at(self.cols[-1]) == self.rows[-1]

    def is_Pk(self) -> bool:
        # the second-rightmost 1 is the topmost
        return self.row_at(self.cols[-2]) == self.rows[0]


Summary = Union[SubmatrixG, Sequence[int]]


def _summary(m: Summary) -> tuple[int, int]:
    if isinstance(m, SubmatrixG):
        return m.summary
    low, top = m
    return int(low), int(top)


def higher_than(m: Summary, other: Summary) -> bool:
    """Is ``m`` higher than ``other``?

    Compares lowest rows first, then topmost rows.  Equal summaries are
    incomparable: neither is higher.
    """
    low, top = _summary(m)
    low2, top2 = _summary(other)
    return low < low2 or (low == low2 and top < top2)


def lower_than(m: Summary, other: Summary) -> bool:
    return higher_than(other, m)


def _shift_rows(g: SubmatrixG, by: int) -> dict[int, int]:
    # the 1 in row r_i moves to row r_{i+by}, indices cyclic
    k = g.k
    return {g.rows[(i + by) % k]: g.assign[i] for i in range(k)}


def _swap_last_two_columns(mapping: dict[int, int], cols: tuple[int, ...]) -> dict[int, int]:
    a, b = cols[-2], cols[-1]
    swap = {a: b, b: a}
    return {r: swap.get(c, c) for r, c in mapping.items()}


def theta(g: SubmatrixG) -> tuple[SubmatrixG, str]:
    """Turn a Q_k occurrence into a P_k occurrence on the same squares."""
    if g.k < 3 or not g.is_Qk():
        raise NotAQkSubmatrix(f"{g} is not isomorphic to a pattern of Q_{g.k}")
    cols = g.cols
    if g.row_at(cols[-2]) == g.rows[-2]:
        return SubmatrixG.from_mapping(_shift_rows(g, 2)), CASE_I
    shifted = _shift_rows(g, 1)
    return SubmatrixG.from_mapping(_swap_last_two_columns(shifted, cols)), CASE_II


def theta_prime(g: SubmatrixG) -> tuple[SubmatrixG, str]:
    """Turn a P_k occurrence into a Q_k occurrence on the same squares."""
    if g.k < 3 or not g.is_Pk():
        raise NotAPkSubmatrix(f"{g} is not isomorphic to a pattern of P_{g.k}")
    cols = g.cols
    if g.row_at(cols[-1]) == g.rows[1]:
        return SubmatrixG.from_mapping(_shift_rows(g, -2)), CASE_I
    shifted = _shift_rows(g, -1)
    return SubmatrixG.from_mapping(_swap_last_two_columns(shifted, cols)), CASE_II


@dataclass(frozen=True)
class PhiSelection:
    """b[0] is the lowest 1; b[1:] the k-1 lowest 1s above-left of it, bottom to top."""

    b: tuple[Cell, ...]
    g: SubmatrixG


@dataclass(frozen=True)
class PsiSelection:
    """b[0] lowest of the leftmost k-1, b[1:k-2] middles bottom to top,
    b[k-2] the topmost 1, b[k-1] the tail."""

    b: tuple[Cell, ...]
    g: SubmatrixG


Selection = Union[PhiSelection, PsiSelection]


def _cells(T: Transversal, rows) -> tuple[Cell, ...]:
    return tuple(Cell(int(r) + 1, T.cols[int(r)]) for r in rows)


def select_phi(T: Transversal, k: int) -> PhiSelection | None:
    _check_k(k)
    out = np.zeros(k, dtype=np.int64)
    if not K.phi_rows(T.cols_array, k, out):
        return None
    b = _cells(T, out)
    return PhiSelection(b, SubmatrixG.from_rows(T, (c.row for c in b)))


def select_psi(T: Transversal, k: int) -> PsiSelection | None:
    _check_k(k)
    out = np.zeros(k, dtype=np.int64)
    status = K.psi_rows(T.cols_array, T.shape.lengths_array, k, out)
    if status == 0:
        if contains_Pk(T, k):
            raise SelectionIncomplete(f"{T}: P_{k} present but no selection found")
        return None
    b = _cells(T, out)
    return PsiSelection(b, SubmatrixG.from_rows(T, (c.row for c in b)))


@dataclass(frozen=True)
class Rect:
    """Inclusive bounds; empty when a lower bound exceeds its upper bound."""

    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int

    @property
    def empty(self) -> bool:
        return self.row_lo > self.row_hi or self.col_lo > self.col_hi

    def __contains__(self, cell) -> bool:
        r, c = cell
        return self.row_lo <= r <= self.row_hi and self.col_lo <= c <= self.col_hi


@dataclass(frozen=True)
class Board:
    rects: tuple[Rect, ...]

    def __contains__(self, cell) -> bool:
        return any(cell in rect for rect in self.rects)

    @property
    def empty(self) -> bool:
        return all(rect.empty for rect in self.rects)

    def ones(self, T: Transversal) -> list[Cell]:
        return [cell for cell in T.cells() if cell in self]

    def count(self, T: Transversal) -> int:
        return len(self.ones(T))


def boards_phi(sel: PhiSelection) -> tuple[Board, Board]:
    """(E, F) around a phi selection."""
    r = sel.g.rows
    c = sel.g.cols
    F = Board((Rect(r[0], r[-2], 1, c[-2]),))
    E = Board((
        Rect(r[0] + 1, r[-1] - 1, c[-2] + 1, c[-1] - 1),
        Rect(r[-2] + 1, r[-1] - 1, 1, c[-1] - 1),
    ))
    return E, F


def boards_psi(sel: PsiSelection) -> tuple[Board, Board]:
    """(E', F') around a psi selection."""
    k = len(sel.b)
    low = sel.b[0].row
    top, ctop = sel.b[k - 2]
    ctail = sel.b[k - 1].col
    F = Board((Rect(top, low - 1, 1, ctop),))
    E = Board((Rect(top + 1, low - 1, ctop + 1, ctail - 1),))
    return E, F


@dataclass(frozen=True)
class StepRecord:
    kind: str  # "phi" or "psi"
    step: int
    selection: Selection
    case: str
    after: SubmatrixG

    @property
    def before(self) -> SubmatrixG:
        return self.selection.g

    @property
    def boards(self) -> tuple[Board, Board]:
        if self.kind == "phi":
            return boards_phi(self.selection)
        return boards_psi(self.selection)

    def apply(self, T: Transversal) -> Transversal:
        for r, c in self.before.mapping().items():
            if T.cols[r - 1] != c:
                raise ConsistencyViolation(f"step {self.step}: row {r} holds column {T.cols[r - 1]}, not {c}")
        return T.replace(self.after.mapping())

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "case": self.case,
            "b": [[cell.row, cell.col] for cell in self.selection.b],
            "before": {str(r): c for r, c in zip(self.before.rows, self.before.assign)},
            "after": {str(r): c for r, c in zip(self.after.rows, self.after.assign)},
        }

    @classmethod
    def from_dict(cls, data: dict, kind: str) -> "StepRecord":
        try:
            b = tuple(Cell(int(r), int(c)) for r, c in data["b"])
            before = SubmatrixG.from_mapping({int(r): int(c) for r, c in data["before"].items()})
            after = SubmatrixG.from_mapping({int(r): int(c) for r, c in data["after"].items()})
            step = int(data["step"])
            case = data["case"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed step record: {exc}") from None
        if case not in (CASE_I, CASE_II):
            raise InvalidInput(f"unknown case tag {case!r}")
        sel_cls = PhiSelection if kind == "phi" else PsiSelection
        return cls(kind, step, sel_cls(b, before), case, after)


@dataclass(frozen=True)
class Trace:
    kind: str
    k: int
    initial: Transversal
    records: tuple[StepRecord, ...]
    final: Transversal

    def __len__(self):
        return len(self.records)

    @property
    def cases(self) -> list[str]:
        return [rec.case for rec in self.records]

    def states(self) -> list[Transversal]:
        """initial, then the transversal after each step."""
        out = [self.initial]
        for rec in self.records:
            out.append(rec.apply(out[-1]))
        return out

    def replay_ok(self) -> bool:
        try:
            return self.states()[-1] == self.final
        except (ConsistencyViolation, InvalidInput):
            return False

    def to_json(self) -> str:
        """JSON list of step records, one record per line."""
        if not self.records:
            return "[]"
        body = ",\n".join("  " + json.dumps(rec.to_dict()) for rec in self.records)
        return "[\n" + body + "\n]"

    @classmethod
    def from_json(cls, text: str, kind: str, k: int, initial: Transversal) -> "Trace":
        data = json.loads(text)
        if not isinstance(data, list):
            raise InvalidInput("a trace is a JSON list of step records")
        records = tuple(StepRecord.from_dict(d, kind) for d in data)
        trace = cls(kind, k, initial, records, initial)
        return cls(kind, k, initial, records, trace.states()[-1])


def _step(T: Transversal, k: int, step: int, kind: str):
    if kind == "phi":
        sel = select_phi(T, k)
        if sel is None:
            return None
        new_g, case = theta(sel.g)
        ok = new_g.is_Pk()
    else:
        sel = select_psi(T, k)
        if sel is None:
            return None
        new_g, case = theta_prime(sel.g)
        ok = new_g.is_Qk()
    if not ok or new_g.rows != sel.g.rows or new_g.cols != sel.g.cols:
        raise ConsistencyViolation(f"{kind} step on {T} produced {new_g}")
    record = StepRecord(kind, step, sel, case, new_g)
    return T.replace(new_g.mapping()), record


def phi_step(T: Transversal, k: int, step: int = 1):
    """One application of phi: ``(new transversal, record)`` or None without Q_k."""
    return _step(T, k, step, "phi")


def psi_step(T: Transversal, k: int, step: int = 1):
    """One application of psi: ``(new transversal, record)`` or None without P_k."""
    return _step(T, k, step, "psi")


def default_cap(n: int) -> int:
    return 10 * n ** 3


def _run(T: Transversal, k: int, cap, kind: str) -> tuple[Transversal, Trace]:
    cap = default_cap(T.n) if cap is None else cap
    records = []
    current = T
    while True:
        res = _step(current, k, len(records) + 1, kind)
        if res is None:
            break
        if len(records) >= cap:
            raise IterationCapExceeded(f"{kind} run on {T} exceeded {cap} steps")
        current, rec = res
        records.append(rec)
    return current, Trace(kind, k, T, tuple(records), current)


def Phi(T: Transversal, k: int, cap: int | None = None) -> tuple[Transversal, Trace]:
    """Iterate phi until no Q_k is left.  The input must avoid P_k."""
    _check_k(k)
    if contains_Pk(T, k):
        raise InputContainsPk(f"{T} contains P_{k}; Phi is defined on P_{k}-avoiders")
    return _run(T, k, cap, "phi")


def Psi(T: Transversal, k: int, cap: int | None = None) -> tuple[Transversal, Trace]:
    """Iterate psi until no P_k is left.  The input must avoid Q_k."""
    _check_k(k)
    if contains_Qk(T, k):
        raise InputContainsQk(f"{T} contains Q_{k}; Psi is defined on Q_{k}-avoiders")
    return _run(T, k, cap, "psi")
