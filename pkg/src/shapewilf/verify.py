"""Brute-force oracles and the step-by-step lemma harness.

The oracles enumerate every occurrence and apply the selection rules
literally; they never call the kernels, so agreement with ``select_phi`` and
``select_psi`` is a genuine cross-check.  Keep them out of production paths:
they are only meant for small shapes.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .bijection import (
    Phi,
    PhiSelection,
    Psi,
    PsiSelection,
    StepRecord,
    SubmatrixG,
    Trace,
    higher_than,
    lower_than,
    phi_step,
    psi_step,
    theta,
    theta_prime,
)
from .core import Cell, Pop, Transversal, YoungDiagram, format_shape, pop_Pk, pop_pattern_set, pop_Qk
from .enumeration import shapes_with_transversals, transversals
from .errors import ShapeWilfError, SelectionIncomplete
from .patterns import OccurrenceWitness, contains_Pk, contains_Qk, iter_witnesses, word_of


@lru_cache(maxsize=None)
def _words(p: Pop) -> frozenset:
    return frozenset(s.word for s in pop_pattern_set(p))


def occurrences(T: Transversal, p: Pop) -> list[OccurrenceWitness]:
    words = _words(p)
    return [w for w in iter_witnesses(T, p.k) if word_of(T, w.rows) in words]


def _summary(w: OccurrenceWitness) -> tuple[int, int]:
    return w.lowest_row, w.top_row


def oracle_select_phi(T: Transversal, k: int) -> PhiSelection | None:
    occ = occurrences(T, pop_Qk(k))
    if not occ:
        return None
    r1 = max(w.lowest_row for w in occ)
    c1 = T.cols[r1 - 1]
    above_left = [Cell(r, c) for r, c in T.cells() if r < r1 and c < c1]
    rest = sorted(above_left, key=lambda cell: -cell.row)[: k - 1]
    b = (Cell(r1, c1), *rest)
    return PhiSelection(b, SubmatrixG.from_rows(T, (cell.row for cell in b)))


def _low_left(T: Transversal, w: OccurrenceWitness) -> int:
    left_cols = w.cols[:-1]
    return max(T.row_of_col[c - 1] for c in left_cols)


def oracle_select_psi(T: Transversal, k: int) -> PsiSelection | None:
    Pk = pop_Pk(k)
    occ = occurrences(T, Pk)
    if not occ:
        return None
    r1 = min(_low_left(T, w) for w in occ)
    top = min(w.top_row for w in occ if _low_left(T, w) == r1)
    ctop = T.cols[top - 1]
    middle = [Cell(r, c) for r, c in T.cells() if top < r < r1 and c < ctop][: k - 3]
    if len(middle) < k - 3:
        raise SelectionIncomplete(f"{T}: too few middle cells")
    head = [Cell(r1, T.cols[r1 - 1]), *reversed(middle), Cell(top, ctop)]
    words = _words(Pk)
    used = {cell.row for cell in head}
    for col in range(1, T.n + 1):
        x = T.row_of_col[col - 1]
        if x in used:
            continue
        rows = sorted(used | {x})
        cols = sorted(T.cols[r - 1] for r in rows)
        if T.shape.contains(rows[-1], cols[-1]) and word_of(T, rows) in words:
            b = (*head, Cell(x, col))
            return PsiSelection(b, SubmatrixG.from_rows(T, rows))
    raise SelectionIncomplete(f"{T}: no tail completes the selection")


@dataclass(frozen=True)
class LemmaVerdict:
    lemma: str
    ok: bool
    detail: str = ""


def _verdict(lemma, ok, detail=""):
    return LemmaVerdict(lemma, bool(ok), "" if ok else detail)


def check_step_lemmas(
    record: StepRecord,
    T_before: Transversal,
    T_after: Transversal,
    k: int,
    previous: StepRecord | None = None,
) -> list[LemmaVerdict]:
    """Verdicts for every lemma that applies to one phi or psi step."""
    out = []
    kind = record.kind
    try:
        replayed = record.apply(T_before)
    except ShapeWilfError as exc:
        replayed = None
        out.append(_verdict(f"{kind}.replay", False, str(exc)))
    else:
        out.append(_verdict(f"{kind}.replay", replayed == T_after, f"record gives {replayed}"))

    g, h = record.before, record.after
    E, F = record.boards
    Pk, Qk = pop_Pk(k), pop_Qk(k)
    ones_F_before, ones_F_after = F.count(T_before), F.count(T_after)
    ones_E_before, ones_E_after = E.count(T_before), E.count(T_after)
    p_occ = occurrences(T_after, Pk)
    q_occ = occurrences(T_after, Qk)

    if kind == "phi":
        out += [
            _verdict("phi.F_before", ones_F_before == k - 1, f"{ones_F_before} ones in F before"),
            _verdict("phi.F_after", ones_F_after == k - 2, f"{ones_F_after} ones in F after"),
            _verdict("phi.E_empty_before", ones_E_before == 0, f"{ones_E_before} ones in E before"),
            _verdict("phi.E_empty_after", ones_E_after == 0, f"{ones_E_after} ones in E after"),
            _verdict("phi.selected_not_Pk", not g.is_Pk(), f"selected {g.word} is a P_{k} pattern"),
        ]
        bad = [w for w in p_occ if higher_than(_summary(w), h)]
        out.append(_verdict("phi.no_higher_Pk", not bad, f"P_{k} at rows {bad[:1]} is higher"))
        bad = [w for w in q_occ if not higher_than(_summary(w), h)]
        out.append(_verdict("phi.Qk_higher", not bad, f"Q_{k} at rows {bad[:1]} is not higher"))
        if previous is not None:
            out.append(_verdict("phi.progress", higher_than(g, previous.before),
                                f"{g.summary} not higher than {previous.before.summary}"))
        inv = psi_step(T_after, k)
        out.append(_verdict("phi.inverse_step", inv is not None and inv[0] == T_before,
                            f"psi gives {None if inv is None else inv[0]}"))
    else:
        out += [
            _verdict("psi.Fp_before", ones_F_before == k - 2, f"{ones_F_before} ones in F' before"),
            _verdict("psi.Fp_after", ones_F_after == k - 1, f"{ones_F_after} ones in F' after"),
            _verdict("psi.Ep_empty_before", ones_E_before == 0, f"{ones_E_before} ones in E' before"),
            _verdict("psi.Ep_empty_after", ones_E_after == 0, f"{ones_E_after} ones in E' after"),
            _verdict("psi.selected_not_Qk", not g.is_Qk(), f"selected {g.word} is a Q_{k} pattern"),
        ]
        bad = [w for w in q_occ if lower_than(_summary(w), h)]
        out.append(_verdict("psi.no_lower_Qk", not bad, f"Q_{k} at rows {bad[:1]} is lower"))
        bad = [w for w in p_occ if not lower_than(_summary(w), h)]
        out.append(_verdict("psi.Pk_lower", not bad, f"P_{k} at rows {bad[:1]} is not lower"))
        if previous is not None:
            out.append(_verdict("psi.progress", lower_than(g, previous.before),
                                f"{g.summary} not lower than {previous.before.summary}"))
        inv = phi_step(T_after, k)
        out.append(_verdict("psi.inverse_step", inv is not None and inv[0] == T_before,
                            f"phi gives {None if inv is None else inv[0]}"))
    return out


def check_trace_lemmas(trace: Trace) -> list[tuple[int, LemmaVerdict]]:
    """Failed verdicts of a whole run as ``(step, verdict)`` pairs."""
    if not trace.replay_ok():
        return [(0, LemmaVerdict(f"{trace.kind}.trace_replay", False, "records do not reproduce final"))]
    states = trace.states()
    failures = []
    prev = None
    for i, rec in enumerate(trace.records):
        for v in check_step_lemmas(rec, states[i], states[i + 1], trace.k, prev):
            if not v.ok:
                failures.append((rec.step, v))
        prev = rec
    return failures


def observation_cases(k: int) -> dict[str, tuple[int, int, int]]:
    """Per direction: (configurations, applicable, failures)."""
    rows = tuple(range(1, k + 1))
    stats = {}
    for name in ("theta_prime_after_theta", "theta_after_theta_prime"):
        total = applicable = failed = 0
        for perm in itertools.permutations(rows):
            g = SubmatrixG(rows, perm)
            if name == "theta_prime_after_theta":
                if not g.is_Qk():
                    continue
                total += 1
                # side condition: the 1 in column k-1 is not the topmost
                if g.row_at(k - 1) == 1:
                    continue
                applicable += 1
                failed += theta_prime(theta(g)[0])[0] != g
            else:
                if not g.is_Pk():
                    continue
                total += 1
                # side condition: the 1 in column k is not the lowest
                if g.row_at(k) == k:
                    continue
                applicable += 1
                failed += theta(theta_prime(g)[0])[0] != g
        stats[name] = (total, applicable, failed)
    return stats


def check_observations(k: int) -> bool:
    return all(failed == 0 for _, _, failed in observation_cases(k).values())


@dataclass
class VerificationReport:
    shape: tuple[int, ...]
    k: int
    count_P: int = 0
    count_Q: int = 0
    bijective: bool = False
    inverse_ok: bool = False
    steps: int = 0
    lemma_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijective and self.inverse_ok and not self.lemma_failures

    def csv_fields(self) -> list:
        return [
            len(self.shape), "|".join(map(str, self.shape)), self.k, self.count_P, self.count_Q,
            int(self.bijective), int(self.inverse_ok), len(self.lemma_failures),
        ]

    def failure_json(self) -> str:
        return json.dumps(
            {"shape": list(self.shape), "k": self.k, "failures": self.lemma_failures}, indent=2
        )


REPORT_HEADER = ["n", "shape", "k", "count_P", "count_Q", "bijective", "inverse_ok", "lemma_failures"]


def _failure(lemma, trace: Trace | None, step=0, detail="", T=None):
    return {
        "lemma": lemma,
        "step": step,
        "detail": detail,
        "input": str(trace.initial if trace is not None else T),
        "trace": json.loads(trace.to_json()) if trace is not None else [],
    }


def verify_shape(shape: YoungDiagram, k: int, lemmas: bool = True) -> VerificationReport:
    """Run Phi on S_lambda(P_k) and Psi on S_lambda(Q_k) and check everything."""
    shape.require_transversals()
    rep = VerificationReport(shape.row_lengths, k)
    SP, SQ = [], []
    for T in transversals(shape):
        if not contains_Pk(T, k):
            SP.append(T)
        if not contains_Qk(T, k):
            SQ.append(T)
    rep.count_P, rep.count_Q = len(SP), len(SQ)
    SQ_set = set(SQ)

    def run(fn, T, back):
        try:
            U, trace = fn(T, k)
        except ShapeWilfError as exc:
            rep.lemma_failures.append(_failure(f"{fn.__name__}.error", None, detail=repr(exc), T=T))
            return None, False
        rep.steps += len(trace)
        if lemmas:
            for step, v in check_trace_lemmas(trace):
                rep.lemma_failures.append(_failure(v.lemma, trace, step, v.detail))
        try:
            inverse = back(U, k)[0] == T
        except ShapeWilfError:
            inverse = False
        return U, inverse

    images = []
    inverse_ok = True
    for T in SP:
        U, inv = run(Phi, T, Psi)
        inverse_ok &= inv
        images.append(U)
    image_ok = all(U is not None and U in SQ_set for U in images)
    for T in SQ:
        V, inv = run(Psi, T, Phi)
        inverse_ok &= inv
        image_ok &= V is not None and not contains_Pk(V, k)
    rep.bijective = image_ok and len(set(images)) == len(SP) == len(SQ)
    rep.inverse_ok = inverse_ok
    return rep


def _verify_task(args) -> VerificationReport:
    shape, k, lemmas = args
    return verify_shape(shape, k, lemmas)


def verify_all(
    max_rows: int, ks: Sequence[int], jobs: int = 1, lemmas: bool = True, min_rows: int = 1
) -> Iterator[VerificationReport]:
    """Reports for every shape with min_rows..max_rows rows and every k, in order."""
    tasks = [
        (shape, k, lemmas)
        for n in range(min_rows, max_rows + 1)
        for shape in shapes_with_transversals(n)
        for k in ks
    ]
    if jobs <= 1:
        for t in tasks:
            yield _verify_task(t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_verify_task, tasks, chunksize=4)


def check_oracles(shape: YoungDiagram, k: int) -> list[str]:
    """Disagreements between fast and brute-force predicates/selectors."""
    Pk, Qk = pop_Pk(k), pop_Qk(k)
    from .bijection import select_phi, select_psi

    bad = []
    for T in transversals(shape):
        if contains_Qk(T, k) != bool(occurrences(T, Qk)):
            bad.append(f"contains_Qk {T}")
        if contains_Pk(T, k) != bool(occurrences(T, Pk)):
            bad.append(f"contains_Pk {T}")
        if select_phi(T, k) != oracle_select_phi(T, k):
            bad.append(f"select_phi {T}")
        if select_psi(T, k) != oracle_select_psi(T, k):
            bad.append(f"select_psi {T}")
    return bad


def describe(rep: VerificationReport) -> str:
    status = "ok" if rep.ok else "FAIL"
    return (
        f"{status} shape={format_shape(YoungDiagram(rep.shape))} k={rep.k} "
        f"P={rep.count_P} Q={rep.count_Q} steps={rep.steps} failures={len(rep.lemma_failures)}"
    )
