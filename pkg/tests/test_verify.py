import json

import pytest

from shapewilf.bijection import StepRecord, SubmatrixG, Phi, Psi, phi_step, psi_step, select_phi, select_psi
from shapewilf.core import Cell, Transversal, YoungDiagram
from shapewilf.enumeration import shapes_with_transversals
from shapewilf.verify import (
    check_observations,
    check_oracles,
    check_step_lemmas,
    check_trace_lemmas,
    describe,
    observation_cases,
    oracle_select_phi,
    oracle_select_psi,
    verify_all,
    verify_shape,
)


def square(cols):
    n = len(cols)
    return Transversal(YoungDiagram((n,) * n), tuple(cols))


class TestOracles:
    def test_phi_example(self, phi_input):
        assert oracle_select_phi(phi_input, 4) == select_phi(phi_input, 4)

    def test_psi_example(self, phi_final):
        assert oracle_select_psi(phi_final, 4) == select_psi(phi_final, 4)

    def test_none(self, phi_input, phi_final):
        assert oracle_select_phi(phi_final, 4) is None
        assert oracle_select_psi(phi_input, 4) is None

    def test_identity(self):
        sel = oracle_select_phi(square((1, 2, 3)), 3)
        assert sel.b == (Cell(3, 3), Cell(2, 2), Cell(1, 1))

    def test_312(self):
        sel = oracle_select_psi(square((2, 3, 1)), 3)
        assert sel.b == (Cell(3, 1), Cell(1, 2), Cell(2, 3))

    @pytest.mark.parametrize("n", [3, 4])
    def test_fast_selectors_agree(self, n):
        for shape in shapes_with_transversals(n):
            for k in (3, 4):
                assert check_oracles(shape, k) == []


class TestVerifyShape:
    def test_332(self):
        rep = verify_shape(YoungDiagram((3, 3, 2)), 3)
        assert (rep.count_P, rep.count_Q) == (4, 4)
        assert rep.bijective and rep.inverse_ok and rep.lemma_failures == []
        assert rep.steps == 0

    def test_square4(self):
        rep = verify_shape(YoungDiagram((4,) * 4), 4)
        assert (rep.count_P, rep.count_Q) == (18, 18)
        assert rep.ok

    def test_example_shape(self, example_shape):
        rep = verify_shape(example_shape, 4, lemmas=False)
        assert rep.ok and rep.count_P == rep.count_Q

    def test_describe(self):
        rep = verify_shape(YoungDiagram((3, 3, 2)), 3)
        assert describe(rep) == "ok shape=3,3,2 k=3 P=4 Q=4 steps=0 failures=0"

    def test_verify_all_order(self):
        reps = list(verify_all(3, [3, 4]))
        assert [(r.shape, r.k) for r in reps][:3] == [((1,), 3), ((1,), 4), ((2, 1), 3)]
        assert all(r.ok for r in reps)

    def test_jobs(self):
        one = [r.csv_fields() for r in verify_all(4, [3], jobs=1)]
        two = [r.csv_fields() for r in verify_all(4, [3], jobs=2)]
        assert one == two


class TestStepLemmas:
    def test_phi_example_step(self, phi_input, phi_middle):
        _, rec = phi_step(phi_input, 4)
        verdicts = check_step_lemmas(rec, phi_input, phi_middle, 4)
        assert all(v.ok for v in verdicts), [v for v in verdicts if not v.ok]
        names = {v.lemma for v in verdicts}
        assert {"phi.F_after", "phi.E_empty_after", "phi.inverse_step"} <= names
        _, F = rec.boards
        assert F.count(phi_middle) == 2

    def test_psi_example_step(self, phi_final, phi_middle):
        _, rec = psi_step(phi_final, 4)
        verdicts = check_step_lemmas(rec, phi_final, phi_middle, 4)
        assert all(v.ok for v in verdicts), [v for v in verdicts if not v.ok]

    def test_progress_checked(self, phi_input):
        _, trace = Phi(phi_input, 4)
        states = trace.states()
        verdicts = check_step_lemmas(trace.records[1], states[1], states[2], 4, trace.records[0])
        assert any(v.lemma == "phi.progress" and v.ok for v in verdicts)
        # reversed order must be flagged
        verdicts = check_step_lemmas(trace.records[0], states[0], states[1], 4, trace.records[1])
        assert any(v.lemma == "phi.progress" and not v.ok for v in verdicts)

    def test_corrupted_record_flagged(self, phi_input):
        _, rec = phi_step(phi_input, 4)
        after = rec.after.mapping()
        after[9], after[10] = after[10], after[9]
        bad = StepRecord(rec.kind, rec.step, rec.selection, rec.case, SubmatrixG.from_mapping(after))
        T_after = bad.apply(phi_input)
        failed = {v.lemma for v in check_step_lemmas(bad, phi_input, T_after, 4) if not v.ok}
        assert "phi.F_after" in failed

    def test_wrong_after_state_flagged(self, phi_input, phi_final):
        _, rec = phi_step(phi_input, 4)
        failed = {v.lemma for v in check_step_lemmas(rec, phi_input, phi_final, 4) if not v.ok}
        assert "phi.replay" in failed

    def test_trace_lemmas(self, phi_input, phi_final):
        assert check_trace_lemmas(Phi(phi_input, 4)[1]) == []
        assert check_trace_lemmas(Psi(phi_final, 4)[1]) == []


class TestObservations:
    def test_k3(self):
        stats = observation_cases(3)
        assert stats["theta_prime_after_theta"][0] == 2
        assert stats["theta_after_theta_prime"][0] == 2
        assert check_observations(3)

    def test_k4(self):
        stats = observation_cases(4)
        assert {v[0] for v in stats.values()} == {6}
        assert all(v[2] == 0 for v in stats.values())
        assert check_observations(4)

    def test_guard_skips_cases(self):
        # configurations outside the side condition are counted but not checked
        for k in (3, 4, 5):
            for total, applicable, _ in observation_cases(k).values():
                assert applicable < total


def test_failure_json_is_valid():
    rep = verify_shape(YoungDiagram((3, 3, 2)), 3)
    assert json.loads(rep.failure_json())["failures"] == []
