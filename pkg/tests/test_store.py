from dataclasses import replace

import pytest

from claimcourt.agents import LegalTask
from claimcourt.contestation import (
    ContestationType,
    EditKind,
    EditOp,
    apply_edit,
    dump_audit_jsonl,
    open_session,
)
from claimcourt.decision import Decision, DecisionParams, decide
from claimcourt.qbaf import Argument, SolverParams, Stance, build_graph, solve_equilibrium
from claimcourt.store import (
    CaseExistsError,
    CaseNotFoundError,
    CaseStore,
    SessionNotFoundError,
)
from test_contestation import balanced_star_case, make_case, _arg


@pytest.fixture
def store(tmp_path):
    return CaseStore(tmp_path)


class TestCases:
    def test_save_and_load_round_trip(self, store):
        case = balanced_star_case()
        path = store.save_case(case)
        assert path.exists()
        loaded = store.load_case(case.case_id)
        assert loaded.canonical_form() == case.canonical_form()
        assert loaded.created_at == case.created_at

    def test_missing_case(self, store):
        with pytest.raises(CaseNotFoundError) as exc:
            store.load_case("case-nope")
        assert exc.value.code == "CASE_NOT_FOUND"

    def test_identical_resave_is_noop(self, store):
        case = balanced_star_case()
        store.save_case(case)
        store.save_case(case)  # same canonical form, no complaint
        assert store.list_cases() == [case.case_id]

    def test_resave_ignores_created_at_difference(self, store):
        case = balanced_star_case()
        store.save_case(case)
        later = replace(case, created_at="2030-01-01T00:00:00+00:00")
        store.save_case(later)
        # the original timestamp stays on disk
        assert store.load_case(case.case_id).created_at == case.created_at

    def test_conflicting_resave_is_refused(self, store):
        case = balanced_star_case()
        store.save_case(case)
        other = make_case([_arg("z", Stance.SUPPORT, 0.9)], case_id=case.case_id)
        with pytest.raises(CaseExistsError) as exc:
            store.save_case(other)
        assert exc.value.code == "CASE_EXISTS"

    def test_list_cases_sorted(self, store):
        for cid in ("case-bbb", "case-aaa"):
            store.save_case(make_case([], case_id=cid))
        assert store.list_cases() == ["case-aaa", "case-bbb"]

    def test_no_temp_files_left_behind(self, store, tmp_path):
        store.save_case(balanced_star_case())
        leftovers = [p for p in tmp_path.rglob("*.tmp")]
        assert leftovers == []


class TestSessions:
    def test_session_round_trip(self, store):
        case = balanced_star_case()
        store.save_case(case)
        session = open_session(case, session_id="sess-1")
        apply_edit(
            session,
            EditOp(
                kind=EditKind.REJECT_ARGUMENT,
                actor="reviewer",
                contestation_type=ContestationType.FACTUAL,
                node_id="a-att",
            ),
        )
        store.save_session(session)
        loaded = store.load_session("sess-1")
        assert loaded.to_doc() == session.to_doc()
        assert loaded.strengths.claim_strength() == session.strengths.claim_strength()

    def test_audit_file_matches_session(self, store):
        case = balanced_star_case()
        store.save_case(case)
        session = open_session(case, session_id="sess-2")
        apply_edit(
            session,
            EditOp(
                kind=EditKind.SET_BASE_STRENGTH,
                actor="reviewer",
                contestation_type=ContestationType.FACTUAL,
                node_id="a-sup",
                new_strength=0.9,
            ),
        )
        store.save_session(session)
        on_disk = store.audit_path("sess-2").read_text(encoding="utf-8")
        assert on_disk == dump_audit_jsonl(session.audit)

    def test_missing_session(self, store):
        with pytest.raises(SessionNotFoundError):
            store.load_session("sess-missing")

    def test_list_sessions_filters_by_case(self, store):
        case_a = balanced_star_case()
        case_b = make_case([_arg("solo", Stance.SUPPORT, 0.7)], case_id="case-other")
        store.save_case(case_a)
        store.save_case(case_b)
        store.save_session(open_session(case_a, session_id="sess-a"))
        store.save_session(open_session(case_b, session_id="sess-b"))
        assert store.list_sessions() == ["sess-a", "sess-b"]
        assert store.list_sessions(case_a.case_id) == ["sess-a"]
