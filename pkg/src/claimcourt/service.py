"""HTTP surface for case construction and contestation.

Thin by design: every route body delegates to the pipeline, store, or
contestation modules, then persists. Anything readable here is rebuildable
from the store files, so a restarted service picks up exactly where the
previous one stopped. Errors carry machine-readable codes so clients can
branch without parsing prose.
"""

from __future__ import annotations

import threading
from typing import Any, Mapping

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse

from claimcourt.contestation import (
    ContestationError,
    ContestationSession,
    ContestationType,
    EditOp,
    ProposalNotFoundError,
    StaleNodeError,
    UnknownNodeError,
    accept_proposal,
    apply_edit,
    argument_card,
    dashboard,
    open_session,
    reject_proposal,
    run_contestation_prompt,
    session_argument_card,
)
from claimcourt.pipeline import (
    BackendRouter,
    ConfigError,
    PipelineConfig,
    PipelineError,
    run_case,
)
from claimcourt.qbaf import GraphError
from claimcourt.store import (
    CaseExistsError,
    CaseNotFoundError,
    CaseStore,
    SessionNotFoundError,
    StoreError,
)

API_PREFIX = "/api/v1"

_STATUS_BY_CODE = {
    "CASE_NOT_FOUND": 404,
    "SESSION_NOT_FOUND": 404,
    "EDIT_UNKNOWN_NODE": 404,
    "EDIT_STALE_NODE": 409,
    "PROPOSAL_NOT_FOUND": 404,
    "CASE_EXISTS": 409,
    "EDIT_INVALID": 400,
    "CONFIG_INVALID": 400,
    "STORE_ERROR": 500,
}


def _error_response(code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=_STATUS_BY_CODE.get(code, 400),
        content={"code": code, "message": message},
    )


def create_app(
    store: CaseStore,
    config: PipelineConfig | None = None,
    router: BackendRouter | None = None,
) -> FastAPI:
    config = config or PipelineConfig()
    router = router or BackendRouter.from_config(config)
    app = FastAPI(title="claimcourt", docs_url=None, redoc_url=None)

    sessions: dict[str, ContestationSession] = {}
    sessions_lock = threading.Lock()

    # -- error translation

    @app.exception_handler(ContestationError)
    async def _contestation_error(request: Request, exc: ContestationError):
        return _error_response(exc.code, str(exc))

    @app.exception_handler(StoreError)
    async def _store_error(request: Request, exc: StoreError):
        return _error_response(exc.code, str(exc))

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return _error_response(exc.code, str(exc))

    @app.exception_handler(GraphError)
    async def _graph_error(request: Request, exc: GraphError):
        return _error_response("EDIT_INVALID", str(exc))

    @app.exception_handler(PipelineError)
    async def _pipeline_error(request: Request, exc: PipelineError):
        return JSONResponse(
            status_code=500,
            content={"code": "PIPELINE_FAILED", "stage": exc.stage, "message": str(exc)},
        )

    # -- helpers

    def _get_session(session_id: str) -> ContestationSession:
        with sessions_lock:
            session = sessions.get(session_id)
            if session is None:
                session = store.load_session(session_id)  # raises SESSION_NOT_FOUND
                sessions[session_id] = session
            return session

    def _persist(session: ContestationSession) -> None:
        store.save_session(session)

    def _session_state(session: ContestationSession) -> dict[str, Any]:
        return {
            "session_id": session.session_id,
            "case_id": session.case.case_id,
            "claim_strength": session.strengths.claim_strength(),
            "decision": session.decision.to_doc(),
            "review_required": session.review_required,
            "edits_applied": len(session.audit),
            "pending_proposals": sorted(
                pid for pid, p in session.proposals.items() if p.status == "pending"
            ),
            "accepted": sorted(session.accepted),
            "removed": sorted(session.removed),
        }

    def _parse_edit(doc: Mapping[str, Any]) -> EditOp:
        if not isinstance(doc, Mapping):
            raise ContestationError("edit body must be a JSON object")
        return EditOp.from_doc(doc)

    # -- meta

    @app.get(f"{API_PREFIX}/health")
    async def health():
        return {"status": "ok"}

    # -- cases

    @app.post(f"{API_PREFIX}/cases", status_code=201)
    async def create_case(body: dict = Body(...)):
        claim = body.get("claim", "")
        run_config = config
        run_router = router
        if body.get("config"):
            merged = {**config.to_doc(), **body["config"]}
            run_config = PipelineConfig.from_doc(merged)
            run_router = BackendRouter.from_config(run_config)
        record = run_case(
            claim,
            run_config,
            task_id=body.get("task_id", "case"),
            metadata=body.get("metadata"),
            corpus=body.get("corpus"),
            store=store,
            router=run_router,
        )
        return {
            "case_id": record.case_id,
            "claim_strength": record.strengths.claim_strength(),
            "decision": record.decision.to_doc(),
        }

    @app.get(f"{API_PREFIX}/cases")
    async def list_cases():
        return {"cases": store.list_cases()}

    @app.get(f"{API_PREFIX}/cases/{{case_id}}")
    async def get_case(case_id: str):
        return store.load_case(case_id).to_doc()

    @app.get(f"{API_PREFIX}/cases/{{case_id}}/graph")
    async def get_graph(case_id: str):
        return store.load_case(case_id).graph.to_doc()

    @app.get(f"{API_PREFIX}/cases/{{case_id}}/strengths")
    async def get_strengths(case_id: str):
        return store.load_case(case_id).strengths.to_doc()

    @app.get(f"{API_PREFIX}/cases/{{case_id}}/decision")
    async def get_decision(case_id: str):
        return store.load_case(case_id).decision.to_doc()

    @app.get(f"{API_PREFIX}/cases/{{case_id}}/dashboard")
    async def get_dashboard(case_id: str):
        return dashboard(store.load_case(case_id))

    @app.get(f"{API_PREFIX}/cases/{{case_id}}/cards/{{node_id}}")
    async def get_card(case_id: str, node_id: str):
        return argument_card(store.load_case(case_id), node_id)

    # -- sessions

    @app.post(f"{API_PREFIX}/cases/{{case_id}}/sessions", status_code=201)
    async def create_session(case_id: str):
        case = store.load_case(case_id)
        session = open_session(case)
        with sessions_lock:
            sessions[session.session_id] = session
        _persist(session)
        return _session_state(session)

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}")
    async def get_session(session_id: str):
        return _session_state(_get_session(session_id))

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/decision")
    async def get_session_decision(session_id: str):
        session = _get_session(session_id)
        return {
            "decision": session.decision.to_doc(),
            "claim_strength": session.strengths.claim_strength(),
            "review_required": session.review_required,
        }

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/dashboard")
    async def get_session_dashboard(session_id: str):
        session = _get_session(session_id)
        with session.lock:
            graph = session.graph()
            return {
                "session_id": session.session_id,
                "case_id": session.case.case_id,
                "claim": session.case.task.claim,
                "claim_strength": session.strengths.claim_strength(),
                "decision": session.decision.to_doc(),
                "review_required": session.review_required,
                "cards": [
                    session_argument_card(session, a.id) for a in graph.arguments
                ],
            }

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/cards/{{node_id}}")
    async def get_session_card(session_id: str, node_id: str):
        return session_argument_card(_get_session(session_id), node_id)

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/edits")
    async def post_edit(session_id: str, body: dict = Body(...)):
        session = _get_session(session_id)
        edit = _parse_edit(body)
        with session.lock:
            entry = apply_edit(session, edit, router.for_purpose("judge"))
            _persist(session)
        return {"audit_entry": entry.to_doc(), **_session_state(session)}

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/preview")
    async def post_preview(session_id: str, body: dict = Body(...)):
        session = _get_session(session_id)
        edit = _parse_edit(body)
        with session.lock:
            scratch = ContestationSession.from_doc(session.to_doc(), session.case)
        # applied to a throwaway copy; the stored session never sees it
        entry = apply_edit(scratch, edit, router.for_purpose("judge"))
        return {
            "preview": True,
            "claim_strength": scratch.strengths.claim_strength(),
            "decision": scratch.decision.to_doc(),
            "review_required": scratch.review_required,
            "sigma_phi_before": entry.sigma_phi_before,
            "sigma_phi_after": entry.sigma_phi_after,
        }

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/contest")
    async def post_contest(session_id: str, body: dict = Body(...)):
        session = _get_session(session_id)
        try:
            ctype = ContestationType(body.get("contestation_type", ""))
        except ValueError:
            raise ContestationError(
                f"contestation_type must be one of "
                f"{[t.value for t in ContestationType]}"
            ) from None
        statement = body.get("statement", "")
        if not statement.strip():
            raise ContestationError("contest needs a statement of the challenge")
        materials = body.get("materials", [])
        if not isinstance(materials, list):
            raise ContestationError("materials must be a list of texts")
        with session.lock:
            proposals = run_contestation_prompt(
                session,
                ctype,
                statement,
                router.for_purpose("generate"),
                materials=materials,
            )
            _persist(session)
        return {"proposals": [p.to_doc() for p in proposals]}

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/proposals")
    async def get_proposals(session_id: str):
        session = _get_session(session_id)
        with session.lock:
            return {
                "proposals": [
                    session.proposals[pid].to_doc() for pid in sorted(session.proposals)
                ]
            }

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/proposals/{{proposal_id}}/accept")
    async def post_accept_proposal(
        session_id: str, proposal_id: str, body: dict | None = Body(default=None)
    ):
        session = _get_session(session_id)
        actor = (body or {}).get("actor", "reviewer")
        with session.lock:
            entry = accept_proposal(
                session, proposal_id, actor=actor, backend=router.for_purpose("judge")
            )
            _persist(session)
        return {"audit_entry": entry.to_doc(), **_session_state(session)}

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/proposals/{{proposal_id}}/reject")
    async def post_reject_proposal(session_id: str, proposal_id: str):
        session = _get_session(session_id)
        with session.lock:
            proposal = reject_proposal(session, proposal_id)
            _persist(session)
        return {"proposal": proposal.to_doc()}

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/audit")
    async def get_audit(session_id: str):
        session = _get_session(session_id)
        with session.lock:
            return {"entries": [entry.to_doc() for entry in session.audit]}

    return app
