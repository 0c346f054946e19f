"""File-backed persistence for case records and contestation sessions.

Layout under the store root:

    cases/<case_id>/record.json      frozen CaseRecord, write-once
    sessions/<session_id>.json       full session state, replaced per edit
    sessions/<session_id>.audit.jsonl  append-friendly audit export

Writes go through a temp file and os.replace so readers never observe a
half-written document. Case records are write-once: re-saving a record
whose canonical form matches the stored one is a no-op, anything else is
an error rather than a silent overwrite.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Mapping

from claimcourt.canonical import canonical_json
from claimcourt.contestation import CaseRecord, ContestationSession, dump_audit_jsonl


class StoreError(RuntimeError):
    code = "STORE_ERROR"


class CaseNotFoundError(StoreError):
    code = "CASE_NOT_FOUND"


class CaseExistsError(StoreError):
    code = "CASE_EXISTS"


class SessionNotFoundError(StoreError):
    code = "SESSION_NOT_FOUND"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class CaseStore:
    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        self.cases_dir = self.root / "cases"
        self.sessions_dir = self.root / "sessions"

    # -- cases

    def case_path(self, case_id: str) -> Path:
        return self.cases_dir / case_id / "record.json"

    def save_case(self, record: CaseRecord) -> Path:
        """Write-once semantics keyed by canonical form."""
        path = self.case_path(record.case_id)
        if path.exists():
            existing = self.load_case(record.case_id)
            if existing.canonical_form() == record.canonical_form():
                return path  # identical rerun, nothing to do
            raise CaseExistsError(
                f"case {record.case_id!r} already stored with different content"
            )
        _atomic_write(path, canonical_json(record.to_doc()) + "\n")
        return path

    def load_case(self, case_id: str) -> CaseRecord:
        path = self.case_path(case_id)
        if not path.exists():
            raise CaseNotFoundError(f"no stored case {case_id!r}")
        return CaseRecord.from_doc(json.loads(path.read_text(encoding="utf-8")))

    def has_case(self, case_id: str) -> bool:
        return self.case_path(case_id).exists()

    def list_cases(self) -> list[str]:
        if not self.cases_dir.exists():
            return []
        return sorted(p.name for p in self.cases_dir.iterdir() if (p / "record.json").exists())

    # -- sessions

    def session_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.json"

    def audit_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.audit.jsonl"

    def save_session(self, session: ContestationSession) -> Path:
        """Snapshot the whole session; the audit export rides along."""
        path = self.session_path(session.session_id)
        _atomic_write(path, canonical_json(session.to_doc()) + "\n")
        _atomic_write(self.audit_path(session.session_id), dump_audit_jsonl(session.audit))
        return path

    def load_session_doc(self, session_id: str) -> Mapping[str, Any]:
        path = self.session_path(session_id)
        if not path.exists():
            raise SessionNotFoundError(f"no stored session {session_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def load_session(self, session_id: str) -> ContestationSession:
        doc = self.load_session_doc(session_id)
        case = self.load_case(doc["case_id"])
        return ContestationSession.from_doc(doc, case)

    def list_sessions(self, case_id: str | None = None) -> list[str]:
        if not self.sessions_dir.exists():
            return []
        ids = sorted(
            p.name.removesuffix(".json")
            for p in self.sessions_dir.glob("*.json")
            if not p.name.endswith(".audit.jsonl")
        )
        if case_id is None:
            return ids
        return [sid for sid in ids if self.load_session_doc(sid)["case_id"] == case_id]
