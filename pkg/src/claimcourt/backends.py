"""Text-model backends behind one narrow interface.

Every model interaction in the pipeline goes through ``TextModelBackend``
as a purpose-tagged request with a JSON payload and comes back as parsed
JSON fields. That choke point gives us:

  * ScriptedBackend    - table-driven responses for unit tests
  * ReplayBackend      - digest-keyed fixtures recorded from live runs
  * RecordingBackend   - wrapper that writes those fixtures
  * DemoBackend        - deterministic synthetic responses, no network
  * HttpBackend        - real chat-completions endpoint

Purposes: select (team selection), generate (argument drafting and
contestation proposals), score (rubric scoring), relate (pairwise relation
classification), adjudicate (clash resolution), judge (borderline
escalation).
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

import requests

from claimcourt.canonical import canonical_json

PURPOSES = ("select", "generate", "score", "relate", "adjudicate", "judge")


class BackendError(RuntimeError):
    """The backend could not produce a usable response."""


class ReplayMiss(BackendError):
    """No recorded fixture exists for this request digest."""


@dataclass(frozen=True)
class BackendRequest:
    purpose: str
    payload: Mapping[str, Any]
    schema: str | None = None

    def __post_init__(self) -> None:
        if self.purpose not in PURPOSES:
            raise ValueError(f"unknown purpose {self.purpose!r}; expected one of {PURPOSES}")

    def digest(self) -> str:
        body = {"purpose": self.purpose, "schema": self.schema, "payload": self.payload}
        return hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class BackendResponse:
    fields: Mapping[str, Any]
    raw: str = ""


class TextModelBackend:
    """Base class: records every request, delegates to ``_complete``."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.calls: list[BackendRequest] = []

    def complete(self, request: BackendRequest) -> BackendResponse:
        with self._lock:
            self.calls.append(request)
        return self._complete(request)

    def _complete(self, request: BackendRequest) -> BackendResponse:
        raise NotImplementedError

    def call_count(self, purpose: str | None = None) -> int:
        with self._lock:
            if purpose is None:
                return len(self.calls)
            return sum(1 for c in self.calls if c.purpose == purpose)

    def reset_calls(self) -> None:
        with self._lock:
            self.calls.clear()


def extract_json_object(text: str) -> dict[str, Any]:
    """Parse the JSON object out of model text, tolerating fences and prose."""
    stripped = text.strip()
    if stripped.startswith("```"):
        stripped = stripped.split("\n", 1)[-1]
        stripped = stripped.rsplit("```", 1)[0]
    start = stripped.find("{")
    end = stripped.rfind("}")
    if start < 0 or end <= start:
        raise BackendError(f"no JSON object in model output: {text[:80]!r}")
    try:
        parsed = json.loads(stripped[start : end + 1])
    except json.JSONDecodeError as exc:
        raise BackendError(f"malformed JSON in model output: {exc}") from exc
    if not isinstance(parsed, dict):
        raise BackendError("model output was JSON but not an object")
    return parsed


# --------------------------------------------------------------- scripted


@dataclass
class _Rule:
    purpose: str
    fields: Mapping[str, Any] | None
    when: Callable[[Mapping[str, Any]], bool] | None
    respond: Callable[[BackendRequest], Mapping[str, Any]] | None
    once: bool
    used: bool = False


class ScriptedBackend(TextModelBackend):
    """Deterministic per-purpose response table for tests.

    Rules are matched in registration order; ``when`` filters on the payload
    and ``respond`` computes fields from the full request. A ``once`` rule is
    consumed by its first match, which makes retry behaviour scriptable.
    """

    def __init__(self) -> None:
        super().__init__()
        self._rules: list[_Rule] = []

    def on(
        self,
        purpose: str,
        fields: Mapping[str, Any] | None = None,
        *,
        when: Callable[[Mapping[str, Any]], bool] | None = None,
        respond: Callable[[BackendRequest], Mapping[str, Any]] | None = None,
        once: bool = False,
    ) -> "ScriptedBackend":
        if (fields is None) == (respond is None):
            raise ValueError("provide exactly one of fields= or respond=")
        self._rules.append(_Rule(purpose, fields, when, respond, once))
        return self

    def _complete(self, request: BackendRequest) -> BackendResponse:
        for rule in self._rules:
            if rule.used or rule.purpose != request.purpose:
                continue
            if rule.when is not None and not rule.when(request.payload):
                continue
            if rule.once:
                rule.used = True
            fields = rule.respond(request) if rule.respond else rule.fields
            return BackendResponse(fields=dict(fields))
        raise BackendError(f"no scripted response for purpose {request.purpose!r}")


# ----------------------------------------------------------- record/replay


class ReplayBackend(TextModelBackend):
    """Serve responses from digest-keyed fixture files; never call a model."""

    def __init__(self, fixtures_dir: str | Path) -> None:
        super().__init__()
        self.fixtures_dir = Path(fixtures_dir)

    def _complete(self, request: BackendRequest) -> BackendResponse:
        path = self.fixtures_dir / f"{request.digest()}.json"
        if not path.exists():
            raise ReplayMiss(
                f"no fixture for {request.purpose!r} request "
                f"{request.digest()[:12]} in {self.fixtures_dir}"
            )
        doc = json.loads(path.read_text("utf-8"))
        return BackendResponse(fields=doc["fields"], raw=doc.get("raw", ""))


class RecordingBackend(TextModelBackend):
    """Pass requests through and persist each response as a replay fixture."""

    def __init__(self, inner: TextModelBackend, fixtures_dir: str | Path) -> None:
        super().__init__()
        self.inner = inner
        self.fixtures_dir = Path(fixtures_dir)
        self.fixtures_dir.mkdir(parents=True, exist_ok=True)

    def _complete(self, request: BackendRequest) -> BackendResponse:
        response = self.inner.complete(request)
        doc = {
            "purpose": request.purpose,
            "schema": request.schema,
            "payload": request.payload,
            "fields": response.fields,
            "raw": response.raw,
        }
        path = self.fixtures_dir / f"{request.digest()}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", "utf-8")
        return response


# ------------------------------------------------------------------- demo


def _h(*parts: str) -> int:
    return int.from_bytes(hashlib.sha256(":".join(parts).encode("utf-8")).digest()[:8], "big")


def _unit(*parts: str) -> float:
    return _h(*parts) % 10_000 / 9_999


_SUPPORT_TEMPLATES = (
    "{role} argues the record satisfies every element: {claim}",
    "On the controlling authority, {role} concludes that {claim}",
    "{role} points to the stipulated facts, which leave {claim} the only sound reading",
    "Weighing the equities, {role} finds {claim} well grounded",
)

_ATTACK_TEMPLATES = (
    "{role} objects that a required element is missing, so it is not the case that {claim}",
    "{role} distinguishes the cited authority and rejects the view that {claim}",
    "On procedural grounds {role} contends the record cannot establish that {claim}",
    "{role} identifies an unrebutted exception undercutting the position that {claim}",
)


class DemoBackend(TextModelBackend):
    """Deterministic synthetic responses for offline demos and smoke tests.

    Every field is derived from a hash of the request, so identical inputs
    produce identical runs with no network and no stored fixtures.
    """

    def __init__(self, seed: int = 0) -> None:
        super().__init__()
        self.seed = str(seed)

    def _complete(self, request: BackendRequest) -> BackendResponse:
        digest = request.digest()
        key = f"{self.seed}:{digest}"
        handler = getattr(self, f"_demo_{request.purpose}")
        return BackendResponse(fields=handler(key, request))

    def _demo_select(self, key: str, request: BackendRequest) -> dict[str, Any]:
        roles = list(request.payload.get("available_roles", ()))
        ranked = sorted(roles, key=lambda r: _h(key, "rank", r))
        take = 2 + _h(key, "take") % 2
        chosen = sorted(ranked[:take])
        return {"roles": chosen, "rationale": "selected for coverage of the issues raised"}

    def _demo_generate(self, key: str, request: BackendRequest) -> dict[str, Any]:
        if request.schema == "contest_proposals":
            return self._demo_proposals(key, request)
        payload = request.payload
        claim = str(payload.get("claim", "the claim holds")).rstrip(".")
        role = str(payload.get("role", "the analyst"))
        stance = payload.get("stance", "support")
        templates = _SUPPORT_TEMPLATES if stance == "support" else _ATTACK_TEMPLATES
        passages = [p.get("id") for p in payload.get("passages", ()) if p.get("id")]
        count = 1 + _h(key, "count") % 3
        arguments = []
        for i in range(count):
            template = templates[_h(key, "tmpl", str(i)) % len(templates)]
            cites = sorted(passages, key=lambda p: _h(key, str(i), p))[:2]
            arguments.append(
                {"text": template.format(role=role, claim=claim), "evidence": cites}
            )
        return {"arguments": arguments}

    def _demo_proposals(self, key: str, request: BackendRequest) -> dict[str, Any]:
        graph = request.payload.get("graph", {})
        ids = sorted(a.get("id") for a in graph.get("arguments", ()) if a.get("id"))
        proposals: list[dict[str, Any]] = []
        if ids:
            target = ids[_h(key, "target") % len(ids)]
            proposals.append(
                {
                    "kind": "set_base_strength",
                    "node_id": target,
                    "new_strength": round(0.1 + 0.9 * _unit(key, "strength"), 2),
                    "rationale": "reported evidential weight does not match the source",
                }
            )
            if len(ids) > 1 and _h(key, "also") % 2:
                other = ids[_h(key, "other") % len(ids)]
                if other != target:
                    proposals.append(
                        {
                            "kind": "reject_argument",
                            "node_id": other,
                            "rationale": "rests on authority inapplicable in this jurisdiction",
                        }
                    )
        return {"proposals": proposals}

    def _demo_score(self, key: str, request: BackendRequest) -> dict[str, Any]:
        score = round(0.1 + 0.9 * _unit(key, "score"), 2)
        return {"score": score, "rationale": "rubric band chosen from issue coverage and rigor"}

    def _demo_relate(self, key: str, request: BackendRequest) -> dict[str, Any]:
        verdicts = []
        for pair in request.payload.get("pairs", ()):
            a, b = pair["a"], pair["b"]
            pick = _h(key, a["id"], b["id"], "label") % 10
            if pick < 5:
                label = "neutral"
            elif a.get("stance") == b.get("stance"):
                label = "support"
            else:
                label = "attack"
            confidence = round(0.5 + 0.5 * _unit(key, a["id"], b["id"], "conf"), 2)
            verdicts.append(
                {"pair": [a["id"], b["id"]], "label": label, "confidence": confidence}
            )
        return {"verdicts": verdicts}

    def _demo_adjudicate(self, key: str, request: BackendRequest) -> dict[str, Any]:
        pick = _h(key, "winner") % 5
        winner = "supporter" if pick < 2 else "attacker" if pick < 4 else "tie"
        return {"winner": winner, "rationale": "the prevailing side addressed the weakness directly"}

    def _demo_judge(self, key: str, request: BackendRequest) -> dict[str, Any]:
        strength = float(request.payload.get("strength", 0.5))
        lean = "yes" if strength >= 0.5 else "no"
        flip = _h(key, "flip") % 4 == 0
        answer = ("no" if lean == "yes" else "yes") if flip else lean
        return {"answer": answer, "rationale": "weighed the borderline record de novo"}


# ------------------------------------------------------------------- http

Transport = Callable[[str, Mapping[str, str], Mapping[str, Any]], tuple[int, str]]


def _requests_transport(url: str, headers: Mapping[str, str], body: Mapping[str, Any]) -> tuple[int, str]:
    resp = requests.post(url, headers=dict(headers), json=dict(body), timeout=body.get("_timeout", 60))
    return resp.status_code, resp.text


_SYSTEM_PROMPTS = {
    "select": "You assemble a team of legal roles for one side of a dispute. Reply with a single JSON object: {\"roles\": [..], \"rationale\": \"..\"}.",
    "generate": "You draft arguments for one side of a legal claim. Reply with a single JSON object matching the requested schema.",
    "score": "You grade one legal argument against the provided rubric. Reply with a single JSON object: {\"score\": <number>, \"rationale\": \"..\"}.",
    "relate": "You classify the relation within each pair of arguments. Reply with a single JSON object: {\"verdicts\": [{\"pair\": [idA, idB], \"label\": \"attack|support|neutral\", \"confidence\": <number>}]}.",
    "adjudicate": "You adjudicate a head-to-head clash between two arguments. Reply with a single JSON object: {\"winner\": \"supporter|attacker|tie\", \"rationale\": \"..\"}.",
    "judge": "You issue a final yes/no ruling on a borderline claim. Reply with a single JSON object: {\"answer\": \"yes|no\", \"rationale\": \"..\"}.",
}


class HttpBackend(TextModelBackend):
    """Chat-completions client speaking the common JSON message format.

    The transport is injectable so tests can drive every branch without a
    network; the default uses ``requests``.
    """

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key_env: str = "CLAIMCOURT_API_KEY",
        timeout: float = 60.0,
        max_retries: int = 2,
        retry_wait: float = 0.5,
        transport: Transport | None = None,
    ) -> None:
        super().__init__()
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.max_retries = max_retries
        self.retry_wait = retry_wait
        self.transport = transport or _requests_transport

    def _complete(self, request: BackendRequest) -> BackendResponse:
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(self.api_key_env, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        user_text = canonical_json(dict(request.payload))
        if request.schema:
            user_text = f"schema: {request.schema}\n{user_text}"
        body = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": _SYSTEM_PROMPTS[request.purpose]},
                {"role": "user", "content": user_text},
            ],
            "temperature": 0,
            "_timeout": self.timeout,
        }
        url = f"{self.endpoint}/chat/completions"
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt and self.retry_wait:
                time.sleep(self.retry_wait * attempt)
            try:
                status, text = self.transport(url, headers, body)
            except requests.RequestException as exc:
                last_error = BackendError(f"transport failure: {exc}")
                continue
            if status == 429 or status >= 500:
                last_error = BackendError(f"endpoint returned {status}")
                continue
            if status != 200:
                raise BackendError(f"endpoint returned {status}: {text[:200]}")
            try:
                envelope = json.loads(text)
                content = envelope["choices"][0]["message"]["content"]
                return BackendResponse(fields=extract_json_object(content), raw=content)
            except (KeyError, IndexError, TypeError, json.JSONDecodeError, BackendError) as exc:
                last_error = BackendError(f"unusable completion: {exc}")
                continue
        raise BackendError(
            f"{request.purpose} request failed after {self.max_retries + 1} attempts: {last_error}"
        )
