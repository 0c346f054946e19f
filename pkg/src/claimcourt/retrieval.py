"""Evidence retrieval: corpus chunking, lexical search, context assembly.

Documents are split into fixed-size overlapping passages addressed as
``{doc_id}:{offset}``. Retrieval is deliberately simple lexical overlap;
the rest of the pipeline only depends on the passage interface, so a
stronger retriever can slot in without touching callers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Protocol


class RetrievalError(ValueError):
    """Corpus or context assembly violated an invariant."""


class Provenance(str, Enum):
    CORPUS = "corpus"
    WEB_SEARCH = "web_search"
    USER_SUBMITTED = "user_submitted"


@dataclass(frozen=True)
class EvidencePassage:
    """One retrievable chunk of source text."""

    passage_id: str
    doc_id: str
    text: str
    score: float = 0.0
    provenance: Provenance = Provenance.CORPUS

    def to_doc(self) -> dict:
        return {
            "passage_id": self.passage_id,
            "doc_id": self.doc_id,
            "text": self.text,
            "score": self.score,
            "provenance": self.provenance.value,
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "EvidencePassage":
        return cls(
            passage_id=doc["passage_id"],
            doc_id=doc["doc_id"],
            text=doc["text"],
            score=doc.get("score", 0.0),
            provenance=Provenance(doc.get("provenance", Provenance.CORPUS.value)),
        )


@dataclass(frozen=True)
class ChunkParams:
    window: int = 1000
    overlap: int = 200

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"window must be positive, got {self.window}")
        if not 0 <= self.overlap < self.window:
            raise ValueError(
                f"overlap must be in [0, window), got {self.overlap} for window {self.window}"
            )

    @property
    def stride(self) -> int:
        return self.window - self.overlap


_TOKEN = re.compile(r"[a-z0-9']+")


def tokenize(text: str) -> frozenset[str]:
    return frozenset(_TOKEN.findall(text.lower()))


def chunk_document(doc_id: str, text: str, params: ChunkParams) -> list[EvidencePassage]:
    """Split one document into overlapping passages keyed by char offset."""
    if not doc_id:
        raise RetrievalError("document id must be non-empty")
    if not text.strip():
        raise RetrievalError(f"document {doc_id!r} is empty")
    passages = []
    for start in range(0, len(text), params.stride):
        piece = text[start : start + params.window]
        passages.append(
            EvidencePassage(passage_id=f"{doc_id}:{start}", doc_id=doc_id, text=piece)
        )
    return passages


class CorpusIndex:
    """All passages of an indexed corpus with precomputed token sets."""

    def __init__(self, passages: Iterable[EvidencePassage]) -> None:
        self.passages = tuple(passages)
        self._tokens = {p.passage_id: tokenize(p.text) for p in self.passages}
        self.by_id = {p.passage_id: p for p in self.passages}

    def __len__(self) -> int:
        return len(self.passages)

    def tokens(self, passage_id: str) -> frozenset[str]:
        return self._tokens[passage_id]


def index_corpus(
    documents: Mapping[str, str], params: ChunkParams | None = None
) -> CorpusIndex:
    """Chunk and index a corpus of {doc_id: text}. An empty corpus is legal."""
    params = params or ChunkParams()
    passages: list[EvidencePassage] = []
    seen: set[str] = set()
    for doc_id, text in documents.items():
        if doc_id in seen:
            raise RetrievalError(f"duplicate document id {doc_id!r}")
        seen.add(doc_id)
        passages.extend(chunk_document(doc_id, text, params))
    return CorpusIndex(passages)


def load_corpus_dir(path: str | Path) -> dict[str, str]:
    """Read every .txt/.md file under a directory; doc id is the file stem."""
    root = Path(path)
    if not root.is_dir():
        raise RetrievalError(f"corpus directory {root} does not exist")
    documents: dict[str, str] = {}
    for file in sorted(root.rglob("*")):
        if file.suffix not in (".txt", ".md") or not file.is_file():
            continue
        if file.stem in documents:
            raise RetrievalError(f"duplicate document id {file.stem!r} under {root}")
        documents[file.stem] = file.read_text("utf-8")
    return documents


def retrieve(index: CorpusIndex, query: str, k: int = 5) -> list[EvidencePassage]:
    """Top-k passages by token Jaccard overlap with the query.

    Zero-overlap passages never appear, so fewer than k results is normal.
    Ties break on passage id to keep runs reproducible.
    """
    if k < 0:
        raise RetrievalError(f"k must be non-negative, got {k}")
    if k == 0:
        return []
    query_tokens = tokenize(query)
    if not query_tokens:
        return []
    scored: list[EvidencePassage] = []
    for passage in index.passages:
        tokens = index.tokens(passage.passage_id)
        union = len(query_tokens | tokens)
        if union == 0:
            continue
        score = len(query_tokens & tokens) / union
        if score > 0.0:
            scored.append(
                EvidencePassage(
                    passage_id=passage.passage_id,
                    doc_id=passage.doc_id,
                    text=passage.text,
                    score=score,
                    provenance=passage.provenance,
                )
            )
    scored.sort(key=lambda p: (-p.score, p.passage_id))
    return scored[:k]


class WebSearchProvider(Protocol):
    """Optional secondary evidence source."""

    def search(self, query: str, k: int) -> list[EvidencePassage]: ...


class NullWebSearch:
    """Stands in when no web search is configured; finds nothing."""

    def search(self, query: str, k: int) -> list[EvidencePassage]:
        return []


@dataclass(frozen=True)
class CaseContext:
    """The evidence bundle handed to agents for one case."""

    passages: tuple[EvidencePassage, ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for p in self.passages:
            if p.passage_id in seen:
                raise RetrievalError(f"duplicate passage id {p.passage_id!r} in context")
            seen.add(p.passage_id)

    def ids(self) -> tuple[str, ...]:
        return tuple(p.passage_id for p in self.passages)

    def get(self, passage_id: str) -> EvidencePassage | None:
        for p in self.passages:
            if p.passage_id == passage_id:
                return p
        return None

    def summary(self, per_passage: int = 240) -> str:
        lines = []
        for p in self.passages:
            text = p.text if len(p.text) <= per_passage else p.text[: per_passage - 3] + "..."
            lines.append(f"[{p.passage_id}] {text}")
        return "\n".join(lines)

    def to_doc(self) -> dict:
        return {"passages": [p.to_doc() for p in self.passages]}

    @classmethod
    def from_doc(cls, doc: Mapping) -> "CaseContext":
        return cls(passages=tuple(EvidencePassage.from_doc(d) for d in doc.get("passages", ())))


def assemble_context(
    corpus_hits: Iterable[EvidencePassage],
    web_hits: Iterable[EvidencePassage] = (),
) -> CaseContext:
    """Merge evidence sources into one context, strongest passages first."""
    merged = [*corpus_hits, *web_hits]
    merged.sort(key=lambda p: (-p.score, p.passage_id))
    return CaseContext(passages=tuple(merged))
