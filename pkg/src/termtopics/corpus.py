"""Document and corpus data model plus jsonl loading/saving.

Corpora arrive pre-annotated (lemma/POS/NER per token) as one JSON object
per line; plain text corpora are tokenized with the fallback tokenizer so
the rest of the pipeline sees the same shape.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from .errors import CorpusValidationError, IngestError

if TYPE_CHECKING:
    from .rank import RankingParams

ANNOTATED_JSONL = "annotated-jsonl"
PLAIN_JSONL = "plain-jsonl"


@dataclass(frozen=True)
class AnnotatedToken:
    surface: str
    lemma: str
    pos: str
    ner: str | None
    position: int


@dataclass(frozen=True)
class AnnotatedDocument:
    doc_id: str
    title: str
    tokens: tuple[AnnotatedToken, ...]
    date: datetime.date | None = None
    tags: tuple[str, ...] = ()
    raw_text: str | None = None


@dataclass(frozen=True)
class Corpus:
    corpus_id: str
    documents: tuple[AnnotatedDocument, ...]
    ingest_params: "RankingParams | None" = None

    def __len__(self) -> int:
        return len(self.documents)

    def get(self, doc_id: str) -> AnnotatedDocument | None:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        return None


@dataclass
class ValidationReport:
    """Outcome of validate_corpus; fatal issues block ingestion, warnings do not."""

    fatal: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.fatal


def _parse_token(obj: dict, index: int) -> AnnotatedToken:
    return AnnotatedToken(
        surface=str(obj["surface"]),
        lemma=str(obj["lemma"]),
        pos=str(obj["pos"]),
        ner=obj.get("ner"),
        position=int(obj.get("position", index)),
    )


def _parse_line(line: str, line_no: int, fmt: str) -> AnnotatedDocument:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise IngestError(f"line {line_no}: invalid JSON ({exc.msg})", line_no) from exc
    if not isinstance(obj, dict):
        raise IngestError(f"line {line_no}: expected a JSON object", line_no)

    try:
        doc_id = str(obj["doc_id"])
        title = str(obj.get("title", ""))
        raw_date = obj.get("date")
        date = datetime.date.fromisoformat(raw_date) if raw_date else None
        tags = tuple(str(t) for t in (obj.get("tags") or ()))
        raw_text = obj.get("raw_text")

        if fmt == ANNOTATED_JSONL:
            tokens = tuple(
                _parse_token(tok, i) for i, tok in enumerate(obj.get("tokens") or ())
            )
        elif fmt == PLAIN_JSONL:
            if raw_text is None:
                raise KeyError("raw_text")
            # Deferred import: preprocess depends on this module's types.
            from .preprocess import fallback_tokenize

            tokens = tuple(fallback_tokenize(raw_text))
        else:
            raise ValueError(f"unsupported corpus format {fmt!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"line {line_no}: {exc!r}", line_no) from exc

    _check_positions(tokens, doc_id, line_no)
    return AnnotatedDocument(
        doc_id=doc_id, title=title, tokens=tokens, date=date, tags=tags, raw_text=raw_text
    )


def _check_positions(tokens: Iterable[AnnotatedToken], doc_id: str, line_no: int) -> None:
    last = -1
    for tok in tokens:
        if not tok.lemma:
            raise IngestError(f"line {line_no}: empty lemma in doc {doc_id!r}", line_no)
        if tok.position <= last:
            raise IngestError(
                f"line {line_no}: token positions not strictly increasing in doc {doc_id!r}",
                line_no,
            )
        last = tok.position


def load_corpus(
    path: str | Path,
    fmt: str = ANNOTATED_JSONL,
    corpus_id: str | None = None,
    ingest_params: "RankingParams | None" = None,
) -> Corpus:
    """Load a corpus from a jsonl file, preserving file order.

    Raises IngestError for malformed lines (naming the line number) and
    CorpusValidationError for duplicate doc_ids or an empty corpus.
    """
    path = Path(path)
    documents: list[AnnotatedDocument] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            doc = _parse_line(line, line_no, fmt)
            if doc.doc_id in seen:
                raise CorpusValidationError(f"duplicate doc_id {doc.doc_id!r}")
            seen.add(doc.doc_id)
            documents.append(doc)
    if not documents:
        raise CorpusValidationError(f"corpus file {path} contains no documents")
    return Corpus(
        corpus_id=corpus_id or path.stem,
        documents=tuple(documents),
        ingest_params=ingest_params,
    )


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus as annotated-jsonl; load_corpus() round-trips it."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for doc in corpus.documents:
            fh.write(json.dumps(document_to_json(doc), ensure_ascii=False))
            fh.write("\n")


def document_to_json(doc: AnnotatedDocument) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "date": doc.date.isoformat() if doc.date else None,
        "tags": list(doc.tags),
        "raw_text": doc.raw_text,
        "tokens": [
            {
                "surface": t.surface,
                "lemma": t.lemma,
                "pos": t.pos,
                "ner": t.ner,
                "position": t.position,
            }
            for t in doc.tokens
        ],
    }


def validate_corpus(corpus: Corpus) -> ValidationReport:
    """Report-only validation: empty token lists are fatal, missing dates
    and titles are warnings."""
    report = ValidationReport()
    for doc in corpus.documents:
        if not doc.tokens:
            report.fatal.append(f"document {doc.doc_id!r} has no tokens")
        if doc.date is None:
            report.warnings.append(f"document {doc.doc_id!r} has no date")
        if not doc.title:
            report.warnings.append(f"document {doc.doc_id!r} has no title")
    return report
