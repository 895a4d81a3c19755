"""Token filtering, named-entity merging and fallback tokenization.

Reduces each document to its candidate terms: adjectives, nouns and proper
nouns that are not stopwords, with contiguous named-entity spans merged
into single multiword terms.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import AnnotatedDocument, AnnotatedToken

log = logging.getLogger(__name__)

KEPT_POS = {"ADJ", "NOUN", "PROPN"}

_WORD_RE = re.compile(r"\w+", re.UNICODE)
_LETTER_RE = re.compile(r"[^\W\d_]", re.UNICODE)


@dataclass(frozen=True)
class Term:
    text: str
    is_entity: bool = False


@dataclass(frozen=True)
class TermOccurrence:
    term: Term
    position: int  # token position of the (first) underlying token
    end: int = -1  # exclusive end position; single tokens span [position, position+1)

    def __post_init__(self):
        if self.end < 0:
            object.__setattr__(self, "end", self.position + 1)


@dataclass(frozen=True)
class TermDocument:
    doc_id: str
    terms: tuple[TermOccurrence, ...]

    def term_texts(self) -> list[str]:
        return [occ.term.text for occ in self.terms]


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a one-word-per-line stopword file (case-folded); the bundled
    English list is used when no path is given."""
    if path is None:
        text = resources.files("termtopics.data").joinpath("stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(
        line.strip().casefold() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


def filter_tokens(doc: AnnotatedDocument, stopwords: frozenset[str]) -> TermDocument:
    """Keep ADJ/NOUN/PROPN tokens whose lemma has a letter and is no stopword.

    Term text is the lemma, case-folded except for proper nouns.
    """
    occs = []
    for tok in doc.tokens:
        if tok.pos not in KEPT_POS:
            continue
        if not _LETTER_RE.search(tok.lemma):
            continue
        if tok.lemma.casefold() in stopwords:
            continue
        text = tok.lemma if tok.pos == "PROPN" else tok.lemma.casefold()
        occs.append(TermOccurrence(Term(text), tok.position))
    return TermDocument(doc_id=doc.doc_id, terms=tuple(occs))


def _entity_spans(tokens: tuple[AnnotatedToken, ...]) -> list[tuple[int, int]]:
    """Contiguous BIO spans as (start_index, end_index) over the token tuple.

    An I- tag without a matching open span is repaired to a B- tag.
    """
    spans: list[tuple[int, int]] = []
    start: int | None = None
    label: str | None = None
    for i, tok in enumerate(tokens):
        tag = tok.ner
        if tag and "-" in tag:
            bio, _, ent_label = tag.partition("-")
        else:
            bio, ent_label = "O", None
        if bio == "B":
            if start is not None:
                spans.append((start, i))
            start, label = i, ent_label
        elif bio == "I":
            if start is not None and ent_label == label:
                continue
            if start is not None:
                spans.append((start, i))
            else:
                log.debug("repairing I- tag without B- at token %d", i)
            start, label = i, ent_label
        else:
            if start is not None:
                spans.append((start, i))
            start, label = None, None
    if start is not None:
        spans.append((start, len(tokens)))
    return spans


def merge_named_entities(doc: AnnotatedDocument, filtered: TermDocument) -> TermDocument:
    """Replace filtered terms inside multi-token entity spans by one merged term.

    Spans come from the original token sequence, so a span is merged intact
    even if some of its tokens were filtered out. Spans none of whose tokens
    survived filtering are dropped (merging never increases the term count).
    """
    spans = [(s, e) for s, e in _entity_spans(doc.tokens) if e - s >= 2]
    if not spans:
        return filtered

    merged: list[TermOccurrence] = []
    occs = list(filtered.terms)
    consumed: set[int] = set()
    for start, end in spans:
        positions = [doc.tokens[i].position for i in range(start, end)]
        inside = [o for o in occs if o.position in positions]
        if not inside:
            continue
        consumed.update(o.position for o in inside)
        text = " ".join(doc.tokens[i].lemma for i in range(start, end))
        merged.append(
            TermOccurrence(Term(text, is_entity=True), positions[0], end=positions[-1] + 1)
        )

    survivors = [o for o in occs if o.position not in consumed]
    survivors.extend(merged)
    survivors.sort(key=lambda o: o.position)
    return TermDocument(doc_id=filtered.doc_id, terms=tuple(survivors))


def fallback_tokenize(raw_text: str) -> list[AnnotatedToken]:
    """Unicode-word tokenization for plain text corpora.

    Every token is tagged NOUN with its lowercased surface as lemma, so the
    POS filter keeps everything that is not a stopword.
    """
    tokens = []
    for i, match in enumerate(_WORD_RE.finditer(raw_text)):
        surface = match.group(0)
        tokens.append(
            AnnotatedToken(surface=surface, lemma=surface.casefold(), pos="NOUN", ner=None, position=i)
        )
    return tokens


def preprocess_document(doc: AnnotatedDocument, stopwords: frozenset[str]) -> TermDocument:
    """filter_tokens followed by merge_named_entities."""
    return merge_named_entities(doc, filter_tokens(doc, stopwords))
