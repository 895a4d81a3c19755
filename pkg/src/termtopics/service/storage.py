"""File-backed persistence for corpora and models.

Layout under the data directory:

    corpora/<corpus_id>/corpus.jsonl      normalized annotated corpus
    corpora/<corpus_id>/stopwords.txt     stopword snapshot used at ingest
    corpora/<corpus_id>/rankings.json     per-document term ranking results
    corpora/<corpus_id>/meta.json         params and counts
    corpora/<corpus_id>/network_*.tsv     optional inspection dumps
    models/<model_id>/partition.tsv       community export
    models/<model_id>/derived.json        ratings, strata, proportions, layout
    models/<model_id>/meta.json           identity and quality

Everything round-trips exactly (floats via repr) so a restarted service
serves byte-identical responses.
"""

from __future__ import annotations

import json
import logging
import re
import threading
from dataclasses import asdict
from pathlib import Path

from ..analytics import DocumentMap, MapPoint
from ..community import Partition, write_partition
from ..corpus import Corpus, load_corpus, save_corpus
from ..errors import UnknownIdError
from ..graph import write_edge_list, write_vertex_list
from ..preprocess import load_stopwords
from ..rank import DocumentTermRanking, RankingParams, TermRank
from ..topicstats import Stratum
from .pipeline import ModelRecord, PreparedCorpus, TopicView, ingest_corpus

log = logging.getLogger(__name__)

_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


def check_corpus_id(corpus_id: str) -> str:
    if not _ID_RE.match(corpus_id):
        raise ValueError(
            f"corpus_id {corpus_id!r} must match [A-Za-z0-9][A-Za-z0-9_.-]*"
        )
    return corpus_id


def _dump_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")


def _load_json(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


class Store:
    """Thread-safe registry of prepared corpora and built models."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        (self.data_dir / "corpora").mkdir(parents=True, exist_ok=True)
        (self.data_dir / "models").mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._corpora: dict[str, PreparedCorpus] = {}
        self._models: dict[str, ModelRecord] = {}
        self._reserved: set[str] = set()

    # ------------------------------------------------------------ corpora

    def corpus_dir(self, corpus_id: str) -> Path:
        return self.data_dir / "corpora" / corpus_id

    def corpus_exists(self, corpus_id: str) -> bool:
        with self._lock:
            if corpus_id in self._corpora or corpus_id in self._reserved:
                return True
        return (self.corpus_dir(corpus_id) / "meta.json").exists()

    def reserve_corpus(self, corpus_id: str) -> None:
        """Claim an id before its ingest job runs; conflicts are rejected."""
        with self._lock:
            if corpus_id in self._reserved or corpus_id in self._corpora:
                raise FileExistsError(f"corpus {corpus_id!r} already exists")
            if (self.corpus_dir(corpus_id) / "meta.json").exists():
                raise FileExistsError(f"corpus {corpus_id!r} already exists")
            self._reserved.add(corpus_id)

    def release_corpus(self, corpus_id: str) -> None:
        with self._lock:
            self._reserved.discard(corpus_id)

    def save_prepared(self, prepared: PreparedCorpus) -> None:
        cdir = self.corpus_dir(prepared.corpus_id)
        cdir.mkdir(parents=True, exist_ok=True)
        save_corpus(prepared.corpus, cdir / "corpus.jsonl")
        (cdir / "stopwords.txt").write_text(
            "\n".join(sorted(prepared.stopwords)) + "\n", encoding="utf-8"
        )
        _dump_json(
            cdir / "rankings.json",
            {
                doc_id: [
                    [e.term, e.pos, e.score, e.order, e.retained] for e in ranking.entries
                ]
                for doc_id, ranking in prepared.rankings.items()
            },
        )
        write_edge_list(prepared.network, cdir / "network_edges.tsv")
        write_vertex_list(prepared.network, cdir / "network_vertices.tsv")
        _dump_json(
            cdir / "meta.json",
            {
                "corpus_id": prepared.corpus_id,
                "doc_count": len(prepared.corpus),
                "params": asdict(prepared.params),
                "vertices": prepared.network.vertex_count,
                "edges": prepared.network.edge_count,
            },
        )
        with self._lock:
            self._corpora[prepared.corpus_id] = prepared
            self._reserved.discard(prepared.corpus_id)

    def load_prepared(self, corpus_id: str) -> PreparedCorpus:
        with self._lock:
            if corpus_id in self._corpora:
                return self._corpora[corpus_id]
        cdir = self.corpus_dir(corpus_id)
        meta_path = cdir / "meta.json"
        if not meta_path.exists():
            raise UnknownIdError(f"unknown corpus {corpus_id!r}")
        meta = _load_json(meta_path)
        params = RankingParams(**meta["params"])
        corpus = load_corpus(cdir / "corpus.jsonl", corpus_id=corpus_id, ingest_params=params)
        stopwords = load_stopwords(cdir / "stopwords.txt")
        raw = _load_json(cdir / "rankings.json")
        rankings = {
            doc_id: DocumentTermRanking(
                doc_id=doc_id,
                entries=tuple(
                    TermRank(term=t, pos=p, score=s, order=o, retained=r)
                    for t, p, s, o, r in rows
                ),
            )
            for doc_id, rows in raw.items()
        }
        prepared = ingest_corpus(corpus, params, stopwords, rankings=rankings)
        with self._lock:
            self._corpora[corpus_id] = prepared
        return prepared

    def list_corpora(self) -> list[dict]:
        entries = []
        for meta_path in sorted((self.data_dir / "corpora").glob("*/meta.json")):
            entries.append(_load_json(meta_path))
        return entries

    # ------------------------------------------------------------- models

    def model_dir(self, model_id: str) -> Path:
        return self.data_dir / "models" / model_id

    def model_exists(self, model_id: str) -> bool:
        with self._lock:
            if model_id in self._models:
                return True
        return (self.model_dir(model_id) / "meta.json").exists()

    def save_model(self, record: ModelRecord) -> None:
        mdir = self.model_dir(record.model_id)
        mdir.mkdir(parents=True, exist_ok=True)
        write_partition(record.partition, mdir / "partition.tsv")
        _dump_json(
            mdir / "meta.json",
            {
                "model_id": record.model_id,
                "corpus_id": record.corpus_id,
                "gamma": record.gamma,
                "seed": record.seed,
                "created_at": record.created_at,
                "quality": record.partition.quality,
                "community_count": record.community_count,
                "converged": record.partition.converged,
            },
        )
        layout = record.layout
        _dump_json(
            mdir / "derived.json",
            {
                "ratings": {t: list(v) for t, v in record.ratings.items()},
                "topics": [
                    {
                        "topic_id": t.topic_id,
                        "size": t.size,
                        "label": t.label,
                        "terms": list(t.terms),
                        "strata": [
                            {"terms": list(s.terms), "embedded": s.embedded} for s in t.strata
                        ],
                    }
                    for t in record.topics
                ],
                "proportions": record.proportions,
                "layout": {
                    "points": [
                        [p.doc_id, p.x, p.y, p.dominant_topic, p.title] for p in layout.points
                    ],
                    "kl_divergence": layout.kl_divergence,
                    "kl_after_exaggeration": layout.kl_after_exaggeration,
                },
            },
        )
        with self._lock:
            self._models[record.model_id] = record

    def load_model(self, model_id: str) -> ModelRecord:
        with self._lock:
            if model_id in self._models:
                return self._models[model_id]
        mdir = self.model_dir(model_id)
        meta_path = mdir / "meta.json"
        if not meta_path.exists():
            raise UnknownIdError(f"unknown model {model_id!r}")
        meta = _load_json(meta_path)
        derived = _load_json(mdir / "derived.json")

        membership, _ = _read_partition_file(mdir / "partition.tsv")
        count = max(membership.values()) + 1 if membership else 0
        groups: list[list[str]] = [[] for _ in range(count)]
        for term in membership:
            groups[membership[term]].append(term)
        # communities are stored sorted within each group, so sorting here
        # reproduces the original tuples exactly
        communities = [tuple(sorted(groups[topic_id])) for topic_id in range(count)]
        partition = Partition(
            membership=membership,
            communities=tuple(communities),
            gamma=meta["gamma"],
            seed=meta["seed"],
            quality=meta["quality"],
            converged=meta["converged"],
        )
        topics = [
            TopicView(
                topic_id=t["topic_id"],
                size=t["size"],
                label=t["label"],
                terms=tuple(t["terms"]),
                strata=tuple(
                    Stratum(terms=tuple(s["terms"]), embedded=s["embedded"]) for s in t["strata"]
                ),
            )
            for t in derived["topics"]
        ]
        layout = DocumentMap(
            points=tuple(
                MapPoint(doc_id=d, x=x, y=y, dominant_topic=topic, title=title)
                for d, x, y, topic, title in derived["layout"]["points"]
            ),
            kl_divergence=derived["layout"]["kl_divergence"],
            kl_after_exaggeration=derived["layout"]["kl_after_exaggeration"],
        )
        record = ModelRecord(
            model_id=model_id,
            corpus_id=meta["corpus_id"],
            gamma=meta["gamma"],
            seed=meta["seed"],
            created_at=meta["created_at"],
            partition=partition,
            ratings={t: tuple(v) for t, v in derived["ratings"].items()},
            topics=topics,
            proportions=derived["proportions"],
            layout=layout,
        )
        with self._lock:
            self._models[model_id] = record
        return record

    def list_models(self) -> list[dict]:
        entries = []
        for meta_path in sorted((self.data_dir / "models").glob("*/meta.json")):
            entries.append(_load_json(meta_path))
        return entries


def _read_partition_file(path: Path) -> tuple[dict[str, int], dict[str, str]]:
    from ..community import read_partition

    return read_partition(path)
