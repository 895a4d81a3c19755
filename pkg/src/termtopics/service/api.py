"""HTTP API exposing the pipeline: corpora, jobs, models and views.

All read endpoints are pure functions of persisted state, so repeated
requests and service restarts return byte-identical bodies.
"""

from __future__ import annotations

import datetime
import logging
from pathlib import Path

from fastapi import FastAPI, File, Form, HTTPException, Request, UploadFile
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from ..corpus import ANNOTATED_JSONL, PLAIN_JSONL, load_corpus
from ..errors import TermTopicsError, UnknownIdError
from ..preprocess import load_stopwords
from ..rank import RankingParams
from ..topicstats import (
    HIGHLIGHT_MIN_PROPORTION,
    EmbeddingTable,
    document_highlights,
    topic_documents,
)
from ..analytics import theme_crosstab, topic_time_series
from .jobs import JobManager, JobStatus
from .pipeline import ModelRecord, build_model, ingest_corpus, model_id_for, topic_cloud_payload
from .storage import Store, check_corpus_id
from .exports import doc_topics_csv, topic_terms_csv

log = logging.getLogger(__name__)


class ModelRequest(BaseModel):
    gamma: float
    seed: int = 42


def create_app(
    data_dir: str | Path,
    embeddings_path: str | Path | None = None,
    stopwords_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
    tsne_iterations: int = 1000,
) -> FastAPI:
    store = Store(data_dir)
    jobs = JobManager()
    stopwords = load_stopwords(stopwords_path)
    embeddings = EmbeddingTable.load(embeddings_path) if embeddings_path else None
    uploads_dir = Path(data_dir) / "uploads"
    uploads_dir.mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="termtopics", version="0.1.0")
    app.state.store = store
    app.state.jobs = jobs

    @app.exception_handler(UnknownIdError)
    async def unknown_id(_request: Request, exc: UnknownIdError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(TermTopicsError)
    async def domain_error(_request: Request, exc: TermTopicsError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    # ------------------------------------------------------------ corpora

    @app.post("/corpora", status_code=202)
    async def add_corpus(
        file: UploadFile = File(...),
        corpus_id: str | None = Form(None),
        fmt: str = Form(ANNOTATED_JSONL),
        alpha: float = Form(0.9),
        beta: float = Form(-0.9),
        window: int = Form(11),
        thin_percent: float = Form(33.3),
    ):
        if fmt not in (ANNOTATED_JSONL, PLAIN_JSONL):
            raise HTTPException(422, f"unsupported format {fmt!r}")
        name = corpus_id or Path(file.filename or "corpus").stem
        try:
            name = check_corpus_id(name)
            params = RankingParams(alpha=alpha, beta=beta, window=window, thin_percent=thin_percent)
        except ValueError as exc:
            raise HTTPException(422, str(exc)) from exc
        try:
            store.reserve_corpus(name)
        except FileExistsError as exc:
            raise HTTPException(409, str(exc)) from exc

        upload_path = uploads_dir / f"{name}.jsonl"
        upload_path.write_bytes(await file.read())

        job = jobs.create("ingest", corpus_id=name)

        def work(j: JobStatus):
            try:
                j.stage = "load"
                corpus = load_corpus(upload_path, fmt=fmt, corpus_id=name, ingest_params=params)
                prepared = ingest_corpus(
                    corpus, params, stopwords, progress=lambda s: setattr(j, "stage", s)
                )
                j.stage = "persist"
                store.save_prepared(prepared)
            except Exception:
                store.release_corpus(name)
                raise

        jobs.run(job, work)
        return {"job_id": job.job_id, "corpus_id": name}

    @app.get("/corpora")
    def list_corpora():
        return {"corpora": store.list_corpora()}

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise HTTPException(404, f"unknown job {job_id!r}")
        return job.to_json()

    # ------------------------------------------------------------- models

    @app.post("/corpora/{corpus_id}/models", status_code=202)
    def request_model(corpus_id: str, request: ModelRequest):
        if not store.corpus_exists(corpus_id):
            raise HTTPException(404, f"unknown corpus {corpus_id!r}")
        if request.gamma <= 0:
            raise HTTPException(422, "gamma must be > 0")
        model_id = model_id_for(corpus_id, request.gamma, request.seed)
        if store.model_exists(model_id):
            job = jobs.create("model", corpus_id=corpus_id, model_id=model_id)
            job.stage = "cached"
            job.advance("done")
            return {"job_id": job.job_id, "model_id": model_id, "cached": True}

        job = jobs.create("model", corpus_id=corpus_id, model_id=model_id)

        def work(j: JobStatus):
            # one model build per corpus at a time
            with jobs.build_lock(corpus_id):
                if store.model_exists(model_id):
                    j.stage = "cached"
                    return
                prepared = store.load_prepared(corpus_id)
                record = build_model(
                    prepared,
                    gamma=request.gamma,
                    seed=request.seed,
                    embeddings=embeddings,
                    created_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
                    tsne_iterations=tsne_iterations,
                    progress=lambda s: setattr(j, "stage", s),
                )
                j.stage = "persist"
                store.save_model(record)

        jobs.run(job, work)
        return {"job_id": job.job_id, "model_id": model_id, "cached": False}

    @app.get("/models")
    def list_models():
        return {"models": store.list_models()}

    @app.get("/models/{model_id}")
    def model_meta(model_id: str):
        record = store.load_model(model_id)
        return {
            "model_id": record.model_id,
            "corpus_id": record.corpus_id,
            "gamma": record.gamma,
            "seed": record.seed,
            "created_at": record.created_at,
            "quality": record.partition.quality,
            "community_count": record.community_count,
            "converged": record.partition.converged,
        }

    @app.get("/models/{model_id}/map")
    def model_map(model_id: str):
        record = store.load_model(model_id)
        layout = record.layout
        return {
            "model_id": record.model_id,
            "community_count": record.community_count,
            "points": [
                {
                    "doc_id": p.doc_id,
                    "x": p.x,
                    "y": p.y,
                    "topic": p.dominant_topic,
                    "title": p.title,
                }
                for p in layout.points
            ],
            "kl_divergence": layout.kl_divergence,
        }

    @app.get("/models/{model_id}/topics")
    def model_topics(model_id: str):
        record = store.load_model(model_id)
        return {
            "model_id": record.model_id,
            "topics": [
                {
                    "topic_id": t.topic_id,
                    "size": t.size,
                    "label": t.label,
                    "top_terms": list(t.terms[:5]),
                }
                for t in record.topics
            ],
        }

    @app.get("/models/{model_id}/topics/{topic_id}")
    def topic_view(model_id: str, topic_id: int):
        record = store.load_model(model_id)
        if topic_id < 0 or topic_id >= record.community_count:
            raise HTTPException(404, f"unknown topic {topic_id}")
        topic = record.topics[topic_id]
        prepared = store.load_prepared(record.corpus_id)
        titles = {d.doc_id: d.title for d in prepared.corpus.documents}
        docs = topic_documents(topic_id, record.proportions)
        return {
            "model_id": record.model_id,
            "topic_id": topic_id,
            "size": topic.size,
            "label": topic.label,
            "strata_count": len(topic.strata),
            "terms": topic_cloud_payload(topic, record.ratings),
            "documents": [
                {"doc_id": doc_id, "title": titles.get(doc_id, doc_id), "proportion": p}
                for doc_id, p in docs
            ],
        }

    @app.get("/models/{model_id}/documents/{doc_id}")
    def document_view(model_id: str, doc_id: str):
        record = store.load_model(model_id)
        prepared = store.load_prepared(record.corpus_id)
        doc = prepared.corpus.get(doc_id)
        if doc is None:
            raise HTTPException(404, f"unknown document {doc_id!r}")
        proportions = record.proportions[doc_id]
        highlights = document_highlights(
            prepared.term_docs[doc_id],
            prepared.rankings[doc_id],
            record.partition,
            proportions,
        )
        qualifying = sorted(
            (
                {"topic_id": t, "proportion": p}
                for t, p in enumerate(proportions)
                if p >= HIGHLIGHT_MIN_PROPORTION
            ),
            key=lambda item: (-item["proportion"], item["topic_id"]),
        )
        return {
            "model_id": record.model_id,
            "doc_id": doc.doc_id,
            "title": doc.title,
            "date": doc.date.isoformat() if doc.date else None,
            "tags": list(doc.tags),
            "raw_text": doc.raw_text,
            "tokens": [{"surface": t.surface, "position": t.position} for t in doc.tokens],
            "highlights": [
                {"start": h.start, "end": h.end, "topic": h.topic_id} for h in highlights
            ],
            "topics": qualifying,
            "proportions": proportions,
        }

    @app.get("/models/{model_id}/timeseries")
    def timeseries_view(model_id: str, topics: str = ""):
        record = store.load_model(model_id)
        prepared = store.load_prepared(record.corpus_id)
        if topics.strip():
            try:
                topic_ids = [int(part) for part in topics.split(",") if part.strip()]
            except ValueError as exc:
                raise HTTPException(422, f"bad topics parameter {topics!r}") from exc
        else:
            topic_ids = list(range(record.community_count))
        dates = {d.doc_id: d.date for d in prepared.corpus.documents}
        series = topic_time_series(topic_ids, record.proportions, dates)
        return {
            "model_id": record.model_id,
            "series": [
                {"topic_id": s.topic_id, "points": [[m, v] for m, v in s.points]}
                for s in series
            ],
        }

    @app.get("/models/{model_id}/themes")
    def themes_view(model_id: str):
        record = store.load_model(model_id)
        prepared = store.load_prepared(record.corpus_id)
        tags = {d.doc_id: d.tags for d in prepared.corpus.documents}
        table = theme_crosstab(record.proportions, tags)
        return {
            "model_id": record.model_id,
            "tags": list(table.tags),
            "topic_count": table.topic_count,
            "matrix": [list(row) for row in table.matrix],
            "doc_counts": list(table.doc_counts),
        }

    @app.get("/models/{model_id}/export/{kind}")
    def export_view(model_id: str, kind: str):
        record = store.load_model(model_id)
        if kind == "topic_terms":
            body = topic_terms_csv(record)
        elif kind == "doc_topics":
            body = doc_topics_csv(record)
        else:
            raise HTTPException(404, f"unknown export {kind!r}")
        return Response(
            content=body.encode("utf-8"),
            media_type="text/csv; charset=utf-8",
            headers={"Content-Disposition": f'attachment; filename="{kind}.csv"'},
        )

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
