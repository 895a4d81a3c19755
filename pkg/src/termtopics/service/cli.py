"""Command line interface: ingest, model, export, serve."""

from __future__ import annotations

import datetime
import logging
import os
from pathlib import Path

import click

from ..corpus import ANNOTATED_JSONL, PLAIN_JSONL, load_corpus
from ..preprocess import load_stopwords
from ..rank import RankingParams
from ..topicstats import EmbeddingTable
from .exports import doc_topics_csv, topic_terms_csv
from .pipeline import build_model, ingest_corpus, model_id_for
from .storage import Store, check_corpus_id

DATA_DIR_ENV = "TERMTOPICS_DATA_DIR"


def _default_data_dir() -> str:
    return os.environ.get(DATA_DIR_ENV, "./termtopics-data")


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool):
    """Detect topics in text corpora as communities of co-occurring terms."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.argument("corpus_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus-id", default=None, help="Identifier (defaults to the file stem).")
@click.option("--format", "fmt", type=click.Choice([ANNOTATED_JSONL, PLAIN_JSONL]), default=ANNOTATED_JSONL)
@click.option("--alpha", default=0.9, show_default=True, help="Co-occurrence walk weight.")
@click.option("--beta", default=-0.9, show_default=True, help="Position decay exponent.")
@click.option("--window", default=11, show_default=True, help="Co-occurrence window size (odd).")
@click.option("--thin-percent", default=33.3, show_default=True, help="Top percentage of terms kept per document.")
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False), default=None, help="Stopword file (one word per line).")
@click.option("--data-dir", default=_default_data_dir, help=f"Data directory (or ${DATA_DIR_ENV}).")
def ingest(corpus_file, corpus_id, fmt, alpha, beta, window, thin_percent, stopwords, data_dir):
    """Load a corpus, rank and thin its terms, build the term network."""
    params = RankingParams(alpha=alpha, beta=beta, window=window, thin_percent=thin_percent)
    name = check_corpus_id(corpus_id or Path(corpus_file).stem)
    store = Store(data_dir)
    store.reserve_corpus(name)
    try:
        corpus = load_corpus(corpus_file, fmt=fmt, corpus_id=name, ingest_params=params)
        prepared = ingest_corpus(corpus, params, load_stopwords(stopwords))
        store.save_prepared(prepared)
    except Exception:
        store.release_corpus(name)
        raise
    click.echo(
        f"ingested {name}: {len(prepared.corpus)} documents, "
        f"{prepared.network.vertex_count} terms, {prepared.network.edge_count} edges"
    )


@main.command()
@click.argument("corpus_id")
@click.option("--gamma", default=1.0, show_default=True, help="Resolution parameter (> 0).")
@click.option("--seed", default=42, show_default=True)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False), default=None, help="Word embedding file for topic strata.")
@click.option("--tsne-iterations", default=1000, show_default=True)
@click.option("--data-dir", default=_default_data_dir)
def model(corpus_id, gamma, seed, embeddings, tsne_iterations, data_dir):
    """Build (or reuse) a topic model at the given resolution."""
    if gamma <= 0:
        raise click.BadParameter("gamma must be > 0")
    store = Store(data_dir)
    model_id = model_id_for(corpus_id, gamma, seed)
    if store.model_exists(model_id):
        click.echo(f"model {model_id} already cached")
        return
    prepared = store.load_prepared(corpus_id)
    emb = EmbeddingTable.load(embeddings) if embeddings else None
    record = build_model(
        prepared,
        gamma=gamma,
        seed=seed,
        embeddings=emb,
        created_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        tsne_iterations=tsne_iterations,
    )
    store.save_model(record)
    click.echo(
        f"built {model_id}: {record.community_count} topics, "
        f"H={record.partition.quality:.4f}, converged={record.partition.converged}"
    )


@main.command()
@click.argument("model_id")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--data-dir", default=_default_data_dir)
def export(model_id, out_dir, data_dir):
    """Write topic_terms.csv and doc_topics.csv for a model."""
    store = Store(data_dir)
    record = store.load_model(model_id)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "topic_terms.csv").write_text(topic_terms_csv(record), encoding="utf-8")
    (out / "doc_topics.csv").write_text(doc_topics_csv(record), encoding="utf-8")
    click.echo(f"wrote {out / 'topic_terms.csv'} and {out / 'doc_topics.csv'}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default=_default_data_dir)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--ui-dir", type=click.Path(file_okay=False, exists=True), default=None, help="Directory with the built web UI.")
def serve(port, host, data_dir, embeddings, stopwords, ui_dir):
    """Run the HTTP API (and optionally the web UI)."""
    import uvicorn

    from .api import create_app

    app = create_app(
        data_dir,
        embeddings_path=embeddings,
        stopwords_path=stopwords,
        ui_dir=ui_dir,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
