"""CSV exports for the Download tab (RFC 4180, UTF-8)."""

from __future__ import annotations

import csv
import io

from .pipeline import ModelRecord


def topic_terms_csv(record: ModelRecord) -> str:
    """topic_id, term, rating, rank, stratum for every displayed topic term."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["topic_id", "term", "rating", "rank", "stratum"])
    for topic in record.topics:
        stratum_of = {}
        for s_index, stratum in enumerate(topic.strata):
            for term in stratum.terms:
                stratum_of[term] = s_index
        for rank, term in enumerate(topic.terms, start=1):
            writer.writerow([topic.topic_id, term, repr(record.ratings[term][2]), rank, stratum_of[term]])
    return out.getvalue()


def doc_topics_csv(record: ModelRecord) -> str:
    """doc_id plus one proportion column per topic, one row per document."""
    out = io.StringIO()
    writer = csv.writer(out)
    topic_count = record.partition.community_count
    writer.writerow(["doc_id"] + [f"topic_{t}" for t in range(topic_count)])
    for doc_id, vector in record.proportions.items():
        writer.writerow([doc_id] + [repr(v) for v in vector])
    return out.getvalue()
