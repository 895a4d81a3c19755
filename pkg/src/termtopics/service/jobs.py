"""Asynchronous jobs for the long operations (ingest, model build).

Job states only move forward: queued -> running -> done | failed. Model
builds are mutually exclusive per corpus; ingests of distinct corpora may
run concurrently.
"""

from __future__ import annotations

import logging
import threading
import uuid
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

_ORDER = {"queued": 0, "running": 1, "done": 2, "failed": 2}


@dataclass
class JobStatus:
    job_id: str
    kind: str  # "ingest" | "model"
    state: str = "queued"
    stage: str = ""
    error: str | None = None
    result: dict = field(default_factory=dict)

    def advance(self, state: str) -> None:
        if _ORDER[state] < _ORDER[self.state]:
            raise ValueError(f"job state cannot move from {self.state} to {state}")
        self.state = state

    def to_json(self) -> dict:
        payload = {
            "job_id": self.job_id,
            "kind": self.kind,
            "state": self.state,
            "stage": self.stage,
            "error": self.error,
        }
        payload.update(self.result)
        return payload


class JobManager:
    def __init__(self):
        self._jobs: dict[str, JobStatus] = {}
        self._lock = threading.Lock()
        self._corpus_build_locks: dict[str, threading.Lock] = {}

    def create(self, kind: str, **result) -> JobStatus:
        job = JobStatus(job_id=uuid.uuid4().hex, kind=kind, result=dict(result))
        with self._lock:
            self._jobs[job.job_id] = job
        return job

    def get(self, job_id: str) -> JobStatus | None:
        with self._lock:
            return self._jobs.get(job_id)

    def build_lock(self, corpus_id: str) -> threading.Lock:
        with self._lock:
            return self._corpus_build_locks.setdefault(corpus_id, threading.Lock())

    def run(self, job: JobStatus, target, *args) -> None:
        """Execute `target(job, *args)` on a daemon thread."""

        def wrapper():
            job.advance("running")
            try:
                target(job, *args)
                job.advance("done")
            except Exception as exc:  # failures land in the job record
                log.exception("job %s failed", job.job_id)
                job.error = str(exc)
                job.advance("failed")

        threading.Thread(target=wrapper, name=f"job-{job.job_id[:8]}", daemon=True).start()
