"""Order-preserving process-pool map."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def run_chunks(fn, jobs, workers: int = 1) -> list:
    """``[fn(j) for j in jobs]``, possibly in worker processes; output order
    always follows ``jobs``."""
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(fn, jobs))
