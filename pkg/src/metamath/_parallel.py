"""Order-preserving parallel map; results never depend on the worker count."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, items, jobs: int = 1) -> list:
    items = list(items)
    if jobs <= 1 or len(items) < jobs:
        return [fn(x) for x in items]
    chunksize = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # Executor.map yields in submission order, whatever finishes first
        return list(pool.map(fn, items, chunksize=chunksize))
