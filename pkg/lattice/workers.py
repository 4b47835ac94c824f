"""
Partitioned execution for the enumeration loops.

Work is split into contiguous index ranges of the outer loop. Results come back
in range order and are merged in that order, so totals never depend on the
number of workers.
"""

import multiprocessing
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from loguru import logger

from config.settings import settings

R = TypeVar("R")


def partition(total: int, jobs: int, chunks_per_worker: Optional[int] = None) -> List[Tuple[int, int]]:
    """Split range(total) into contiguous [start, stop) chunks"""
    if total <= 0:
        return []
    per_worker = chunks_per_worker or settings.CHUNKS_PER_WORKER
    pieces = max(1, min(total, max(1, jobs) * per_worker))
    step, extra = divmod(total, pieces)
    bounds = []
    start = 0
    for i in range(pieces):
        stop = start + step + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def make_executor(jobs: int) -> Executor:
    """
    Process pool with the 'fork' start method; falls back to threads where
    fork is unavailable.
    """
    try:
        ctx = multiprocessing.get_context("fork")
        return ProcessPoolExecutor(max_workers=jobs, mp_context=ctx)
    except (ValueError, OSError) as e:
        logger.warning(f"Could not start a fork process pool ({e}); falling back to threads")
        return ThreadPoolExecutor(max_workers=jobs)


def run_partitioned(
    worker: Callable[[Tuple], R],
    tasks: Sequence[Tuple],
    jobs: int = 1,
) -> List[R]:
    """
    Run worker over tasks and return the results in task order.

    worker must be a module-level function so it can be shipped to a process.
    """
    jobs = max(1, int(jobs))
    if jobs == 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]

    logger.debug(f"Dispatching {len(tasks)} chunks to {jobs} workers")
    with make_executor(jobs) as executor:
        return list(executor.map(worker, tasks))
