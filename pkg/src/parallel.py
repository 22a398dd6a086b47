"""
Thread pool helper shared by the batch operations.

Work items are independent; results come back in input order so that
reductions over them never depend on the thread count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .config import config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """
    Apply fn to every item on a thread pool.

    Args:
        fn: Pure function of one item
        items: Work items
        max_workers: Pool size (defaults to WNC_THREADS)

    Returns:
        List[R]: Results in input order
    """
    work = list(items)
    workers = max_workers or config.performance.threads
    if workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    logger.debug(f"Mapping {len(work)} items over {workers} threads")
    with ThreadPoolExecutor(max_workers=min(workers, len(work))) as executor:
        return list(executor.map(fn, work))


__all__ = ["parallel_map"]
