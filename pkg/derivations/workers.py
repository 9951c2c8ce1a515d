"""
Ordered fan-out of independent sub-computations
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, TypeVar

from derivations.config import Config

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


@lru_cache(maxsize=None)
def default_max_workers() -> int:
    """DERIVATIONS_MAX_WORKERS, read from the environment once per process"""
    return Config.from_env().max_workers


def ordered_map(fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """
    Apply fn to every item and return the results in input order.

    Runs inline when only one worker is allowed or there is at most one
    item; otherwise uses a thread pool capped by DERIVATIONS_MAX_WORKERS.
    Exceptions propagate from the first failing item in input order.
    """
    items = list(items)
    workers = max_workers if max_workers is not None else default_max_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    workers = min(workers, len(items))
    logger.debug(f"Fanning out {len(items)} tasks over {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
