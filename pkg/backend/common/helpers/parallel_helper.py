# Built-in imports
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

# Own imports
from common.logger import custom_logger

logger = custom_logger()

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """
    Applies fn to every item, fanning out over `jobs` threads.
    :param fn (Callable): pure function of one item.
    :param items (Iterable): work items.
    :param jobs (int): worker threads; 1 runs inline.
    :return (list): results in input order, whatever the scheduling was.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug(f"ordered_map fan-out of {len(items)} items over {jobs} threads")
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(fn, items))
