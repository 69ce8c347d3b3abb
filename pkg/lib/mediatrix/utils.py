import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import *

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger("mediatrix")


def setup_logging(level: Union[int, str] = logging.INFO):
    # stdout carries tables and certificates, so logs go to stderr
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s:%(name)s: %(message)s"))
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def show_progress(enabled: bool = True) -> bool:
    return enabled and sys.stderr.isatty()


def first_hit(
    fn: Callable[[T], R],
    branches: Sequence[T],
    workers: int = 1,
    accept: Callable[[R], bool] = lambda result: result is not None,
    seen: Optional[Callable[[T, R], None]] = None,
) -> Optional[Tuple[T, R]]:
    """
    Returns (branch, result) for the first branch, in the given order, whose
    result is accepted. With several workers every branch runs in a process
    pool, but the answer is still picked in branch order so it does not depend
    on the schedule. `seen` observes each result up to and including the hit.
    """
    if workers <= 1 or len(branches) <= 1:
        for branch in branches:
            result = fn(branch)
            if seen is not None:
                seen(branch, result)
            if accept(result):
                return branch, result
        return None

    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(fn, branch) for branch in branches]
        for branch, future in zip(branches, futures):
            result = future.result()
            if seen is not None:
                seen(branch, result)
            if accept(result):
                for rest in futures:
                    rest.cancel()
                return branch, result
    return None
