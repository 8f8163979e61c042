"""
Worker pool - fans independent tasks out over processes and collects
their results by task index, whatever order they finish in.
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_indexed(fn: Callable[[T], R], tasks: Sequence[T], workers: int = 1) -> list[R]:
    """
    Run ``fn`` on every task.

    Args:
        fn: Module-level (picklable) function of one task
        tasks: Task arguments
        workers: Worker processes; 1 runs everything in this process

    Returns:
        Results in task order
    """
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")

    if workers == 1 or len(tasks) < 2:
        return [fn(task) for task in tasks]

    results: dict[int, R] = {}
    pool_size = min(workers, len(tasks))
    logger.info(f"Starting {pool_size} worker processes for {len(tasks)} tasks")

    with ProcessPoolExecutor(max_workers=pool_size) as pool:
        futures = {pool.submit(fn, task): index for index, task in enumerate(tasks)}
        for future in as_completed(futures):
            index = futures[future]
            try:
                results[index] = future.result()
            except Exception as e:
                logger.error(f"Task {index} failed: {e}")
                raise
            logger.debug(f"Task {index} finished ({len(results)}/{len(tasks)})")

    return [results[i] for i in range(len(tasks))]
