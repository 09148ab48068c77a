"""Order-preserving task fan-out shared by search and verify."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def run_tasks(fn: Callable[[T], R], tasks: Iterable[T], workers: int) -> list[R]:
    """Apply ``fn`` to every task; results come back in task order."""
    tasks = list(tasks)
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


def prefix_bits(workers: int) -> int:
    """ceil(log2(workers)): how many binary choices to split on."""
    return max(0, (workers - 1).bit_length())
