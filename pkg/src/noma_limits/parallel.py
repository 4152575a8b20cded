"""Thread fan-out control.

NOMA_LIMITS_THREADS caps worker threads for embarrassingly parallel
sweeps: unset, empty, or 0 means one worker per CPU; 1 forces serial
execution.  Results are always reduced in input order, so the thread
count never changes any output bit.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import DomainError

_T = TypeVar("_T")
_R = TypeVar("_R")

ENV_VAR = "NOMA_LIMITS_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if n < 0:
        raise DomainError(f"{ENV_VAR} must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


def thread_map(fn: Callable[[_T], _R], items: Iterable[_T]) -> list[_R]:
    """Map preserving order; runs serially unless more than one worker
    is allowed and there is more than one item."""
    seq: Sequence[_T] = list(items)
    workers = min(thread_count(), len(seq))
    if workers <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
