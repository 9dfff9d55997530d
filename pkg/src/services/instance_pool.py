"""
Worker pool for per-instance stages
"""

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Sequence, TypeVar

import structlog

T = TypeVar('T')
R = TypeVar('R')


class PoolStatus(Enum):
    """Pool status enumeration"""
    IDLE = "idle"
    RUNNING = "running"
    ERROR = "error"


@dataclass
class PoolStats:
    """Pool statistics"""
    status: PoolStatus
    workers: int
    tasks_submitted: int
    tasks_completed: int
    total_errors: int
    busy_seconds: float


class InstancePool:
    """Maps a function over instances; results come back in input order."""

    def __init__(self, workers: int = 1):
        self.logger = structlog.get_logger()
        self.workers = max(1, workers)
        self._status = PoolStatus.IDLE
        self._lock = threading.RLock()
        self._submitted = 0
        self._completed = 0
        self._errors = 0
        self._busy = 0.0

    def map(self, function: Callable[[T], R], items: Sequence[T]) -> List[R]:
        items = list(items)
        with self._lock:
            self._status = PoolStatus.RUNNING
            self._submitted += len(items)
        started = time.perf_counter()
        try:
            if self.workers == 1 or len(items) <= 1:
                results = [function(item) for item in items]
            else:
                with ThreadPoolExecutor(max_workers=self.workers) as executor:
                    results = list(executor.map(function, items))
        except Exception as e:
            with self._lock:
                self._status = PoolStatus.ERROR
                self._errors += 1
            self.logger.error("Pool task failed", error=str(e), workers=self.workers)
            raise
        with self._lock:
            self._completed += len(items)
            self._busy += time.perf_counter() - started
            self._status = PoolStatus.IDLE
        return results

    def get_status(self) -> PoolStatus:
        with self._lock:
            return self._status

    def get_stats(self) -> PoolStats:
        with self._lock:
            return PoolStats(
                status=self._status,
                workers=self.workers,
                tasks_submitted=self._submitted,
                tasks_completed=self._completed,
                total_errors=self._errors,
                busy_seconds=self._busy,
            )
