"""Run configuration shared by the library and the command-line harness."""
from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace

CACHE_ENV = "CANNONBALL_CACHE"
DEFAULT_MEMORY_BUDGET = 2 * 1024**3


class ResourceError(MemoryError):
    """A computation would exceed the configured memory budget."""


@dataclass(frozen=True)
class RunConfig:
    cache_path: str | None = None
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET
    worker_count: int = 1
    output_format: str = "csv"
    precision_bits: int = 96

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count}")
        if not 16 <= self.precision_bits <= 256:
            raise ValueError(f"precision_bits must lie in [16, 256], got {self.precision_bits}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output_format must be csv or json, got {self.output_format!r}")
        if self.memory_budget_bytes <= 0:
            raise ValueError("memory_budget_bytes must be positive")

    def with_(self, **changes) -> "RunConfig":
        return replace(self, **changes)


def resolve_cache_path(flag: str | None) -> str | None:
    """CLI flag wins over the environment variable."""
    if flag:
        return flag
    return os.environ.get(CACHE_ENV) or None


_current: contextvars.ContextVar[RunConfig] = contextvars.ContextVar(
    "cannonball_config", default=RunConfig()
)


def current() -> RunConfig:
    return _current.get()


@contextlib.contextmanager
def using(config: RunConfig):
    token = _current.set(config)
    try:
        yield config
    finally:
        _current.reset(token)


def check_budget(nbytes: int, what: str) -> None:
    budget = current().memory_budget_bytes
    if nbytes > budget:
        raise ResourceError(
            f"{what} needs about {nbytes} bytes, over the memory budget of {budget} bytes"
        )
