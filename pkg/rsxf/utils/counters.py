"""Operation counters for the transforms, scoped with ``count_ops``."""

from __future__ import annotations

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, asdict
from typing import Dict, Iterator, Optional


logger = logging.getLogger("rsxf.counters")


@dataclass
class OpCounts:
    """Field operations and transform calls seen inside a ``count_ops`` block."""

    additions: int = 0
    multiplications: int = 0
    forward_calls: int = 0
    inverse_calls: int = 0

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


_ACTIVE: ContextVar[Optional[OpCounts]] = ContextVar("rsxf_op_counts", default=None)


@contextmanager
def count_ops() -> Iterator[OpCounts]:
    """Collect transform operation counts for the current context."""
    counts = OpCounts()
    token = _ACTIVE.set(counts)
    try:
        yield counts
    finally:
        _ACTIVE.reset(token)
        logger.debug("op counts: %s", counts)


def counting() -> bool:
    return _ACTIVE.get() is not None


def record_ops(additions: int = 0, multiplications: int = 0) -> None:
    counts = _ACTIVE.get()
    if counts is None:
        return
    counts.additions += additions
    counts.multiplications += multiplications


def record_calls(forward: int = 0, inverse: int = 0) -> None:
    counts = _ACTIVE.get()
    if counts is None:
        return
    counts.forward_calls += forward
    counts.inverse_calls += inverse
