"""
Logging utilities for hypergraph packing

Records go to stderr so stdout stays clean for hypergraphs, reports and
verdicts. Run parameters and the current pipeline stage are carried through
structlog context variables and merged into every record.
"""

import logging
import sys
from contextlib import contextmanager
from typing import Any, Iterator, Optional

import numpy as np
import structlog

RUN_FIELDS = ("n", "k", "ell", "mode", "seed")


def _plain_numbers(logger: Any, method_name: str, event_dict: dict) -> dict:
    """numpy scalars and arrays become plain Python values."""
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist()
    return event_dict


def setup_logging(level: str = "INFO", format_type: str = "json") -> None:
    """
    Setup structured logging for the application

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format_type: Output format (json, console)
    """
    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        _plain_numbers,
        structlog.processors.CallsiteParameterAdder(
            parameters=[
                structlog.processors.CallsiteParameter.FILENAME,
                structlog.processors.CallsiteParameter.LINENO,
                structlog.processors.CallsiteParameter.FUNC_NAME,
            ]
        ),
    ]

    if format_type == "json":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer())

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(message)s',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def bind_run_context(**fields: Any) -> None:
    """Attach run parameters (see RUN_FIELDS) to every later record."""
    unknown = set(fields) - set(RUN_FIELDS)
    if unknown:
        raise ValueError(f"Unknown run context fields: {sorted(unknown)}")
    structlog.contextvars.bind_contextvars(**fields)


def clear_run_context() -> None:
    structlog.contextvars.clear_contextvars()


@contextmanager
def stage_context(stage: str) -> Iterator[None]:
    """Tag records emitted inside the block with the pipeline stage."""
    with structlog.contextvars.bound_contextvars(stage=stage):
        yield


def get_logger(name: Optional[str] = None) -> structlog.BoundLogger:
    """
    Get a structured logger instance

    Args:
        name: Logger name. If None, uses the calling module name.
    """
    return structlog.get_logger(name)
