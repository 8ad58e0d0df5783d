"""
Execution helpers for very deep terms.

Church-numeral towers produce application spines tens of thousands of
nodes deep. The recursive term operations handle them on a worker thread
whose stack and recursion limit are raised for the duration of the call.
"""

import logging
import sys
import threading
from typing import Any, Callable, Dict, Optional

from .config import get_settings

logger = logging.getLogger(__name__)

_limit_lock = threading.Lock()
_state = threading.local()


def run_with_deep_stack(
    func: Callable[..., Any],
    *args: Any,
    recursion_limit: Optional[int] = None,
    stack_size_mb: Optional[int] = None,
    **kwargs: Any,
) -> Any:
    """
    Run ``func(*args, **kwargs)`` on a thread with a large stack.

    Args:
        func: Callable to run
        recursion_limit: Interpreter recursion limit while running
        stack_size_mb: Worker thread stack size in MiB

    Returns:
        Whatever ``func`` returns; exceptions are re-raised in the caller.
    """
    if getattr(_state, "deep", False):
        return func(*args, **kwargs)

    limits = get_settings().limits
    recursion_limit = recursion_limit or limits.recursion_limit
    stack_size = (stack_size_mb or limits.stack_size_mb) * 1024 * 1024
    outcome: Dict[str, Any] = {}

    def target() -> None:
        _state.deep = True
        try:
            outcome["value"] = func(*args, **kwargs)
        except BaseException as exc:  # re-raised on the calling thread
            outcome["error"] = exc

    with _limit_lock:
        previous_limit = sys.getrecursionlimit()
        previous_stack = threading.stack_size()
        sys.setrecursionlimit(max(previous_limit, recursion_limit))
        threading.stack_size(stack_size)
        try:
            worker = threading.Thread(target=target, name="crjoin-deep")
            worker.start()
        finally:
            threading.stack_size(previous_stack)
        worker.join()
        sys.setrecursionlimit(previous_limit)

    if "error" in outcome:
        raise outcome["error"]
    return outcome.get("value")


def allow_long_integer_text() -> None:
    """Lift the interpreter's int/str conversion digit limit where it exists.

    Exact bounds below the bit cap can run to hundreds of thousands of
    decimal digits.
    """
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
