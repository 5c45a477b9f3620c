"""Object naming rules, shared by validation and execution.

The validator simulates execution to predict resulting names, so both
sides must agree exactly; keeping the rules here prevents drift.
"""

from __future__ import annotations

from typing import Container, Tuple


def auto_object_name(taken: Container[str], counter: int) -> Tuple[str, int]:
    """Next free ``obj<n>`` id and the counter to carry forward.

    Skips names already taken, so a user object called ``obj7`` can
    never collide with a later auto-named one.
    """
    n = counter
    while f"obj{n}" in taken:
        n += 1
    return f"obj{n}", n + 1


def boolean_result_name(kind: str, a: str, b: str, taken: Container[str]) -> str:
    """Default id for a boolean result, uniquified with a numeric suffix."""
    base = f"{kind}_of_{a}_{b}"
    if base not in taken:
        return base
    suffix = 2
    while f"{base}_{suffix}" in taken:
        suffix += 1
    return f"{base}_{suffix}"


def grid_child_name(prefix: str, row: int, col: int) -> str:
    return f"{prefix}_{row}_{col}"
