"""Runtime limits and backend selection, read from the environment."""

from __future__ import annotations

import os

from triact.errors import ParameterError

DEFAULT_VERTEX_BUDGET = 200_000
DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_BLOCK_BUDGET = 10_000

_BUDGET_KEYS = {"vertices", "nodes", "blocks"}


def budgets() -> dict[str, int]:
    """Return the active limits.

    ``TRIACT_BUDGET`` may hold a bare integer (overrides the vertex budget) or
    comma-separated ``key=value`` pairs with keys ``vertices``, ``nodes`` and
    ``blocks``.
    """
    out = {
        "vertices": DEFAULT_VERTEX_BUDGET,
        "nodes": DEFAULT_NODE_BUDGET,
        "blocks": DEFAULT_BLOCK_BUDGET,
    }
    raw = os.environ.get("TRIACT_BUDGET", "").strip()
    if not raw:
        return out
    try:
        if "=" not in raw:
            out["vertices"] = int(raw)
            return out
        for item in raw.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in _BUDGET_KEYS:
                raise ParameterError(f"unknown TRIACT_BUDGET key {key!r}")
            out[key] = int(value)
    except ValueError as exc:
        raise ParameterError(f"malformed TRIACT_BUDGET {raw!r}") from exc
    return out


def vertex_budget() -> int:
    return budgets()["vertices"]


def node_budget() -> int:
    return budgets()["nodes"]


def block_budget() -> int:
    return budgets()["blocks"]


def numba_requested() -> bool:
    # TRIACT_NUMBA=0 forces the numpy/pure-python kernels
    return os.environ.get("TRIACT_NUMBA", "1").strip().lower() not in {"0", "false", "no", "off"}
