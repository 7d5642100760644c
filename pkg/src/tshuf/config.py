"""Runtime limits, overridable through the environment or CLI flags."""

from __future__ import annotations

import os

DEFAULT_ARITY_CAP = 6

# Kernels at or below this arity are symmetrized on construction to verify
# that they clear to a Laurent polynomial; above it the invariant is trusted.
KERNEL_CHECK_ARITY = 3

_arity_cap: int | None = None
_trunc_bound: int | None = None


def arity_cap() -> int:
    if _arity_cap is not None:
        return _arity_cap
    env = os.environ.get("TSHUF_ARITY_CAP")
    return int(env) if env else DEFAULT_ARITY_CAP


def set_arity_cap(cap: int | None) -> None:
    global _arity_cap
    _arity_cap = cap


def trunc_bound() -> int | None:
    """Optional floor for series truncation bounds; None means automatic."""
    if _trunc_bound is not None:
        return _trunc_bound
    env = os.environ.get("TSHUF_TRUNC_BOUND")
    return int(env) if env else None


def set_trunc_bound(bound: int | None) -> None:
    global _trunc_bound
    _trunc_bound = bound
