"""Enumeration caps shared by the brute-force paths."""

from __future__ import annotations

import os

LIST_CAP = 10**6
HOM_CAP = 10**8
ORDER_CAP = 100

ENV_CAP = "LOOPBLOCKS_CAP"


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


def cap(default: int) -> int:
    """Return ``default`` unless the ``LOOPBLOCKS_CAP`` environment variable overrides it."""
    raw = os.environ.get(ENV_CAP)
    if raw is None or raw.strip() == "":
        return default
    value = int(float(raw))
    if value <= 0:
        raise ValueError(f"{ENV_CAP} must be positive, got {raw!r}")
    return value
