"""Spectral and covering computations for minimizing hypercones and their cylinders."""

from __future__ import annotations

import os

__version__ = "0.1.0"

DEFAULT_SEED = 20240611


def resolve_seed(seed: int | None = None) -> int:
    """Explicit seed, else $CONESPEC_SEED, else DEFAULT_SEED."""
    if seed is not None:
        return int(seed)
    env = os.environ.get("CONESPEC_SEED")
    return int(env) if env else DEFAULT_SEED
