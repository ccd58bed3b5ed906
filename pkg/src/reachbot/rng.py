"""Deterministic random-stream derivation.

Every stochastic piece of the study draws from its own sub-stream keyed by
(master seed, trial index, purpose tag), so adding or reordering metrics
never perturbs the draws of another purpose.
"""
from __future__ import annotations

import zlib

import numpy as np


def substream(seed: int, trial: int = 0, tag: str = "") -> np.random.Generator:
    """Return an independent generator for one (trial, purpose) cell."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    key = zlib.crc32(tag.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial), key]))
