"""Deterministic named RNG substreams.

All randomness in the toolkit flows from a single user-facing seed.  Distinct
consumers (Monte Carlo batches, direction pickers, the PR-box internal bit,
...) derive independent generators by hashing (seed, label), so adding a new
consumer never perturbs the streams of existing ones.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["derive_seed", "substream"]


def derive_seed(seed: int, label: str) -> int:
    """64-bit seed from SHA-256 of ``(seed, label)``; platform independent."""
    digest = hashlib.sha256(f"{int(seed)}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def substream(seed: int, label: str) -> np.random.Generator:
    """Generator for the named substream of ``seed``."""
    return np.random.default_rng(derive_seed(seed, label))
