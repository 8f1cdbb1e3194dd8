"""Named seed derivation: one user seed fans out into independent, replayable streams."""

from __future__ import annotations

import hashlib
import random

MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step; returns (output, next state)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), state


def _name_key(name: object) -> int:
    digest = hashlib.blake2b(str(name).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def derive_seed(seed: int, *names: object) -> int:
    """64-bit child seed for the path ``names`` under ``seed``."""
    state = seed & MASK64
    for name in names:
        out, state = splitmix64(state ^ _name_key(name))
        state = out
    out, _ = splitmix64(state)
    return out


def named_rng(seed: int, *names: object) -> random.Random:
    return random.Random(derive_seed(seed, *names))
