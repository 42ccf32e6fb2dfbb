"""Counter-based random streams.

Every random draw in the package is a pure function of ``(key, counter)``
built from the SplitMix64 finalizer, so replicates and fixtures can be
evaluated in any order (or on any worker) and still reproduce bit for bit.
The compiled kernel implements the same arithmetic.
"""
from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

# stream salts; keep in sync with _kernels.pyx
SALT_OUTCOME = 0x6F7574636F6D6573
SALT_TIE = 0x7469656272656B73
SALT_TACTIC = 0x74616374696373AA
SALT_MATCH = 0x6D61746368657321

_INV_2_53 = 1.0 / 9007199254740992.0


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive(key: int, counter: int) -> int:
    """Child key number ``counter`` of ``key`` (a SplitMix64 stream element)."""
    return mix64((key + (counter + 1) * GOLDEN) & MASK64)


def stream(key: int, salt: int) -> int:
    return mix64((key ^ salt) & MASK64)


def seed_key(*parts: int) -> int:
    """Fold a tuple of integers (seeds, indices) into one 64-bit key."""
    key = 0
    for p in parts:
        key = derive(key, int(p) & MASK64)
    return key


def to_unit(z: int) -> float:
    return (z >> 11) * _INV_2_53


def uniform(key: int, counter: int) -> float:
    return to_unit(derive(key, counter))


# -- vectorised versions (uint64 arithmetic wraps modulo 2**64) --

def mix64_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def derive_array(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.uint64)
    counters = np.asarray(counters, dtype=np.uint64)
    return mix64_array(keys + (counters + np.uint64(1)) * np.uint64(GOLDEN))


def stream_array(keys: np.ndarray, salt: int) -> np.ndarray:
    return mix64_array(np.asarray(keys, dtype=np.uint64) ^ np.uint64(salt))


def to_unit_array(z: np.ndarray) -> np.ndarray:
    return (np.asarray(z, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * _INV_2_53


def replicate_keys(base_seed: int, start: int, stop: int) -> np.ndarray:
    """Keys of replicates ``start..stop-1`` derived from ``base_seed``."""
    base = seed_key(base_seed)
    return derive_array(np.full(stop - start, base, dtype=np.uint64),
                        np.arange(start, stop, dtype=np.uint64))


def replicate_key(base_seed: int, index: int) -> int:
    return derive(seed_key(base_seed), index)


def generator(*parts: int) -> np.random.Generator:
    """A numpy Generator seeded from the folded key, for non-hot-path sampling."""
    return np.random.default_rng(seed_key(*parts))
