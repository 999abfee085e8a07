"""Counter-based hashing for reproducible sampling.

Every random decision is a pure function of integer coordinates (seed, n,
pair, trial...), so results do not depend on iteration order, chunking or
the number of worker processes.
"""

import numpy as np

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    """Scalar splitmix64 finalizer on a 64-bit integer."""
    x = (x + _GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * _M1) & MASK64
    x = ((x ^ (x >> 27)) * _M2) & MASK64
    return x ^ (x >> 31)


def hash_words(*words: int) -> int:
    """Fold any number of integers into one 64-bit hash."""
    h = 0x243F6A8885A308D3
    for w in words:
        h = splitmix64(h ^ (int(w) & MASK64))
    return h


def splitmix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorised splitmix64; uint64 arithmetic wraps modulo 2**64."""
    x = x.astype(np.uint64, copy=True)
    x += np.uint64(_GOLDEN)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_M1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_M2)
    x ^= x >> np.uint64(31)
    return x


def pair_uniforms(seed: int, n: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """One uniform double in [0, 1) per vertex pair (rows[i] < cols[i]).

    The value for a pair depends only on (seed, n, min(u, v), max(u, v)).
    """
    key = np.uint64(hash_words(seed, n))
    salt = np.uint64(splitmix64(hash_words(seed, n) ^ 0xD1B54A32D192ED03))
    x = (rows.astype(np.uint64) << np.uint64(32)) | cols.astype(np.uint64)
    h = splitmix64_array(x ^ key)
    h = splitmix64_array(h ^ salt)
    return (h >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def trial_seed(seed: int, n: int, trial: int) -> int:
    return hash_words(0x7472, seed, n, trial)
