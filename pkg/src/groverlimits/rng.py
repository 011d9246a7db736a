"""Portable, seekable Gaussian streams.

Each stream is keyed by ``(seed, stream_index)`` and backed by the Philox4x64
counter-based generator.  Only the raw 64-bit output of Philox is used (that
output is frozen across NumPy releases); the Gaussian transform is a
Box-Muller cosine branch implemented here, so a given key yields the same
samples on every platform and NumPy version.

One normal variate consumes two raw words::

    u1 = ((w0 >> 11) + 1) * 2**-53        in (0, 1]
    u2 = (w1 >> 11) * 2**-53              in [0, 1)
    z  = sqrt(-2 ln u1) * cos(2 pi u2)
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_TWO_M53 = 2.0**-53


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit mixer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def stream_index(n: int, sample: int) -> int:
    """Stream identifier for Monte Carlo sample ``sample`` at qubit count ``n``.

    Depends only on the pair, so adding qubit counts or samples to a sweep
    never perturbs the streams of existing points.
    """
    if not (0 <= n < 1 << 32 and 0 <= sample < 1 << 32):
        raise ValueError(f"(n, sample) out of range: ({n}, {sample})")
    return splitmix64((n << 32) | sample)


class RngStream:
    """Deterministic Gaussian stream identified by ``(seed, stream_index)``.

    Drawing advances an internal counter; two streams built from the same
    key produce bit-identical sequences.
    """

    def __init__(self, seed: int, stream_index: int = 0):
        if not (0 <= seed <= _MASK64 and 0 <= stream_index <= _MASK64):
            raise ValueError("seed and stream_index must be unsigned 64-bit integers")
        self.seed = seed
        self.stream_index = stream_index
        self._bits = np.random.Philox(key=seed | (stream_index << 64))
        self.counter = 0

    def __repr__(self):
        return (f"RngStream(seed={self.seed}, stream_index={self.stream_index}, "
                f"counter={self.counter})")

    def uniform_pairs(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        raw = self._bits.random_raw(2 * count).reshape(count, 2)
        self.counter += count
        u1 = ((raw[:, 0] >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_M53
        u2 = (raw[:, 1] >> np.uint64(11)).astype(np.float64) * _TWO_M53
        return u1, u2

    def normals(self, count: int) -> np.ndarray:
        """Draw ``count`` standard normal variates."""
        if count < 0:
            raise ValueError("count must be non-negative")
        u1, u2 = self.uniform_pairs(count)
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def normal(self, mean: float = 0.0, std: float = 1.0) -> float:
        return float(mean + std * self.normals(1)[0])
