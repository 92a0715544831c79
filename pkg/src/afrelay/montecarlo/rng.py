"""Counter-based SplitMix64 random streams.

The generator is a pure function of ``(key, counter)``, so any sample can be
regenerated without replaying the ones before it and independent workers can
own disjoint counter ranges. Written out for ports to other languages:

    GAMMA = 0x9E3779B97F4A7C15
    mix64(z):
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB   mod 2^64
        return z ^ (z >> 31)
    key          = mix64(master_seed)
    output(c)    = mix64(key + (c + 1) * GAMMA   mod 2^64)
    uniform(c)   = (output(c) >> 11) * 2^-53            in [0, 1)

``mix64`` is a bijection on 64-bit words and GAMMA is odd, so distinct
counters never produce the same output under one key.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_TWO_POW_MINUS_53 = 2.0**-53


def mix64(z: int) -> int:
    """SplitMix64 output function on a Python integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def derive_key(master_seed: int) -> int:
    """Stream key for a master seed."""
    if not isinstance(master_seed, int) or not 0 <= master_seed <= MASK64:
        raise ValueError(f"master_seed must be a 64-bit unsigned int, got {master_seed}")
    return mix64(master_seed)


def output_at(key: int, counter: int) -> int:
    """Reference (scalar) generator output for one counter."""
    return mix64(key + (counter + 1) * GAMMA)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def outputs(key: int, start: int, count: int) -> np.ndarray:
    """Generator outputs for counters ``start .. start + count - 1``."""
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    base = (key + (start + 1) * GAMMA) & MASK64
    steps = np.arange(count, dtype=np.uint64)
    # uint64 array arithmetic wraps modulo 2^64
    z = np.uint64(base) + steps * np.uint64(GAMMA)
    return _mix64_array(z)


class CounterStream:
    """
    A stream over a contiguous counter range of one key.

    Each stream owns private position state; two streams with the same key
    and disjoint ranges never share an output.

    Example:
        >>> stream = CounterStream(derive_key(1))
        >>> u = stream.uniform(4)
        >>> stream.position
        4
    """

    def __init__(self, key: int, start: int = 0) -> None:
        if start < 0:
            raise ValueError(f"start must be non-negative, got {start}")
        self.key = key & MASK64
        self.start = start
        self.position = start

    @classmethod
    def from_seed(cls, master_seed: int, start: int = 0) -> CounterStream:
        """Create a stream for a master seed starting at the given counter."""
        return cls(derive_key(master_seed), start)

    def next_uint64(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit outputs."""
        values = outputs(self.key, self.position, count)
        self.position += count
        return values

    def uniform(self, count: int) -> np.ndarray:
        """Next ``count`` uniforms in [0, 1) with 53 random bits each."""
        raw = self.next_uint64(count)
        return (raw >> np.uint64(11)).astype(np.float64) * _TWO_POW_MINUS_53

    def __repr__(self) -> str:
        return f"CounterStream(key={self.key:#018x}, start={self.start}, position={self.position})"
