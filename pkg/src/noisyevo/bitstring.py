"""Genotypes, seeded random streams and evaluation counting.

Bit strings are plain read-only numpy boolean arrays. Every operation that
changes bits returns a fresh array and leaves its input alone.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

_MASK64 = (1 << 64) - 1


def mix_seed(master: int, index: int) -> int:
    """Derive a 64-bit seed from ``(master, index)``.

    Distinct indices give statistically independent streams; the mapping is
    deterministic so run ``i`` of an experiment always sees the same draws.
    """
    if index < 0:
        raise ValueError(f"index must be non-negative, got {index}")
    seq = np.random.SeedSequence([int(master) & _MASK64, int(index)])
    lo, hi = seq.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


class RandomStream:
    """Seeded PCG64 stream owned by a single run.

    Attribute access falls through to the wrapped :class:`numpy.random.Generator`,
    so ``stream.random(5)`` and ``stream.normal(0, 2)`` work as usual.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def child(self, index: int) -> "RandomStream":
        return RandomStream(mix_seed(self.seed, index))

    # the hot paths skip __getattr__
    def random(self, size=None):
        return self.generator.random(size)

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def integers(self, *args, **kwargs):
        return self.generator.integers(*args, **kwargs)

    def __getattr__(self, name):
        if name == "generator":
            raise AttributeError(name)
        return getattr(self.generator, name)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed})"


class EvalCounter:
    """Number of noisy fitness calls made so far. Only ever grows."""

    __slots__ = ("count",)

    def __init__(self, count: int = 0):
        if count < 0:
            raise ValueError("count must be non-negative")
        self.count = int(count)

    def increment(self, k: int = 1) -> None:
        if k < 0:
            raise ValueError("counter cannot decrease")
        self.count += int(k)

    def __repr__(self) -> str:
        return f"EvalCounter({self.count})"


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def bitstring(bits: str | Iterable[int | bool]) -> np.ndarray:
    """Build a bit string from ``"10110"`` or any iterable of 0/1 values."""
    if isinstance(bits, str):
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) == ord("1")
    else:
        arr = np.array(list(bits), dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0 or np.any((arr != 0) & (arr != 1)):
            raise ValueError("bits must be a non-empty sequence of 0/1")
        arr = arr.astype(bool)
    return _frozen(arr.copy())


def to_str(x: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in x)


def new_uniform(n: int, rng: RandomStream) -> np.ndarray:
    """Uniformly random string of length ``n``."""
    if n < 1:
        raise ValueError(f"problem size must be positive, got {n}")
    return _frozen(rng.random(n) < 0.5)


def ones_count(x: np.ndarray) -> int:
    return int(np.count_nonzero(x))


def is_optimum(x: np.ndarray) -> bool:
    return bool(x.all())


def flip_each_bit(x: np.ndarray, rate: float, rng: RandomStream) -> np.ndarray:
    """Standard bit mutation: toggle every position independently with ``rate``."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    mask = rng.random(x.shape[0]) < rate
    return _frozen(x ^ mask)


def flip_one_bit(x: np.ndarray, rng: RandomStream) -> np.ndarray:
    """Toggle exactly one uniformly chosen position."""
    y = x.copy()
    i = rng.integers(x.shape[0])
    y[i] = not y[i]
    return _frozen(y)


def hamming(x: np.ndarray, y: np.ndarray) -> int:
    return int(np.count_nonzero(x != y))
