"""Deterministic 64-bit counter-based PRNG (SplitMix64).

Every stochastic decision in the generator flows through this generator so
that a (seed, config) pair maps to byte-identical output. The state advances
by a fixed odd constant and each output is a finalizer hash of the counter,
which keeps per-sample streams independent when seeds are derived by mixing.
Integer draws use rejection-free modulo reduction; the bias is negligible for
the small ranges used here and keeping the draw count fixed matters more.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanching hash of a 64-bit value."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Per-sample seed from a master seed and sample index."""
    return mix64(mix64(master_seed) ^ (mix64(index + 1) | 1))


class DetRng:
    """SplitMix64 stream with the handful of draw helpers the pipeline needs."""

    def __init__(self, seed: int):
        self._state = mix64(seed)

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return mix64(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high] inclusive."""
        if high < low:
            raise ValueError("empty integer range")
        span = high - low + 1
        return low + self.next_u64() % span

    def chance(self, probability: float) -> bool:
        return self.random() < probability

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def weighted_choice(self, seq, weights):
        total = 0.0
        for w in weights:
            total += w
        target = self.random() * total
        acc = 0.0
        for item, w in zip(seq, weights):
            acc += w
            if target < acc:
                return item
        return seq[-1]

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates shuffle; returns the list."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items

    def sample(self, seq, k: int) -> list:
        """k distinct items, order randomized."""
        if k > len(seq):
            raise ValueError("sample larger than population")
        pool = list(seq)
        self.shuffle(pool)
        return pool[:k]

    def sign(self) -> int:
        return 1 if self.next_u64() & 1 else -1
