"""SplitMix64, a small portable 64-bit generator.

Used instead of ``random``/``numpy.random`` so that a seed pins the exact
instance stream independently of the Python or numpy version.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Unbiased integer in ``[0, k)`` by rejection."""
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def between(self, lo: int, hi: int) -> int:
        """Integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def unit(self) -> float:
        """Float in ``[0, 1)`` built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)
