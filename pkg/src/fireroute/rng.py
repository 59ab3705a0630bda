"""Deterministic seedable random stream (splitmix64).

The generator state is a single 64-bit word advanced by a fixed odd
increment per draw; each output is an avalanche mix of the state.  Uniform
reals take the top 53 bits of the output word divided by 2**53.  Because
the state is a pure counter, skipping n draws is O(1), which lets the
compiled kernels draw inline and the Python-side stream stay in sync.

Same seed, same sequence, bit-for-bit, on every path (pure Python, NumPy
vectorised, numba compiled).
"""

MASK64 = (1 << 64) - 1

# splitmix64 constants (Steele/Lea/Flood increment, Stafford mix13)
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """Avalanche mix of one 64-bit state word (the splitmix64 output fn)."""
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class RngStream:
    """splitmix64 stream over Python ints (masked 64-bit arithmetic)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_word(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def next_float(self) -> float:
        """Uniform real in [0, 1): top 53 bits of the next word / 2**53."""
        return (self.next_word() >> 11) * 2.0**-53

    def skip(self, n: int) -> None:
        """Advance the state as if n draws had been made."""
        self.state = (self.state + n * GOLDEN) & MASK64

    def clone(self) -> "RngStream":
        copy = RngStream(0)
        copy.state = self.state
        return copy

    def __repr__(self) -> str:
        return f"RngStream(state=0x{self.state:016x})"
