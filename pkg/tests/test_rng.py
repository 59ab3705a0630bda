import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from fireroute.rng import GOLDEN, MASK64, RngStream

# Independent reference written directly from the published algorithm.
M = (1 << 64) - 1


def _reference(seed, n):
    x = seed & M
    out = []
    for _ in range(n):
        x = (x + 0x9E3779B97F4A7C15) & M
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
        out.append(z ^ (z >> 31))
    return out


def test_matches_published_vectors_for_seed_zero():
    s = RngStream(0)
    assert s.next_word() == 0xE220A8397B1DCDAF
    assert s.next_word() == 0x6E789E6AA1B965F4
    assert s.next_word() == 0x06C45D188009454F


@given(st.integers(min_value=0, max_value=(1 << 64) - 1))
@settings(max_examples=60)
def test_matches_reference_for_any_seed(seed):
    s = RngStream(seed)
    assert [s.next_word() for _ in range(6)] == _reference(seed, 6)


def test_seed_is_masked_to_64_bits():
    assert RngStream(1 << 64).state == RngStream(0).state
    wide = RngStream(-1)
    assert 0 <= wide.state < (1 << 64)


@given(st.integers(min_value=0, max_value=(1 << 64) - 1))
@settings(max_examples=60)
def test_floats_are_unit_interval_with_53_bit_mantissa(seed):
    s = RngStream(seed)
    ref = RngStream(seed)
    for _ in range(4):
        u = s.next_float()
        assert 0.0 <= u < 1.0
        assert u == (ref.next_word() >> 11) * 2.0**-53


@given(
    st.integers(min_value=0, max_value=(1 << 64) - 1),
    st.integers(min_value=0, max_value=200),
)
@settings(max_examples=40)
def test_skip_equals_sequential_draws(seed, n):
    seq = RngStream(seed)
    for _ in range(n):
        seq.next_word()
    jump = RngStream(seed)
    jump.skip(n)
    assert jump.state == seq.state
    assert jump.next_word() == seq.next_word()


def test_skip_matches_vectorized_counter_formula():
    # The fire kernels derive word k as mix(state + k*GOLDEN); the uint64
    # array arithmetic must agree with the sequential stream.
    seed = 0xDEADBEEF12345678
    s = RngStream(seed)
    base = s.state
    words = []
    for _ in range(32):
        words.append(s.next_word())
    z = np.arange(1, 33, dtype=np.uint64) * np.uint64(GOLDEN) + np.uint64(base)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    assert [int(v) for v in z] == words


def test_clone_is_independent():
    a = RngStream(9)
    a.next_word()
    b = a.clone()
    assert b.state == a.state
    a.next_word()
    assert b.state != a.state


def test_state_stays_masked():
    s = RngStream(MASK64)
    for _ in range(5):
        s.next_word()
        assert 0 <= s.state <= MASK64
