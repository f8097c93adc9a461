"""SplitMix64 against the reference constants, plus distribution sanity.

The golden vectors were produced by compiling Vigna's public-domain C
reference (splitmix64.c) and printing the first four outputs for each seed.
If these ever fail, the generator is not the documented algorithm and every
recorded allocation audit becomes unreplayable.
"""
from hypothesis import given
from hypothesis import strategies as st

from campuschain.rng import SplitMix64

GOLDEN = {
    0x0000000000000000: [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
        0xF88BB8A8724C81EC,
    ],
    0x123456789ABCDEF0: [
        0x161922C645CE50E8,
        0xAD760CAFA1697B60,
        0x3501FF44902CA50D,
        0x417CB9A826D831DF,
    ],
}


def test_golden_vectors():
    for seed, expected in GOLDEN.items():
        rng = SplitMix64(seed)
        assert [rng.next_u64() for _ in range(4)] == expected


def test_same_seed_same_stream():
    a, b = SplitMix64(981), SplitMix64(981)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


def test_random_in_unit_interval():
    rng = SplitMix64(5)
    for _ in range(10_000):
        x = rng.random()
        assert 0.0 <= x < 1.0


def test_random_mean_near_half():
    rng = SplitMix64(17)
    n = 50_000
    mean = sum(rng.random() for _ in range(n)) / n
    # std error of the mean is ~0.0013; allow 5 sigma
    assert abs(mean - 0.5) < 0.0065


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(1, 1000))
def test_below_in_range(seed, n):
    rng = SplitMix64(seed)
    for _ in range(5):
        assert 0 <= rng.below(n) < n


def test_below_rejects_nonpositive():
    rng = SplitMix64(0)
    try:
        rng.below(0)
    except ValueError:
        pass
    else:
        raise AssertionError("below(0) must raise")


def test_seed_masked_to_64_bits():
    assert SplitMix64(2**64).next_u64() == SplitMix64(0).next_u64()
