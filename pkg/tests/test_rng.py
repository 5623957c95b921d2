from rootedcluster.rng import SplitMix64


def test_reference_stream():
    # published first outputs of SplitMix64 seeded with 0
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4


def test_bounded_draws():
    rng = SplitMix64(17)
    draws = [rng.randint(-3, 3) for _ in range(2000)]
    assert set(draws) == set(range(-3, 4))
    assert SplitMix64(17).randint(-3, 3) == draws[0]
