import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbmocz.channel import apply_cfo
from sbmocz.constellation import make_constellation
from sbmocz.fec import gf
from sbmocz.fec.acpc import (
    acpc_decode,
    acpc_decode_word,
    acpc_decode_word_search,
    acpc_encode,
    offset_vector,
)
from sbmocz.fec.bch import BCH_127_106, BchCode, bch_decode, bch_encode, berlekamp_massey, syndromes
from sbmocz.poly import bits_to_coeffs

N = 127


def clmul_mod(a, b, poly=0b10001001):
    """Carry-less multiply then reduce; independent of the log tables."""
    r = 0
    for i in range(7):
        if (b >> i) & 1:
            r ^= a << i
    for d in range(13, 6, -1):
        if (r >> d) & 1:
            r ^= poly << (d - 7)
    return r


def poly_eval_gf(bits, x):
    acc = 0
    for b in bits[::-1]:
        acc = clmul_mod(acc, x) ^ int(b)
    return acc


def error_pattern(rng, w):
    e = np.zeros(N, dtype=np.uint8)
    e[rng.choice(N, w, replace=False)] = 1
    return e


# field

def test_mul_matches_clmul():
    a = np.arange(128)
    for x in range(128):
        ref = [clmul_mod(x, int(y)) for y in a]
        assert [gf.mul(x, int(y)) for y in a] == ref
        np.testing.assert_array_equal(gf.vmul(np.full(128, x), a), ref)


def test_element_orders():
    orders = [gf.element_order(a) for a in range(1, 128)]
    assert all(127 % o == 0 for o in orders)
    assert gf.element_order(2) == 127
    assert gf.element_order(1) == 1
    # 127 is prime, so every element other than 1 is primitive
    assert sorted(set(orders)) == [1, 127]


def test_inverse_and_power():
    for a in range(1, 128):
        assert clmul_mod(a, gf.inv(a)) == 1
        assert gf.power(a, 127) == 1
    with pytest.raises(ZeroDivisionError):
        gf.div(3, 0)
    x = gf.GF128(5)
    assert (x * x.inverse()) == gf.GF128(1)
    assert x + x == gf.GF128(0)


# BCH

def test_code_parameters():
    assert BCH_127_106.k == 106
    assert len(BCH_127_106.generator) == 22
    assert BchCode(t=2).k == 113


def test_generator_roots_and_cycle_divisibility():
    g = BCH_127_106.generator
    beta = 2
    for i in range(1, 7):
        assert poly_eval_gf(g, gf.power(beta, i)) == 0
    # g divides x^127 + 1
    xn = np.zeros(128, dtype=np.uint8)
    xn[0] = xn[127] = 1
    r = xn.copy()
    for i in range(127, len(g) - 2, -1):
        if r[i]:
            r[i - len(g) + 1: i + 1] ^= g
    assert not r.any()


def test_low_weight_codewords():
    eye = np.eye(106, dtype=np.uint8)
    w1 = bch_encode(eye).sum(axis=1)
    assert w1.min() >= 7
    i, j = np.triu_indices(106, 1)
    w2 = bch_encode(eye[i] ^ eye[j]).sum(axis=1)
    assert w2.min() >= 7
    g = np.zeros(N, dtype=np.uint8)
    g[:22] = BCH_127_106.generator
    assert g.sum() >= 7 and not syndromes(g, 6).any()


def test_zero_info_and_clean_decode():
    assert not bch_encode(np.zeros(106, dtype=np.uint8)).any()
    rng = np.random.default_rng(0)
    info = rng.integers(0, 2, 106)
    cw = bch_encode(info)
    assert not syndromes(cw, 6).any()
    r = bch_decode(cw)
    assert r.ok and r.error_count == 0
    np.testing.assert_array_equal(r.info, info)


@pytest.mark.parametrize("t_max, max_w", [(3, 3), (2, 2)])
def test_random_patterns_corrected(t_max, max_w):
    rng = np.random.default_rng(t_max)
    info = rng.integers(0, 2, (10_000, 106))
    cw = bch_encode(info)
    for n in range(10_000):
        w = int(rng.integers(0, max_w + 1))
        r = bch_decode(cw[n] ^ error_pattern(rng, w), t_max=t_max)
        assert r.ok and r.error_count == w
        np.testing.assert_array_equal(r.info, info[n])


def test_beyond_radius_not_silent():
    rng = np.random.default_rng(4)
    fails = 0
    for _ in range(3000):
        info = rng.integers(0, 2, 106)
        rx = bch_encode(info) ^ error_pattern(rng, 4)
        r = bch_decode(rx)
        if not r.ok:
            fails += 1
            assert r.error_count == -1
            np.testing.assert_array_equal(r.info, rx[21:])
            continue
        # a claimed success must be a real codeword within the claimed distance
        re = bch_encode(r.info)
        np.testing.assert_array_equal(re, r.codeword)
        assert int((re ^ rx).sum()) == r.error_count <= 3
        assert not np.array_equal(r.info, info)
    assert fails > 0


def test_three_errors_rejected_at_radius_two():
    rng = np.random.default_rng(5)
    for _ in range(500):
        info = rng.integers(0, 2, 106)
        rx = bch_encode(info) ^ error_pattern(rng, 3)
        r = bch_decode(rx, t_max=2)
        if r.ok:
            assert int((bch_encode(r.info) ^ rx).sum()) == r.error_count <= 2


def test_batch_decode_matches_scalar():
    rng = np.random.default_rng(6)
    words = bch_encode(rng.integers(0, 2, (200, 106)))
    words ^= np.stack([error_pattern(rng, int(rng.integers(0, 6))) for _ in range(200)])
    info, cnt, ok = BCH_127_106.decode_batch(words)
    for i in range(200):
        r = bch_decode(words[i])
        np.testing.assert_array_equal(info[i], r.info)
        assert cnt[i] == r.error_count and ok[i] == r.ok


def test_decode_argument_errors():
    with pytest.raises(ValueError):
        bch_decode(np.zeros(126, dtype=np.uint8))
    with pytest.raises(ValueError):
        bch_decode(np.zeros(127, dtype=np.uint8), t_max=4)
    with pytest.raises(ValueError):
        bch_encode(np.zeros(105))


def test_berlekamp_massey_single_error():
    e = np.zeros(N, dtype=np.uint8)
    e[40] = 1
    sigma = berlekamp_massey(syndromes(e, 6))
    assert sigma == [1, gf.power(2, 40)]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 126))
def test_cyclic_closure(seed, s):
    cw = bch_encode(np.random.default_rng(seed).integers(0, 2, 106))
    assert not syndromes(np.roll(cw, s), 6).any()
    assert bch_decode(np.roll(cw, s)).error_count == 0


# ACPC

def test_offset_outside_code():
    a = offset_vector()
    assert not syndromes(a, 6)[:4].any()  # in the t=2 supercode
    assert syndromes(a, 6)[4] != 0
    assert not a.flags.writeable


@pytest.mark.parametrize("errors", [0, 1, 2])
def test_acpc_all_shifts(errors):
    rng = np.random.default_rng(errors)
    for m in range(N):
        info = rng.integers(0, 2, 106)
        rx = np.roll(acpc_encode(info), -m) ^ error_pattern(rng, errors)
        r = acpc_decode_word(rx)
        assert r.decode_ok and r.detected_shift == m and r.error_count == errors
        np.testing.assert_array_equal(r.info_bits, info)


def test_acpc_injective():
    rng = np.random.default_rng(7)
    seen = set()
    for _ in range(1000):
        t = acpc_encode(rng.integers(0, 2, 106))
        for m in range(N):
            seen.add(np.packbits(np.roll(t, m)).tobytes())
    assert len(seen) == 1000 * N


def test_acpc_matches_search_decoder():
    rng = np.random.default_rng(8)
    for _ in range(30):
        info = rng.integers(0, 2, 106)
        m = int(rng.integers(N))
        rx = np.roll(acpc_encode(info), -m) ^ error_pattern(rng, int(rng.integers(0, 3)))
        a, b = acpc_decode_word(rx), acpc_decode_word_search(rx)
        assert (a.detected_shift, a.error_count, a.decode_ok) == (b.detected_shift, b.error_count, b.decode_ok)
        np.testing.assert_array_equal(a.info_bits, b.info_bits)


def test_acpc_failure_falls_back():
    rng = np.random.default_rng(9)
    rx = rng.integers(0, 2, N).astype(np.uint8)
    r = acpc_decode_word(rx)
    if not r.decode_ok:
        assert r.detected_shift == 0
        np.testing.assert_array_equal(r.info_bits, (rx ^ offset_vector())[21:])


def test_acpc_receiver_integer_shifts():
    rng = np.random.default_rng(10)
    c = make_constellation(127)
    for m in range(N):
        info = rng.integers(0, 2, 106)
        y = apply_cfo(bits_to_coeffs(acpc_encode(info), c), m * c.spacing)
        r = acpc_decode(y, c)
        assert r.decode_ok and r.detected_shift == m
        np.testing.assert_array_equal(r.info_bits, info)


def test_acpc_receiver_random_cfo():
    rng = np.random.default_rng(11)
    c = make_constellation(127)
    info = rng.integers(0, 2, (1000, 106))
    h = (rng.standard_normal(1000) + 1j * rng.standard_normal(1000))[:, None]
    y = apply_cfo(h * bits_to_coeffs(acpc_encode(info), c), rng.uniform(0, 2 * np.pi, 1000))
    for i in range(1000):
        np.testing.assert_array_equal(acpc_decode(y[i], c).info_bits, info[i])


def test_acpc_receiver_rejects_sbmocz():
    with pytest.raises(ValueError):
        acpc_decode(np.ones(128), make_constellation(127, 0.013))
