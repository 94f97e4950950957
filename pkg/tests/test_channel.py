import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbmocz.channel import (
    ChannelRealization,
    apply_cfo,
    apply_channel,
    decompose_cfo,
    draw_fading,
    draw_noise,
    noise_variance_from_ebn0,
)
from sbmocz.constellation import TWO_PI, make_constellation, map_bits_to_zeros
from sbmocz.dizet import dizet_decode
from sbmocz.poly import bits_to_coeffs, evaluate


def frame(K=32, zeta=0.05, seed=0):
    c = make_constellation(K, zeta)
    bits = np.random.default_rng(seed).integers(0, 2, K)
    return c, bits, bits_to_coeffs(bits, c)


def test_noise_variance_examples():
    assert noise_variance_from_ebn0(0, 128, 129) == pytest.approx(129 / 128)
    assert noise_variance_from_ebn0(10, 106, 128) == pytest.approx(0.12075, abs=1e-5)
    assert noise_variance_from_ebn0(10, 106, 128) == pytest.approx(128 / 106 * 0.1, rel=1e-14)
    assert noise_variance_from_ebn0(400, 128, 129) < 1e-39
    with pytest.raises(ValueError):
        noise_variance_from_ebn0(0, 0, 129)


def test_identity_channel():
    _, _, x = frame()
    np.testing.assert_array_equal(apply_channel(x, ChannelRealization()), x)


def test_cfo_rotates_zeros_clockwise():
    c, bits, x = frame()
    psi = 0.7
    y = apply_channel(x, ChannelRealization(psi=psi))
    z = map_bits_to_zeros(bits, c) * np.exp(-1j * psi)
    assert np.max(np.abs(evaluate(y, z))) < 1e-9


def test_scale_leaves_decisions():
    c, bits, x = frame()
    y = apply_channel(x, ChannelRealization(h=2j))
    np.testing.assert_allclose(y, 2j * x)
    np.testing.assert_array_equal(dizet_decode(y, c).bits, bits)


def test_zero_preservation_random_h():
    c, bits, x = frame(K=64, zeta=0.0)
    z = map_bits_to_zeros(bits, c)
    rng = np.random.default_rng(5)
    for _ in range(10):
        y = apply_channel(x, ChannelRealization(h=draw_fading(rng)))
        assert np.max(np.abs(evaluate(y, z))) < 1e-9 * np.linalg.norm(y)


def test_realization_validation():
    with pytest.raises(ValueError):
        ChannelRealization(sigma_n2=-1)
    with pytest.raises(ValueError):
        ChannelRealization(psi=TWO_PI)
    with pytest.raises(ValueError):
        apply_channel(np.ones(3), ChannelRealization(sigma_n2=1.0))


def test_decompose_examples():
    assert decompose_cfo(0.0, 128) == (0.0, 0) or decompose_cfo(0.0, 128).m_shift == 0
    d = decompose_cfo(2 * math.pi / 128, 128)
    assert d.m_shift == 1 and abs(d.psi0) < 1e-15
    d = decompose_cfo(0.3, 16)
    assert d.psi0 == pytest.approx(0.3 - math.floor(0.3 / (2 * math.pi / 16)) * (2 * math.pi / 16), abs=1e-15)
    assert d.m_shift == 0


@settings(max_examples=300, deadline=None)
@given(st.floats(0.0, TWO_PI, exclude_max=True), st.integers(1, 256))
def test_decompose_round_trip(psi, K):
    d = decompose_cfo(psi, K)
    dphi = TWO_PI / K
    assert 0.0 <= d.psi0 < dphi
    err = math.remainder(d.psi0 + d.m_shift * dphi - psi, TWO_PI)
    assert abs(err) < 1e-12


def test_fading_moments():
    rng = np.random.default_rng(2024)
    h = np.array([draw_fading(rng) for _ in range(1_000_000)])
    assert abs(np.mean(np.abs(h) ** 2) - 1) < 0.01
    assert abs(h.real.mean()) < 0.01 and abs(h.imag.mean()) < 0.01
    assert draw_fading(None, fading=False) == 1


def test_noise_moments():
    w = draw_noise(np.random.default_rng(0), 0.5, 400_000)
    assert np.mean(np.abs(w) ** 2) == pytest.approx(0.5, rel=0.01)
    assert np.var(w.real) == pytest.approx(0.25, rel=0.02)
    assert abs(np.mean(w.real * w.imag)) < 3e-3


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 3.0), st.floats(0, 3.0))
def test_cfo_composition(p1, p2):
    _, _, x = frame(K=16)
    one = apply_cfo(apply_channel(x, ChannelRealization(psi=p1)), p2)
    both = apply_channel(x, ChannelRealization(psi=math.fmod(p1 + p2, TWO_PI)))
    np.testing.assert_allclose(one, both, atol=1e-12)


def test_apply_cfo_batch():
    x = np.ones((3, 5), dtype=complex)
    psi = np.array([0.0, 0.1, 0.2])
    y = apply_cfo(x, psi)
    np.testing.assert_allclose(y[2], np.exp(0.2j * np.arange(5)))
