"""Flat-fading / AWGN channel with CFO-induced zero rotation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import TWO_PI

__all__ = [
    "ChannelRealization",
    "CfoDecomposition",
    "noise_variance_from_ebn0",
    "apply_channel",
    "apply_cfo",
    "decompose_cfo",
    "draw_fading",
    "draw_noise",
]


@dataclass(frozen=True)
class ChannelRealization:
    h: complex = 1.0
    sigma_n2: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        if self.sigma_n2 < 0:
            raise ValueError("noise variance must be non-negative")
        if not (0.0 <= self.psi < TWO_PI):
            raise ValueError(f"psi must lie in [0, 2*pi), got {self.psi!r}")


@dataclass(frozen=True)
class CfoDecomposition:
    psi0: float
    m_shift: int


def noise_variance_from_ebn0(ebn0_db: float, K_info: int, frame_len: int) -> float:
    """Complex noise variance for a frame of energy ``frame_len`` carrying ``K_info`` bits."""
    if K_info < 1 or frame_len < 1:
        raise ValueError("K_info and frame_len must be positive")
    return (frame_len / K_info) * 10.0 ** (-ebn0_db / 10.0)


def draw_fading(rng: np.random.Generator | None, fading: bool = True) -> complex:
    """``h ~ CN(0, 1)``; returns exactly 1 when ``fading`` is off."""
    if not fading:
        return 1.0 + 0.0j
    re, im = rng.standard_normal(2)
    return complex(re, im) * math.sqrt(0.5)


def draw_noise(rng: np.random.Generator, sigma_n2: float, n: int) -> np.ndarray:
    """``n`` i.i.d. ``CN(0, sigma_n2)`` samples."""
    w = rng.standard_normal((n, 2)) * math.sqrt(sigma_n2 / 2.0)
    return w[:, 0] + 1j * w[:, 1]


def apply_cfo(y, psi) -> np.ndarray:
    """Multiply coefficient ``n`` by ``e^{j psi n}``, rotating all zeros clockwise by ``psi``.

    ``psi`` may be a scalar or an array matching the batch shape of ``y``.
    """
    y = np.asarray(y)
    n = np.arange(y.shape[-1])
    psi = np.asarray(psi, dtype=float)
    return y * np.exp(1j * psi[..., None] * n)


def apply_channel(x, ch: ChannelRealization, rng: np.random.Generator | None = None) -> np.ndarray:
    """``y~_n = (h x_n + w_n) e^{j psi n}`` with ``w_n ~ CN(0, sigma_n2)``."""
    x = np.asarray(x, dtype=complex)
    y = ch.h * x
    if ch.sigma_n2 > 0:
        if rng is None:
            raise ValueError("a random generator is required when sigma_n2 > 0")
        y = y + draw_noise(rng, ch.sigma_n2, x.shape[-1])
    if ch.psi != 0.0:
        y = apply_cfo(y, ch.psi)
    return y


def decompose_cfo(psi: float, K: int, zeta: float = 0.0) -> CfoDecomposition:
    """Split ``psi`` into ``psi0 in [0, dphi)`` plus ``m_shift`` steps of ``dphi = (2pi - zeta)/K``."""
    dphi = (TWO_PI - zeta) / K
    m = math.floor(psi / dphi)
    psi0 = psi - m * dphi
    # guard against psi0 landing on dphi through rounding
    if psi0 >= dphi:
        psi0 -= dphi
        m += 1
    if psi0 < 0:
        psi0 = 0.0
    return CfoDecomposition(psi0=psi0, m_shift=int(m % K))
