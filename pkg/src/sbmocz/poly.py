"""Polynomial algebra on coefficient vectors ``x = [x_0, ..., x_K]``.

Coefficients are stored in ascending powers, ``X(z) = sum_n x_n z^n``.  All
functions accept a single vector or a batch with the coefficient index on
the last axis.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .constellation import sbmocz_phases

__all__ = [
    "zeros_to_coeffs",
    "bits_to_coeffs",
    "evaluate",
    "unit_circle_dft",
    "autocorrelation",
    "autocorrelation_dtft",
    "OVERFLOW_GUARD",
]

OVERFLOW_GUARD = 1e150


def zeros_to_coeffs(zeros) -> np.ndarray:
    """Expand ``prod_k (z - alpha_k)`` and normalise to ``||x||^2 = K + 1``.

    The monic polynomial is sampled at the ``K+1`` roots of unity and the
    coefficients recovered by a DFT.  The global phase is fixed by making the
    leading coefficient real and positive.

    Parameters
    ----------
    zeros : array_like, shape (..., K)

    Returns
    -------
    ndarray, shape (..., K + 1)
    """
    zeros = np.asarray(zeros, dtype=complex)
    if zeros.ndim == 0 or zeros.shape[-1] < 1:
        raise ValueError("need at least one zero")
    if not np.all(np.isfinite(zeros)):
        raise ValueError("zeros must be finite")
    K = zeros.shape[-1]
    M = K + 1
    grid = np.exp(2j * np.pi * np.arange(M) / M)
    # X(w_n) = prod_k (w_n - alpha_k) on M = K+1 unit-circle points, then invert
    # the DFT; sequential monomial expansion loses all precision by K ~ 64
    vals = np.prod(grid[:, None] - zeros[..., None, :], axis=-1)
    x = np.fft.fft(vals, axis=-1) / M
    return _normalise(x)


@lru_cache(maxsize=16)
def _log_tables(K: int, radius: float, zeta: float) -> tuple[np.ndarray, np.ndarray]:
    M = K + 1
    grid = np.exp(2j * np.pi * np.arange(M) / M)
    u = np.exp(1j * np.mod(sbmocz_phases(K, zeta), 2 * np.pi))
    log_in = np.log(grid[:, None] - u[None, :] / radius)
    log_out = np.log(grid[:, None] - u[None, :] * radius)
    return log_in.sum(axis=1), (log_out - log_in).T.copy()


def bits_to_coeffs(bits, c) -> np.ndarray:
    """Normalised coefficients for message bits on constellation ``c``.

    Same result as ``zeros_to_coeffs(map_bits_to_zeros(bits, c))``.  Each
    zero is one of two known points, so ``log X(w_n)`` is a fixed base plus
    a linear function of the bits and the whole batch costs one matmul.
    """
    bits = np.asarray(bits)
    K = c.K
    if bits.shape[-1] != K:
        raise ValueError(f"expected {K} bits per message, got {bits.shape[-1]}")
    base, delta = _log_tables(K, c.radius, c.zeta)
    vals = np.exp(base + bits.astype(float) @ delta)
    x = np.fft.fft(vals, axis=-1) / (K + 1)
    return _normalise(x)


def _normalise(x: np.ndarray) -> np.ndarray:
    K = x.shape[-1] - 1
    peak = np.max(np.abs(x))
    if not np.isfinite(peak) or peak > OVERFLOW_GUARD:
        raise FloatingPointError("coefficient expansion overflowed")
    norm2 = np.sum(np.abs(x) ** 2, axis=-1, keepdims=True)
    scale = np.sqrt((K + 1) / norm2)
    lead_phase = np.exp(-1j * np.angle(x[..., -1:]))
    return np.ascontiguousarray(x * scale * lead_phase)


def evaluate(x, z):
    """Horner evaluation of ``X(z)``.

    ``x`` has shape ``(..., K+1)``; ``z`` broadcasts against the batch shape
    of ``x`` (e.g. ``x`` of shape ``(B, K+1)`` with ``z`` of shape ``(B, M)``
    needs ``x[:, None, :]``).  For a single vector ``x`` any array ``z`` works.
    """
    x = np.asarray(x)
    z = np.asarray(z)
    if x.ndim == 1:
        acc = np.zeros(z.shape, dtype=np.result_type(x, z, complex))
        for coef in x[::-1]:
            acc = acc * z + coef
        return acc
    acc = np.zeros(np.broadcast_shapes(x.shape[:-1], z.shape), dtype=complex)
    for n in range(x.shape[-1] - 1, -1, -1):
        acc = acc * z + x[..., n]
    return acc


def unit_circle_dft(x, N: int) -> np.ndarray:
    """``X(e^{-j 2 pi n / N})`` for ``n in [N]`` via one zero-padded N-point FFT."""
    x = np.asarray(x)
    if N < x.shape[-1]:
        raise ValueError(f"N={N} is shorter than the coefficient vector ({x.shape[-1]}); grid would alias")
    return np.fft.fft(x, n=N, axis=-1)


def autocorrelation(x) -> np.ndarray:
    """Aperiodic autocorrelation ``a_l = sum_n x_{n+l} conj(x_n)``, lags ``-K..K``.

    Index ``i`` of the result corresponds to lag ``i - K``.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1:
        return np.stack([autocorrelation(row) for row in x.reshape(-1, x.shape[-1])]).reshape(
            x.shape[:-1] + (2 * x.shape[-1] - 1,)
        )
    return np.correlate(x, x, mode="full")


def autocorrelation_dtft(a, theta) -> np.ndarray:
    """``sum_l a_l e^{-j theta l}`` for an autocorrelation with lags ``-K..K``."""
    a = np.asarray(a)
    theta = np.asarray(theta, dtype=float)
    K = (a.shape[-1] - 1) // 2
    lags = np.arange(-K, K + 1)
    return np.exp(-1j * np.multiply.outer(theta, lags)) @ a
