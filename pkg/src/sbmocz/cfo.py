"""Full-range CFO estimation from the gap of a smooshed constellation.

The received polynomial is sampled on an N-point unit-circle grid with one
FFT; the gap in the zero constellation produces a single peak at the
rotation angle.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constellation import TWO_PI
from .poly import unit_circle_dft

__all__ = ["CfoEstimate", "estimate_cfo", "correct_cfo", "wrap_angle", "DEFAULT_N"]

DEFAULT_N = 1024


@dataclass(frozen=True)
class CfoEstimate:
    psi_hat: np.ndarray | float
    peak_index: np.ndarray | int
    peak_value: np.ndarray | float
    N: int


def wrap_angle(a):
    """Map angles to ``[-pi, pi)``."""
    return np.mod(np.asarray(a) + np.pi, TWO_PI) - np.pi


def estimate_cfo(
    y_tilde,
    N: int = DEFAULT_N,
    zeta: float | None = None,
    interpolate: bool = False,
) -> CfoEstimate:
    """Estimate the rotation ``psi`` from ``argmax_n |Y~(e^{-j 2 pi n / N})|``.

    Pass ``zeta`` when the constellation is known; ``zeta == 0`` has no
    unique peak and triggers a warning (the argmax is still returned).
    ``interpolate`` enables parabolic refinement of the peak (off by
    default; ``peak_index`` is unaffected).
    """
    if zeta is not None and zeta == 0.0:
        warnings.warn(
            "Huffman constellation (zeta=0) has no unique unit-circle peak; CFO estimate is unreliable",
            RuntimeWarning,
            stacklevel=2,
        )
    mag = np.abs(unit_circle_dft(y_tilde, N))
    # np.argmax returns the first maximum, i.e. ties break to the smallest index
    idx = np.argmax(mag, axis=-1)
    peak = np.take_along_axis(mag, np.expand_dims(idx, -1), axis=-1)[..., 0]
    psi_hat = TWO_PI * idx / N
    if interpolate:
        left = np.take_along_axis(mag, np.expand_dims((idx - 1) % N, -1), axis=-1)[..., 0]
        right = np.take_along_axis(mag, np.expand_dims((idx + 1) % N, -1), axis=-1)[..., 0]
        denom = left - 2 * peak + right
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = np.where(denom != 0, 0.5 * (left - right) / denom, 0.0)
        psi_hat = np.mod(TWO_PI * (idx + delta) / N, TWO_PI)
    if np.ndim(idx) == 0:
        return CfoEstimate(float(psi_hat), int(idx), float(peak), N)
    return CfoEstimate(psi_hat, idx, peak, N)


def correct_cfo(y_tilde, psi_hat) -> np.ndarray:
    """Undo a rotation: ``y^_n = y~_n e^{-j psi_hat n}``."""
    y_tilde = np.asarray(y_tilde)
    n = np.arange(y_tilde.shape[-1])
    psi_hat = np.asarray(psi_hat, dtype=float)
    return y_tilde * np.exp(-1j * psi_hat[..., None] * n)
