"""DiZeT (direct zero testing) decoder.

Bit ``k`` is decided by comparing ``|Y(R e^{j phi_k})|`` with
``R^K |Y(R^-1 e^{j phi_k})|``; the smaller weighted magnitude marks the side
of the conjugate-reciprocal pair that holds the transmitted zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constellation import TWO_PI, Constellation, sbmocz_phases
from .poly import evaluate

__all__ = [
    "DizetDecision",
    "dizet_decode",
    "dizet_margins",
    "oversampled_fractional_cfo",
    "oversampled_scores",
]


@dataclass(frozen=True)
class DizetDecision:
    bits: np.ndarray
    margins: np.ndarray


@lru_cache(maxsize=32)
def _eval_matrices(K: int, radius: float, zeta: float) -> tuple[np.ndarray, np.ndarray]:
    # columns: R^{K-n} e^{j phi n} (weighted inner) and R^n e^{j phi n} (outer)
    n = np.arange(K + 1)[:, None]
    phi = sbmocz_phases(K, zeta)[None, :]
    rot = np.exp(1j * n * np.mod(phi, TWO_PI))
    inner = rot * radius ** (K - n)
    outer = rot * radius**n
    return inner, outer


def dizet_margins(y, c: Constellation, method: str = "matrix") -> np.ndarray:
    """Signed decision metric ``R^K |Y(R^-1 e^{j phi_k})| - |Y(R e^{j phi_k})|``.

    Positive margin decodes to 1.  ``method="horner"`` evaluates each point
    with :func:`sbmocz.poly.evaluate` and is kept as a reference path.
    """
    y = np.asarray(y, dtype=complex)
    K = c.K
    if y.shape[-1] != K + 1:
        raise ValueError(f"received frame must have length {K + 1}, got {y.shape[-1]}")
    if method == "horner":
        u = np.exp(1j * np.mod(c.phases, TWO_PI))
        R = c.radius
        yb = y if y.ndim == 1 else y[..., None, :]
        inner = R**K * np.abs(evaluate(yb, u / R))
        outer = np.abs(evaluate(yb, u * R))
        return inner - outer
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    inner_m, outer_m = _eval_matrices(K, c.radius, c.zeta)
    return np.abs(y @ inner_m) - np.abs(y @ outer_m)


def dizet_decode(y, c: Constellation) -> DizetDecision:
    """Decode one frame ``(K+1,)`` or a batch ``(B, K+1)``; exact ties decode to 0."""
    margins = dizet_margins(y, c)
    bits = (margins > 0).astype(np.uint8)
    return DizetDecision(bits=bits, margins=margins)


@lru_cache(maxsize=8)
def _oversampling_kernels(K: int, Q: int) -> tuple[np.ndarray, np.ndarray]:
    L = K * Q
    n = np.arange(K + 1)
    twiddle = np.exp(2j * np.pi * np.outer(np.arange(Q), n) / L)
    # K-point inverse-DFT kernel; row n = K wraps onto row 0
    fold = np.exp(2j * np.pi * np.outer(n, np.arange(K)) / K)
    return twiddle, fold


def oversampled_scores(y, c: Constellation, Q: int, batch: int = 32) -> np.ndarray:
    """Total decision confidence ``sum_k |margin_k|`` for each de-rotation ``q dphi / Q``.

    On a Huffman grid the de-rotated test points of all ``(k, q)`` pairs form
    one uniform ``K Q``-point grid per circle.  Point ``Q k' + r`` is a
    ``K``-point transform of the coefficients twiddled by ``r / (K Q)``, and
    offset ``q`` reads row ``r = -q mod Q`` in full.  Returns shape ``(..., Q)``.
    """
    if not c.is_huffman:
        raise ValueError("oversampled DiZeT needs a uniform (Huffman) phase grid")
    if Q < 1:
        raise ValueError("Q must be positive")
    y = np.asarray(y, dtype=complex)
    K = c.K
    if y.shape[-1] != K + 1:
        raise ValueError(f"received frame must have length {K + 1}, got {y.shape[-1]}")
    R = c.radius
    n = np.arange(K + 1)
    twiddle, fold = _oversampling_kernels(K, Q)
    base = y.reshape(-1, K + 1) * np.exp(1j * c.phases[0] * n)
    weights = np.stack([R ** (K - n), R**n])
    out = np.empty((base.shape[0], Q))
    for lo in range(0, base.shape[0], batch):
        b = base[lo : lo + batch, None, :] * weights  # (B, 2, K+1)
        v = np.abs((b[:, :, None, :] * twiddle) @ fold)  # (B, 2, Q, K)
        out[lo : lo + batch] = np.abs(v[:, 0] - v[:, 1]).sum(axis=-1)
    rows = (-np.arange(Q)) % Q
    return out[:, rows].reshape(y.shape[:-1] + (Q,))


def _oversampled_scores_direct(y, c: Constellation, Q: int) -> np.ndarray:
    # reference path: de-rotate and run the plain decoder for every q
    from .cfo import correct_cfo

    steps = np.arange(Q) * (c.spacing / Q)
    y = np.asarray(y, dtype=complex)
    derot = correct_cfo(np.broadcast_to(y[..., None, :], y.shape[:-1] + (Q, y.shape[-1])), steps)
    return np.abs(dizet_margins(derot, c)).sum(axis=-1)


def oversampled_fractional_cfo(y, c: Constellation, Q: int = 200) -> np.ndarray | float:
    """Estimate the fractional CFO ``psi0 in [0, 2pi/K)`` on a ``Q``-point grid.

    The candidate de-rotation with the largest total DiZeT margin wins;
    ties go to the smaller offset.
    """
    scores = oversampled_scores(y, c, Q)
    q = np.argmax(scores, axis=-1)
    est = q * (c.spacing / Q)
    return float(est) if np.ndim(est) == 0 else est
