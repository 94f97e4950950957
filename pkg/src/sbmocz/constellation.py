"""Zero-constellation geometry for Huffman BMOCZ and smooshed BMOCZ (SBMOCZ).

A constellation places ``K`` conjugate-reciprocal zero pairs at a common
radius ``r > 1`` and phases ``phi_k``.  Bit ``k`` selects the outer zero
``r e^{j phi_k}`` (bit 1) or the inner zero ``r^-1 e^{j phi_k}`` (bit 0).

The smooshed layout compresses the spacing between adjacent zeros to
``(2 pi - zeta) / K`` and centres the resulting gap on the positive real
axis.  With ``zeta = 0`` it is Huffman BMOCZ rotated by ``pi / K``; this
package uses that rotated layout for every Huffman scheme.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ConstellationParams",
    "Constellation",
    "huffman_radius",
    "sbmocz_radius",
    "sbmocz_phases",
    "map_bits_to_zeros",
    "zero_separation_check",
    "make_constellation",
]

TWO_PI = 2.0 * math.pi

# zeta above this fraction of 2 pi draws a warning: large gaps perturb zeros badly
_ZETA_WARN_FRACTION = 0.5


def _check_k_lambda(K: int, lam: float) -> None:
    if int(K) != K or K < 1:
        raise ValueError(f"K must be a positive integer, got {K!r}")
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")


def _check_zeta(zeta: float) -> None:
    if not (0.0 <= zeta < TWO_PI):
        raise ValueError(f"zeta must lie in [0, 2*pi), got {zeta!r}")
    if zeta > _ZETA_WARN_FRACTION * TWO_PI:
        warnings.warn(
            f"zeta={zeta:.4g} is very large; zeros will be strongly perturbed by noise",
            RuntimeWarning,
            stacklevel=3,
        )


def huffman_radius(K: int, lam: float) -> float:
    """Huffman BMOCZ radius ``sqrt(1 + 2 lam sin(pi/K))``."""
    _check_k_lambda(K, lam)
    return math.sqrt(1.0 + 2.0 * lam * math.sin(math.pi / K))


def sbmocz_radius(K: int, lam: float, zeta: float) -> float:
    """SBMOCZ radius ``sqrt(1 + 2 lam sin((2 pi - zeta) / (2K)))``.

    Chosen so that the radial gap ``r - 1/r`` of a conjugate-reciprocal
    pair equals ``lam`` times the chord between adjacent inner zeros.
    """
    _check_k_lambda(K, lam)
    _check_zeta(zeta)
    return math.sqrt(1.0 + 2.0 * lam * math.sin((TWO_PI - zeta) / (2 * K)))


def sbmocz_phases(K: int, zeta: float) -> np.ndarray:
    """Zero phases ``(2pi - zeta) k / K + (2pi + zeta (K-1)) / (2K)``.

    The returned phases are *not* reduced modulo 2 pi; they are strictly
    increasing with constant spacing, and ``phi_0 + phi_{K-1} == 2 pi``.
    """
    if int(K) != K or K < 1:
        raise ValueError(f"K must be a positive integer, got {K!r}")
    _check_zeta(zeta)
    k = np.arange(K, dtype=float)
    return (TWO_PI - zeta) * k / K + (TWO_PI + zeta * (K - 1)) / (2 * K)


@dataclass(frozen=True)
class ConstellationParams:
    K: int
    zeta: float = 0.0
    lam: float = 0.5

    def __post_init__(self):
        _check_k_lambda(self.K, self.lam)
        if not (0.0 <= self.zeta < TWO_PI):
            raise ValueError(f"zeta must lie in [0, 2*pi), got {self.zeta!r}")


@dataclass(frozen=True)
class Constellation:
    """Uniform-radius zero constellation.

    ``phases`` are stored unreduced; use :meth:`outer_zeros` /
    :meth:`inner_zeros` for the materialised complex positions.
    """

    params: ConstellationParams
    radius: float
    phases: np.ndarray = field(repr=False)

    @property
    def K(self) -> int:
        return self.params.K

    @property
    def zeta(self) -> float:
        return self.params.zeta

    @property
    def is_huffman(self) -> bool:
        return self.params.zeta == 0.0

    @property
    def spacing(self) -> float:
        """Phase step between adjacent zeros."""
        return (TWO_PI - self.params.zeta) / self.params.K

    def outer_zeros(self) -> np.ndarray:
        return self.radius * np.exp(1j * np.mod(self.phases, TWO_PI))

    def inner_zeros(self) -> np.ndarray:
        return np.exp(1j * np.mod(self.phases, TWO_PI)) / self.radius


def make_constellation(K: int, zeta: float = 0.0, lam: float = 0.5) -> Constellation:
    """Build an SBMOCZ constellation; ``zeta=0`` gives (rotated) Huffman BMOCZ."""
    params = ConstellationParams(K=K, zeta=zeta, lam=lam)
    radius = sbmocz_radius(K, lam, zeta)
    if radius - 1.0 / radius < 1e-12:
        raise ValueError(f"K={K}, zeta={zeta!r} puts both zeros of a pair on the unit circle")
    phases = sbmocz_phases(K, zeta)
    phases.setflags(write=False)
    return Constellation(params=params, radius=radius, phases=phases)


def map_bits_to_zeros(bits, c: Constellation) -> np.ndarray:
    """Map message bits to zeros; works on a single message or a batch ``(B, K)``."""
    bits = np.asarray(bits)
    if bits.shape[-1] != c.K:
        raise ValueError(f"expected {c.K} bits per message, got {bits.shape[-1]}")
    mag = np.where(bits.astype(bool), c.radius, 1.0 / c.radius)
    return mag * np.exp(1j * np.mod(c.phases, TWO_PI))


def zero_separation_check(c: Constellation) -> tuple[float, float]:
    """Return ``(d_cp, d_az)``: radial pair separation and inner-circle chord.

    For a radius built by :func:`sbmocz_radius`, ``d_cp == lam * d_az``.
    """
    r = c.radius
    d_cp = r - 1.0 / r
    d_az = 2.0 / r * math.sin((TWO_PI - c.zeta) / (2 * c.K))
    return d_cp, d_az
