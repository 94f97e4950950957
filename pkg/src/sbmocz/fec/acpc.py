"""Affine cyclically permutable code (ACPC) baseline for Huffman BMOCZ under CFO.

Construction: transmitted word ``t = c + a`` where ``c`` is a (127,106) BCH
codeword and the offset ``a`` is the generator of the 2-error-correcting
(127,113) BCH supercode.  Every cyclic shift of ``t`` lies in the supercode,
so up to two bit errors are corrected there.  The shift is then read off
the fifth syndrome: ``S5(roll(t, -m)) = beta^{-5m} S5(a)`` and since 127 is
prime the map ``m -> beta^{-5m}`` is one-to-one on ``[127]``.

A zero rotation of ``m`` steps makes DiZeT bit ``k`` carry transmitted bit
``k + m``, i.e. the detected word is ``np.roll(t, -m)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf
from .bch import BCH_127_106, BchCode, berlekamp_massey, chien_search, syndromes

__all__ = [
    "AcpcResult",
    "offset_vector",
    "acpc_encode",
    "acpc_decode_word",
    "acpc_decode_word_search",
    "acpc_decode",
]

N = gf.ORDER
T_ACPC = 2
_INV5 = pow(5, -1, N)
_SUPERCODE = BchCode(t=T_ACPC)


@dataclass(frozen=True)
class AcpcResult:
    info_bits: np.ndarray
    detected_shift: int
    decode_ok: bool
    error_count: int = -1
    psi0_hat: float = 0.0


@lru_cache(maxsize=1)
def offset_vector() -> np.ndarray:
    """Public offset ``a``: the (127,113) generator polynomial padded to length 127."""
    a = np.zeros(N, dtype=np.uint8)
    g = _SUPERCODE.generator
    a[: len(g)] = g
    a.setflags(write=False)
    return a


@lru_cache(maxsize=1)
def _offset_s5() -> int:
    s5 = int(syndromes(offset_vector(), 5)[4])
    if s5 == 0:
        raise ArithmeticError("offset vector lies in the (127,106) code")
    return s5


def acpc_encode(info) -> np.ndarray:
    """BCH(127,106) codeword plus the public offset."""
    return BCH_127_106.encode(info) ^ offset_vector()


def _fallback(word) -> AcpcResult:
    raw = (np.asarray(word, dtype=np.uint8) ^ offset_vector())
    return AcpcResult(BCH_127_106.extract_info(raw).copy(), 0, False)


def acpc_decode_word(word) -> AcpcResult:
    """Recover information bits and cyclic shift from a rotated, noisy word."""
    word = np.asarray(word, dtype=np.uint8)
    S = syndromes(word, 5)
    n_err = 0
    fixed = word
    if S[:4].any():
        sigma = berlekamp_massey(S[:4])
        L = len(sigma) - 1
        if L == 0 or L > T_ACPC:
            return _fallback(word)
        pos = chien_search(sigma)
        if len(pos) != L:
            return _fallback(word)
        fixed = word.copy()
        fixed[pos] ^= 1
        S = syndromes(fixed, 5)
        if S[:4].any():
            return _fallback(word)
        n_err = L
    s5 = int(S[4])
    if s5 == 0:
        return _fallback(word)
    # S5(fixed) = beta^{-5m} S5(a)
    m = ((int(gf.LOG[_offset_s5()]) - int(gf.LOG[s5])) * _INV5) % N
    t = np.roll(fixed, m)
    c = t ^ offset_vector()
    return AcpcResult(BCH_127_106.extract_info(c).copy(), int(m), True, n_err)


def acpc_decode_word_search(word) -> AcpcResult:
    """Reference decoder: try all 127 shifts with a 2-error BCH(127,106) decode.

    Ties go to the fewest corrected errors, then the smallest shift.
    """
    word = np.asarray(word, dtype=np.uint8)
    best = None
    for s in range(N):
        cand = np.roll(word, s) ^ offset_vector()
        r = BCH_127_106.decode(cand, t_max=T_ACPC)
        if r.ok and (best is None or r.error_count < best.error_count):
            best = AcpcResult(r.info, s, True, r.error_count)
    return best if best is not None else _fallback(word)


def acpc_decode(y_tilde, c, Q: int = 200) -> AcpcResult:
    """Full receiver: oversampled fractional CFO, de-rotation, DiZeT, ACPC decode."""
    from ..cfo import correct_cfo
    from ..dizet import dizet_decode, oversampled_fractional_cfo

    if not c.is_huffman or c.K != N:
        raise ValueError("ACPC needs a Huffman constellation with K = 127")
    psi0 = oversampled_fractional_cfo(y_tilde, c, Q)
    bits = dizet_decode(correct_cfo(y_tilde, psi0), c).bits
    r = acpc_decode_word(bits)
    return AcpcResult(r.info_bits, r.detected_shift, r.decode_ok, r.error_count, float(psi0))
