"""Binary narrow-sense BCH codes of length 127 over GF(2^7).

Codewords are stored as bit arrays indexed by polynomial degree.  Encoding
is systematic: parity occupies degrees ``0 .. n-k-1`` and the information
bits degrees ``n-k .. n-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gf

__all__ = ["BchCode", "BchDecodeResult", "BCH_127_106", "bch_encode", "bch_decode", "syndromes"]

N = gf.ORDER


def _polymul2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (np.convolve(a.astype(np.int64), b.astype(np.int64)) % 2).astype(np.uint8)


def _polymod2(a: np.ndarray, g: np.ndarray) -> np.ndarray:
    r = a.astype(np.uint8).copy()
    dg = len(g) - 1
    for i in range(len(r) - 1, dg - 1, -1):
        if r[i]:
            r[i - dg : i + 1] ^= g
    return r[:dg]


# S_i = sum_j c_j beta^{i j}; row i-1 holds beta^{i j} for j in [n]
_MAX_SYNDROMES = 8
_POWS = gf.EXP[(np.arange(1, _MAX_SYNDROMES + 1)[:, None] * np.arange(N)[None, :]) % N]


def syndromes(word, count: int) -> np.ndarray:
    """Syndromes ``S_1 .. S_count`` of a word (or batch of words) of length 127."""
    word = np.asarray(word)
    if word.shape[-1] != N:
        raise ValueError(f"word length must be {N}")
    terms = np.where(word[..., None, :].astype(bool), _POWS[:count], 0)
    return np.bitwise_xor.reduce(terms, axis=-1)


def berlekamp_massey(S) -> list[int]:
    """Error-locator polynomial (ascending, ``sigma_0 = 1``) from syndromes ``S_1 .. S_2t``."""
    C = [1]
    B = [1]
    L = 0
    m = 1
    b = 1
    for n in range(len(S)):
        d = int(S[n])
        for i in range(1, L + 1):
            if i < len(C):
                d ^= gf.mul(C[i], int(S[n - i]))
        if d == 0:
            m += 1
            continue
        coef = gf.div(d, b)
        T = list(C)
        shifted = [0] * m + [gf.mul(coef, v) for v in B]
        if len(shifted) > len(C):
            C = C + [0] * (len(shifted) - len(C))
        for i, v in enumerate(shifted):
            C[i] ^= v
        if 2 * L <= n:
            L = n + 1 - L
            B = T
            b = d
            m = 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C


def chien_search(sigma) -> np.ndarray:
    """Positions ``j`` with ``sigma(beta^-j) == 0``."""
    x = gf.EXP[(-np.arange(N)) % N]
    acc = np.zeros(N, dtype=np.int64)
    for coef in reversed(sigma):
        acc = gf.vmul(acc, x) ^ coef
    return np.flatnonzero(acc == 0)


@dataclass(frozen=True)
class BchDecodeResult:
    info: np.ndarray
    codeword: np.ndarray
    error_count: int
    ok: bool


@dataclass(frozen=True)
class BchCode:
    """Narrow-sense binary BCH code of length 127 with designed distance ``2t + 1``."""

    t: int = 3

    n: int = N

    @cached_property
    def generator(self) -> np.ndarray:
        g = np.array([1], dtype=np.uint8)
        seen = set()
        for i in range(1, 2 * self.t + 1, 2):
            mp = gf.minimal_polynomial(i)
            key = mp.tobytes()
            if key not in seen:
                seen.add(key)
                g = _polymul2(g, mp)
        return g

    @property
    def k(self) -> int:
        return self.n - (len(self.generator) - 1)

    @property
    def n_parity(self) -> int:
        return self.n - self.k

    @cached_property
    def _parity_matrix(self) -> np.ndarray:
        r = self.n_parity
        P = np.zeros((self.k, r), dtype=np.uint8)
        for i in range(self.k):
            e = np.zeros(r + i + 1, dtype=np.uint8)
            e[r + i] = 1
            P[i] = _polymod2(e, self.generator)
        return P

    def encode(self, info) -> np.ndarray:
        """Systematic encoding of one message ``(k,)`` or a batch ``(B, k)``."""
        info = np.asarray(info, dtype=np.uint8)
        if info.shape[-1] != self.k:
            raise ValueError(f"expected {self.k} information bits, got {info.shape[-1]}")
        parity = (info.astype(np.int64) @ self._parity_matrix) % 2
        return np.concatenate([parity.astype(np.uint8), info], axis=-1)

    def extract_info(self, word) -> np.ndarray:
        return np.asarray(word)[..., self.n_parity :]

    def decode(self, word, t_max: int | None = None) -> BchDecodeResult:
        """Bounded-distance decoding (Berlekamp-Massey + Chien search).

        Corrects up to ``t_max`` errors (default ``t``).  A decode failure is
        reported with ``ok=False``; the returned info bits are then the raw
        systematic positions of ``word``.
        """
        t_max = self.t if t_max is None else t_max
        if not 0 <= t_max <= self.t:
            raise ValueError(f"t_max must be in [0, {self.t}]")
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.n,):
            raise ValueError(f"word must have shape ({self.n},)")
        S = syndromes(word, 2 * self.t)
        return self._decode_from_syndromes(word, S, t_max)

    def _decode_from_syndromes(self, word, S, t_max) -> BchDecodeResult:
        fail = BchDecodeResult(self.extract_info(word).copy(), word.copy(), -1, False)
        if not S.any():
            return BchDecodeResult(self.extract_info(word).copy(), word.copy(), 0, True)
        sigma = berlekamp_massey(S)
        L = len(sigma) - 1
        if L == 0 or L > t_max:
            return fail
        pos = chien_search(sigma)
        if len(pos) != L:
            return fail
        fixed = word.copy()
        fixed[pos] ^= 1
        if syndromes(fixed, 2 * self.t).any():
            return fail
        return BchDecodeResult(self.extract_info(fixed).copy(), fixed, L, True)

    def decode_batch(self, words, t_max: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Decode rows of ``words``; returns ``(info, error_count, ok)`` arrays."""
        t_max = self.t if t_max is None else t_max
        words = np.asarray(words, dtype=np.uint8)
        S = syndromes(words, 2 * self.t)
        info = self.extract_info(words).copy()
        count = np.zeros(len(words), dtype=np.int64)
        ok = np.ones(len(words), dtype=bool)
        for i in np.flatnonzero(S.any(axis=-1)):
            r = self._decode_from_syndromes(words[i], S[i], t_max)
            info[i] = r.info
            count[i] = r.error_count
            ok[i] = r.ok
        return info, count, ok


BCH_127_106 = BchCode(t=3)


def bch_encode(info) -> np.ndarray:
    """(127,106) BCH systematic encoder."""
    return BCH_127_106.encode(info)


def bch_decode(word, t_max: int = 3) -> BchDecodeResult:
    """(127,106) BCH decoder correcting up to ``t_max`` errors."""
    return BCH_127_106.decode(word, t_max=t_max)
