"""Deterministic Monte Carlo engine for BER/BLER sweeps.

Every trial draws its randomness from a counter-based Philox stream keyed by
``(master_seed, point index)`` with the trial index in the counter, so any
trial can be replayed alone and sweeps do not depend on how trials are split
across workers.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from enum import Enum

import numpy as np

from .cfo import DEFAULT_N, correct_cfo, estimate_cfo, wrap_angle
from .channel import apply_cfo, noise_variance_from_ebn0
from .constellation import TWO_PI, Constellation, make_constellation
from .dizet import dizet_decode, oversampled_fractional_cfo
from .fec.acpc import acpc_decode_word, offset_vector
from .fec.bch import BCH_127_106
from .poly import bits_to_coeffs

__all__ = [
    "Scheme",
    "ChannelKind",
    "CfoMode",
    "SimConfig",
    "TrialRecord",
    "PointResult",
    "SweepResult",
    "run_trial",
    "run_trials",
    "run_sweep",
    "db_gap_at",
    "CHUNK_SIZE",
]

CHUNK_SIZE = 250


class Scheme(str, Enum):
    HUFFMAN_UNCODED = "huffman_uncoded"
    SBMOCZ_UNCODED = "sbmocz_uncoded"
    HUFFMAN_BCH = "huffman_bch"
    SBMOCZ_BCH = "sbmocz_bch"
    HUFFMAN_ACPC = "huffman_acpc"

    @property
    def coded(self) -> bool:
        return self not in (Scheme.HUFFMAN_UNCODED, Scheme.SBMOCZ_UNCODED)

    @property
    def huffman(self) -> bool:
        return self.value.startswith("huffman")


class ChannelKind(str, Enum):
    AWGN = "awgn"
    RAYLEIGH_FLAT = "rayleigh_flat"


class CfoMode(str, Enum):
    NONE = "none"
    UNIFORM_FULL_RANGE = "uniform_full_range"


@dataclass(frozen=True)
class SimConfig:
    """One error-rate curve: a scheme over a channel, swept over Eb/N0.

    ``target_block_errors=None`` disables early stopping.  ``min_trials``
    keeps the early stop from firing before that many trials have run.
    ``cfo_max`` bounds the uniform CFO draw (default the full circle).
    """

    scheme: Scheme
    channel: ChannelKind = ChannelKind.AWGN
    cfo: CfoMode = CfoMode.NONE
    K: int = 128
    zeta: float = 0.0
    lam: float = 0.5
    N: int = DEFAULT_N
    Q: int = 200
    ebn0_grid_db: tuple = ()
    max_trials: int = 10_000
    target_block_errors: int | None = 200
    min_trials: int = 0
    master_seed: int = 0
    cfo_max: float = TWO_PI

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "channel", ChannelKind(self.channel))
        object.__setattr__(self, "cfo", CfoMode(self.cfo))
        object.__setattr__(self, "ebn0_grid_db", tuple(float(v) for v in self.ebn0_grid_db))
        self.validate()

    def validate(self) -> None:
        s = self.scheme
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K: must be a positive integer, got {self.K!r}")
        if not (0.0 <= self.zeta < TWO_PI):
            raise ValueError(f"zeta: must lie in [0, 2*pi), got {self.zeta!r}")
        if not (0.0 < self.lam <= 1.0):
            raise ValueError(f"lam: must lie in (0, 1], got {self.lam!r}")
        if s.huffman and self.zeta != 0.0:
            raise ValueError(f"zeta: scheme {s.value} needs zeta = 0, got {self.zeta!r}")
        if not s.huffman and self.zeta <= 0.0:
            raise ValueError(f"zeta: scheme {s.value} needs zeta > 0")
        if s.coded and self.K != BCH_127_106.n:
            raise ValueError(f"K: coded scheme {s.value} needs K = 127, got {self.K}")
        if self.N < self.K + 1:
            raise ValueError(f"N: must be at least K+1 = {self.K + 1}, got {self.N}")
        if self.Q < 1:
            raise ValueError(f"Q: must be positive, got {self.Q}")
        if self.max_trials < 1:
            raise ValueError("max_trials: must be positive")
        if self.target_block_errors is not None and self.target_block_errors < 1:
            raise ValueError("target_block_errors: must be positive or None")
        if self.min_trials < 0:
            raise ValueError("min_trials: must be non-negative")
        if not (0.0 < self.cfo_max <= TWO_PI):
            raise ValueError("cfo_max: must lie in (0, 2*pi]")
        if not (0 <= self.master_seed < 2**64):
            raise ValueError("master_seed: must be a 64-bit unsigned integer")

    @property
    def K_info(self) -> int:
        return BCH_127_106.k if self.scheme.coded else self.K

    @property
    def label(self) -> str:
        return f"{self.scheme.value}/{self.channel.value}/{self.cfo.value}"

    def constellation(self) -> Constellation:
        return make_constellation(self.K, self.zeta, self.lam)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scheme"] = self.scheme.value
        d["channel"] = self.channel.value
        d["cfo"] = self.cfo.value
        d["ebn0_grid_db"] = list(self.ebn0_grid_db)
        return d


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    bit_errors: int
    block_error: bool
    cfo_error: float  # wrap-aware psi_hat - psi; nan when no estimate is made


@dataclass(frozen=True)
class PointResult:
    ebn0_db: float
    trials: int
    bit_errors: int
    block_errors: int
    ber: float
    bler: float
    cfo_rmse: float


@dataclass(frozen=True)
class SweepResult:
    config: SimConfig
    points: list = field(default_factory=list)

    @property
    def ebn0_db(self) -> np.ndarray:
        return np.array([p.ebn0_db for p in self.points])

    @property
    def ber(self) -> np.ndarray:
        return np.array([p.ber for p in self.points])

    @property
    def bler(self) -> np.ndarray:
        return np.array([p.bler for p in self.points])

    def rate(self, metric: str) -> np.ndarray:
        if metric not in ("ber", "bler"):
            raise ValueError(f"unknown metric {metric!r}")
        return getattr(self, metric)


def _point_key(master_seed: int, point_index: int) -> np.ndarray:
    return np.random.SeedSequence(master_seed, spawn_key=(point_index,)).generate_state(2, np.uint64)


def _trial_rng(key: np.ndarray, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=key, counter=[0, trial_index, 0, 0]))


def _draw(cfg: SimConfig, key, trial_indices) -> tuple:
    """Draw info bits, fading gains, CFO angles and unit-variance noise per trial."""
    B = len(trial_indices)
    n = cfg.K + 1
    info = np.empty((B, cfg.K_info), dtype=np.uint8)
    h = np.ones(B, dtype=complex)
    psi = np.zeros(B)
    w = np.empty((B, n), dtype=complex)
    fading = cfg.channel is ChannelKind.RAYLEIGH_FLAT
    with_cfo = cfg.cfo is CfoMode.UNIFORM_FULL_RANGE
    for i, t in enumerate(trial_indices):
        rng = _trial_rng(key, int(t))
        info[i] = rng.integers(0, 2, cfg.K_info, dtype=np.uint8)
        if fading:
            g = rng.standard_normal(2)
            h[i] = complex(g[0], g[1]) * math.sqrt(0.5)
        if with_cfo:
            psi[i] = rng.uniform(0.0, cfg.cfo_max)
        z = rng.standard_normal((n, 2)) * math.sqrt(0.5)
        w[i] = z[:, 0] + 1j * z[:, 1]
    return info, h, psi, w


def run_trials(cfg: SimConfig, point_index: int, trial_indices) -> dict:
    """Run a batch of trials at one grid point; returns per-trial arrays.

    Keys: ``bit_errors`` (int), ``block_error`` (bool), ``cfo_error`` (float,
    nan where no CFO estimate is formed).
    """
    trial_indices = np.asarray(trial_indices, dtype=np.int64)
    ebn0_db = cfg.ebn0_grid_db[point_index]
    key = _point_key(cfg.master_seed, point_index)
    info, h, psi, w = _draw(cfg, key, trial_indices)
    c = cfg.constellation()
    scheme = cfg.scheme
    with_cfo = cfg.cfo is CfoMode.UNIFORM_FULL_RANGE

    if scheme is Scheme.HUFFMAN_ACPC:
        word = BCH_127_106.encode(info) ^ offset_vector()
    elif scheme.coded:
        word = BCH_127_106.encode(info)
    else:
        word = info
    x = bits_to_coeffs(word, c)
    sigma_n2 = noise_variance_from_ebn0(ebn0_db, cfg.K_info, cfg.K + 1)
    y = h[:, None] * x + math.sqrt(sigma_n2) * w
    if with_cfo:
        y = apply_cfo(y, psi)

    cfo_error = np.full(len(trial_indices), np.nan)
    if scheme is Scheme.HUFFMAN_ACPC:
        psi0 = oversampled_fractional_cfo(y, c, cfg.Q)
        bits = dizet_decode(correct_cfo(y, psi0), c).bits
        est_info = np.empty_like(info)
        for i in range(len(bits)):
            r = acpc_decode_word(bits[i])
            est_info[i] = r.info_bits
            if with_cfo and r.decode_ok:
                cfo_error[i] = wrap_angle(psi0[i] + r.detected_shift * c.spacing - psi[i])
    else:
        if with_cfo:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                est = estimate_cfo(y, cfg.N, zeta=c.zeta)
            y = correct_cfo(y, est.psi_hat)
            cfo_error = wrap_angle(est.psi_hat - psi)
        bits = dizet_decode(y, c).bits
        if scheme.coded:
            est_info, _, _ = BCH_127_106.decode_batch(bits, t_max=BCH_127_106.t)
        else:
            est_info = bits
    bit_errors = np.count_nonzero(est_info != info, axis=-1)
    return {"bit_errors": bit_errors, "block_error": bit_errors > 0, "cfo_error": cfo_error}


def run_trial(cfg: SimConfig, ebn0_db: float, trial_index: int) -> TrialRecord:
    """Replay a single trial; ``ebn0_db`` must be a point of ``cfg.ebn0_grid_db``."""
    try:
        point_index = cfg.ebn0_grid_db.index(float(ebn0_db))
    except ValueError:
        raise ValueError(f"{ebn0_db} dB is not on the configured grid") from None
    r = run_trials(cfg, point_index, [trial_index])
    return TrialRecord(
        trial_index=int(trial_index),
        bit_errors=int(r["bit_errors"][0]),
        block_error=bool(r["block_error"][0]),
        cfo_error=float(r["cfo_error"][0]),
    )


def _chunk_job(args):
    cfg, point_index, start, stop = args
    return run_trials(cfg, point_index, np.arange(start, stop))


def _chunks(cfg: SimConfig, point_index: int, chunk_size: int):
    for start in range(0, cfg.max_trials, chunk_size):
        yield (cfg, point_index, start, min(start + chunk_size, cfg.max_trials))


def _run_point(cfg: SimConfig, point_index: int, pool, workers: int, chunk_size: int) -> PointResult:
    trials = bit_errors = block_errors = 0
    sq_errs = []
    jobs = _chunks(cfg, point_index, chunk_size)

    if pool is None:
        results = map(_chunk_job, jobs)
    else:
        results = _ordered_lookahead(pool, jobs, 2 * workers)

    done = False
    for r in results:
        be = r["bit_errors"]
        blk = r["block_error"]
        ce = r["cfo_error"]
        cum_blk = block_errors + np.cumsum(blk)
        idx = trials + np.arange(1, len(be) + 1)
        stop_here = idx >= cfg.max_trials
        if cfg.target_block_errors is not None:
            stop_here |= (cum_blk >= cfg.target_block_errors) & (idx >= cfg.min_trials)
        cut = int(np.argmax(stop_here)) + 1 if stop_here.any() else len(be)
        trials += cut
        bit_errors += int(be[:cut].sum())
        block_errors += int(blk[:cut].sum())
        ce = ce[:cut]
        sq_errs.extend((ce[~np.isnan(ce)] ** 2).tolist())
        if cut < len(be) or stop_here.any():
            done = True
            break
    if pool is not None and done:
        results.close()
    # fsum is exactly rounded, so the rmse does not depend on chunk boundaries
    rmse = math.sqrt(math.fsum(sq_errs) / len(sq_errs)) if sq_errs else math.nan
    return PointResult(
        ebn0_db=cfg.ebn0_grid_db[point_index],
        trials=trials,
        bit_errors=bit_errors,
        block_errors=block_errors,
        ber=bit_errors / (trials * cfg.K_info),
        bler=block_errors / trials,
        cfo_rmse=rmse,
    )


def _ordered_lookahead(pool, jobs, depth: int):
    """Yield pool results in submission order, keeping ``depth`` jobs in flight."""
    pending = []
    try:
        for job in jobs:
            pending.append(pool.submit(_chunk_job, job))
            if len(pending) >= depth:
                yield pending.pop(0).result()
        while pending:
            yield pending.pop(0).result()
    finally:
        for f in pending:
            f.cancel()


def run_sweep(cfg: SimConfig, workers: int = 1, chunk_size: int = CHUNK_SIZE, progress=None) -> SweepResult:
    """Run every Eb/N0 point of ``cfg``.

    Trials at a point run in index order until ``target_block_errors`` block
    errors have been seen (after at least ``min_trials``) or ``max_trials``
    is reached.  The result is identical for any ``workers`` and
    ``chunk_size``.
    """
    points = []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for i in range(len(cfg.ebn0_grid_db)):
            pr = _run_point(cfg, i, pool, workers, chunk_size)
            points.append(pr)
            if progress is not None:
                progress(cfg, pr)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return SweepResult(config=cfg, points=points)


def _crossing(x: np.ndarray, r: np.ndarray, target: float) -> float | None:
    for i in range(len(x) - 1):
        a, b = r[i], r[i + 1]
        if a >= target > b:
            if a == target:
                return float(x[i])
            if b > 0:
                la, lb, lt = math.log10(a), math.log10(b), math.log10(target)
                return float(x[i] + (x[i + 1] - x[i]) * (la - lt) / (la - lb))
            # no log-scale interpolation to a zero rate; fall back to linear
            return float(x[i] + (x[i + 1] - x[i]) * (a - target) / (a - b))
    if len(x) and r[-1] == target:
        return float(x[-1])
    return None


def db_gap_at(result_a, result_b, target_rate: float, metric: str = "ber") -> float | None:
    """Eb/N0 by which curve ``b`` trails curve ``a`` at ``target_rate``.

    Each curve's first downward crossing of the target is located by
    interpolating ``log10(rate)`` linearly in Eb/N0.  Returns ``None`` when
    either curve never crosses the target.
    """
    xa, ra = _curve(result_a, metric)
    xb, rb = _curve(result_b, metric)
    ca = _crossing(xa, ra, target_rate)
    cb = _crossing(xb, rb, target_rate)
    if ca is None or cb is None:
        return None
    return cb - ca


def _curve(result, metric):
    if hasattr(result, "rate"):
        return np.asarray(result.ebn0_db, dtype=float), np.asarray(result.rate(metric), dtype=float)
    x, r = result
    return np.asarray(x, dtype=float), np.asarray(r, dtype=float)


def with_grid(cfg: SimConfig, grid) -> SimConfig:
    return replace(cfg, ebn0_grid_db=tuple(grid))
