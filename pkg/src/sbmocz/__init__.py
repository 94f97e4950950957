"""Binary modulation on conjugate-reciprocal zeros with a smooshed constellation.

Library for Huffman BMOCZ and smooshed BMOCZ (SBMOCZ): constellation
geometry, polynomial synthesis, the DiZeT decoder, unit-circle CFO
estimation, BCH / ACPC channel coding, and a deterministic Monte Carlo
error-rate engine.
"""
from .cfo import CfoEstimate, correct_cfo, estimate_cfo
from .channel import ChannelRealization, apply_channel, decompose_cfo, draw_fading, noise_variance_from_ebn0
from .constellation import (
    Constellation,
    ConstellationParams,
    huffman_radius,
    make_constellation,
    map_bits_to_zeros,
    sbmocz_phases,
    sbmocz_radius,
    zero_separation_check,
)
from .dizet import DizetDecision, dizet_decode, oversampled_fractional_cfo
from .poly import autocorrelation, bits_to_coeffs, evaluate, unit_circle_dft, zeros_to_coeffs
from .sim import SimConfig, SweepResult, db_gap_at, run_sweep, run_trial

__version__ = "0.1.0"

__all__ = [
    "CfoEstimate",
    "correct_cfo",
    "estimate_cfo",
    "ChannelRealization",
    "apply_channel",
    "decompose_cfo",
    "draw_fading",
    "noise_variance_from_ebn0",
    "Constellation",
    "ConstellationParams",
    "huffman_radius",
    "make_constellation",
    "map_bits_to_zeros",
    "sbmocz_phases",
    "sbmocz_radius",
    "zero_separation_check",
    "DizetDecision",
    "dizet_decode",
    "oversampled_fractional_cfo",
    "autocorrelation",
    "bits_to_coeffs",
    "evaluate",
    "unit_circle_dft",
    "zeros_to_coeffs",
    "SimConfig",
    "SweepResult",
    "db_gap_at",
    "run_sweep",
    "run_trial",
]
