"""Inequality catalog, envelope thresholds, the 2/e scan and related checks."""

from .catalog import BOUND_IDS, CATALOG, BoundSpec, DomainError, dominance_check, verify_bound
from .envelopes import EnvelopeError, ThresholdReport, envelope_E, envelope_e, envelopes, solve_thresholds
from .extras import H2Probe, c_ladder, h2_probe, lemma1_check, theorem6_check
from .scan import ScanRecord, decay_fit, envelope_consistency, fast_path_bound, krzyz_scan, scan_one

__all__ = [
    "BOUND_IDS", "CATALOG", "BoundSpec", "DomainError", "dominance_check", "verify_bound",
    "EnvelopeError", "ThresholdReport", "envelope_E", "envelope_e", "envelopes", "solve_thresholds",
    "H2Probe", "c_ladder", "h2_probe", "lemma1_check", "theorem6_check",
    "ScanRecord", "decay_fit", "envelope_consistency", "fast_path_bound", "krzyz_scan", "scan_one",
]
