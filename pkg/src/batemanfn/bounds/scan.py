"""The max |F_n| <= 2/e scan with an optional shortcut through the largest critical point."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from ..analysis import extrema, largest_critical_point
from ..exactpoly import DEFAULT_BITS, Enclosure, e_over_sqrt2, sqrt_enclosure, two_over_e
from ..reports import enc_json


@dataclass
class ScanRecord:
    n: int
    T_n_star: Enclosure
    max_abs: Enclosure
    margin: Enclosure  # 2/e - max_abs
    method: str  # "fast_path" or "full"

    @property
    def passed(self) -> bool:
        if self.n == 1:
            return self.margin.contains(0)
        return self.margin.lo > 0

    @property
    def equality(self) -> bool:
        return self.margin.contains(0)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "T_n_star": enc_json(self.T_n_star),
            "max_abs": enc_json(self.max_abs),
            "margin": enc_json(self.margin),
            "method": self.method,
            "passed": self.passed,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ScanRecord":
        def enc(x):
            return Enclosure(Fraction(x["lo"]), Fraction(x["hi"]))

        return cls(d["n"], enc(d["T_n_star"]), enc(d["max_abs"]), enc(d["margin"]), d["method"])


def fast_path_bound(n: int, T_star: Enclosure, bits: int = DEFAULT_BITS) -> Optional[Enclosure]:
    """[0, sqrt(2) n / T*] when T*/n >= e/sqrt(2) is certified, else None."""
    if not T_star.lo / n >= e_over_sqrt2(bits).hi:
        return None
    ub = (sqrt_enclosure(2, bits) * n / T_star.lo).hi
    return Enclosure(0, ub)


def scan_one(n: int, use_fast_path: bool = False, bits: int = DEFAULT_BITS) -> ScanRecord:
    """Certificate for max_t |F_n(t)| against 2/e."""
    c = two_over_e(bits)
    if use_fast_path and n >= 2:
        T = largest_critical_point(n)
        bound = fast_path_bound(n, T, bits)
        if bound is not None and bound.hi < c.lo:
            return ScanRecord(n, T, bound, c - bound, "fast_path")
    ext = extrema(n, bits=bits)
    return ScanRecord(n, ext.T_n_star, ext.max_abs, c - ext.max_abs, "full")


def _scan_one_args(args) -> ScanRecord:
    return scan_one(*args)


def default_jobs() -> int:
    return max(1, int(os.environ.get("BATEMAN_JOBS", "1")))


def iter_scan(ns: Iterable[int], use_fast_path: bool = False, jobs: Optional[int] = None) -> Iterator[ScanRecord]:
    """Records in the order of ns, computed on ``jobs`` worker processes."""
    ns = list(ns)
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1:
        for n in ns:
            yield scan_one(n, use_fast_path)
        return
    with ProcessPoolExecutor(jobs) as pool:
        yield from pool.map(_scan_one_args, [(n, use_fast_path) for n in ns], chunksize=1)


def krzyz_scan(
    N: int,
    use_fast_path: bool = False,
    jobs: Optional[int] = None,
    start: int = 1,
    on_record: Optional[Callable[[ScanRecord], None]] = None,
) -> list[ScanRecord]:
    """Scan n = start..N.  Every n gets a record; callers inspect ``passed``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    out = []
    for rec in iter_scan(range(start, N + 1), use_fast_path, jobs):
        if on_record is not None:
            on_record(rec)
        out.append(rec)
    return out


def envelope_consistency(records: Iterable[ScanRecord]) -> list[tuple[int, bool]]:
    """max_abs(n) < E(n) for every record with n >= 33."""
    from .envelopes import envelope_E

    return [(r.n, r.max_abs.certainly_lt(envelope_E(r.n))) for r in records if r.n >= 33]


def decay_fit(records: Iterable[ScanRecord], exponent: Fraction = Fraction(1, 12)) -> float:
    """Smallest c with max_abs(n) <= c n^(-exponent) over the records (data, not a claim)."""
    return max(float(r.max_abs.hi) * r.n ** float(exponent) for r in records)
