"""
Systematic discovery of plane-partition congruences.

enumerate_and_verify walks every canonical statement for one prime whose sides
hold at most a few residues and keeps the ones the finite check proves.
zero_scan looks for a nonvanishing value pl_ell(n*ell + alpha) mod ell in each
residue class, which refutes the "== 0" congruence for that class.
"""

import logging
import multiprocessing
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np
from sympy import isprime, primerange
from tqdm import tqdm

import config
from modules.congruence import VERDICT_PROVED, canonicalize, verify_bounded
from modules.errors import PlaneCongError
from modules.partitions import pl_series

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters shared by the search and scan entry points; scan_horizon None means SCAN_HORIZON_FACTOR * ell."""

    prime: int = None
    max_terms_per_side: int = 1
    scan_prime_limit: int = config.DEFAULT_SCAN_PRIME_LIMIT
    scan_horizon: int = None
    worker_count: int = config.DEFAULT_WORKER_COUNT

    def __post_init__(self):
        if self.max_terms_per_side < 1:
            raise PlaneCongError(
                f"max_terms_per_side must be at least 1, got {self.max_terms_per_side}"
            )
        if self.scan_horizon is not None and self.scan_horizon < 1:
            raise PlaneCongError(f"scan_horizon must be at least 1, got {self.scan_horizon}")
        if self.worker_count < 1:
            raise PlaneCongError(f"worker_count must be at least 1, got {self.worker_count}")

    def horizon_for(self, ell):
        if self.scan_horizon is not None:
            return self.scan_horizon
        return config.SCAN_HORIZON_FACTOR * ell

    def to_dict(self):
        return {
            "prime": self.prime,
            "max_terms_per_side": self.max_terms_per_side,
            "scan_prime_limit": self.scan_prime_limit,
            "scan_horizon": self.scan_horizon,
            "worker_count": self.worker_count,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(**{key: data.get(key) for key in (
            "prime", "max_terms_per_side", "scan_prime_limit", "scan_horizon", "worker_count",
        )})


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    results: tuple
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self):
        return True


@dataclass(frozen=True)
class ScanRow:
    prime: int
    alpha: int
    witness: int = None  # least n with pl_ell(n*ell + alpha) != 0 (mod ell); None if none found


@dataclass(frozen=True)
class ScanResult:
    config: SearchConfig
    rows: tuple
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self):
        # a vanishing class is a finding, not a failure
        return True


def sides(ell, max_terms):
    """Every multiset of residues in [0, ell) with at most max_terms elements, smallest first."""
    out = []
    for size in range(max_terms + 1):
        out.extend(combinations_with_replacement(range(ell), size))
    return out


def candidate_statements(ell, max_terms):
    """
    Canonical, non-trivial statements with k = m = stride = ell and both sides
    of size at most max_terms, sorted and free of duplicates.
    """
    if not isprime(ell):
        raise PlaneCongError(f"search needs a prime, got {ell}")
    pool = sides(ell, max_terms)
    seen = set()
    for lhs in pool:
        for rhs in pool:
            st = canonicalize(ell, ell, lhs, rhs)
            if st.lhs and not st.is_trivial():
                seen.add(st)
    return sorted(seen, key=lambda st: st.sort_key())


def _progress(iterable, total, desc):
    return tqdm(iterable, total=total, desc=desc, disable=not config.SHOW_PROGRESS, leave=False)


def _run(worker, items, workers, desc):
    """Map `worker` over `items` in order, on a process pool when workers > 1."""
    if workers > 1 and len(items) > 1:
        with multiprocessing.Pool(min(workers, len(items))) as pool:
            return list(_progress(pool.imap(worker, items), len(items), desc))
    return [worker(item) for item in _progress(items, len(items), desc)]


def enumerate_and_verify(cfg):
    """
    Prove every candidate statement the finite check can prove.

    Args:
        cfg (SearchConfig): prime, side bound and worker count are used

    Returns:
        SearchResult: Proved reports sorted by canonical form

    Raises:
        PlaneCongError: If cfg.prime is missing or not prime
    """
    if cfg.prime is None or not isprime(cfg.prime):
        raise PlaneCongError(f"search needs a prime, got {cfg.prime}")
    start = time.perf_counter()
    statements = candidate_statements(cfg.prime, cfg.max_terms_per_side)
    logger.info("checking %d candidate statements for ell=%d", len(statements), cfg.prime)
    reports = _run(verify_bounded, statements, cfg.worker_count, f"search ell={cfg.prime}")

    unique = {}
    for report in reports:
        if report.verdict == VERDICT_PROVED:
            unique.setdefault(report.statement, report)
    results = tuple(sorted(unique.values(), key=lambda r: r.statement.sort_key()))
    elapsed = (time.perf_counter() - start) * 1000
    logger.info("ell=%d: %d of %d statements proved in %.1f ms",
                cfg.prime, len(results), len(statements), elapsed)
    return SearchResult(cfg, results, elapsed)


def _scan_prime(task):
    ell, horizon = task
    series = pl_series(ell, ell, ell * (horizon + 1))
    rows = []
    for alpha in range(ell):
        nonzero = np.flatnonzero(series.coeffs[alpha::ell][:horizon + 1])
        witness = int(nonzero[0]) if nonzero.size else None
        rows.append(ScanRow(ell, alpha, witness))
    return rows


def zero_scan(cfg):
    """
    For each prime ell <= cfg.scan_prime_limit and each alpha in [0, ell),
    find the least n <= horizon with pl_ell(n*ell + alpha) != 0 (mod ell).

    Returns:
        ScanResult: One row per (ell, alpha), ordered by ell then alpha
    """
    if cfg.scan_prime_limit < 2:
        raise PlaneCongError(f"scan_prime_limit must be at least 2, got {cfg.scan_prime_limit}")
    start = time.perf_counter()
    tasks = [(ell, cfg.horizon_for(ell)) for ell in primerange(2, cfg.scan_prime_limit + 1)]
    per_prime = _run(_scan_prime, tasks, cfg.worker_count, "zero scan")
    rows = tuple(row for rows in per_prime for row in rows)
    elapsed = (time.perf_counter() - start) * 1000
    logger.info("zero scan over %d primes finished in %.1f ms", len(tasks), elapsed)
    zero_scan_discrepancies(rows)
    return ScanResult(cfg, rows, elapsed)


def zero_scan_discrepancies(rows):
    """
    Residue classes where every examined value vanished.

    The published numerical claim is that no such class exists for ell <= 113,
    yet pl_3(3n+2) == 0 (mod 3) is a theorem, so at least (3, 2) always shows up.
    """
    missing = [(row.prime, row.alpha) for row in rows if row.witness is None]
    if missing:
        logger.warning(
            "no nonvanishing value found for %s; the claim that every class has one "
            "does not hold for these", ", ".join(f"(ell={p}, alpha={a})" for p, a in missing),
        )
    return missing
