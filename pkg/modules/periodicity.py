"""
Periodicity of restricted-partition series modulo prime powers.

Closed-form minimal periods (Kwong) for p(n; S) mod ell^N, the F_ell special
case, and an empirical detector that checks a claimed period against a
computed window and returns the least divisor that is also a period.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from sympy import divisors, isprime

from modules.errors import PeriodError, PlaneCongError
from modules.partitions import ColoredPartMultiset, s_k_multiset

logger = logging.getLogger(__name__)


def _require_prime(ell):
    if not isprime(ell):
        raise PlaneCongError(f"{ell} is not prime")


def _require_nonempty(S):
    if S.is_empty():
        raise PlaneCongError("the multiset S must be nonempty")


@dataclass(frozen=True)
class PeriodCertificate:
    """Record of the closed-form period of p(n; S) modulo prime ** exponent."""

    prime: int
    exponent: int
    multiset: ColoredPartMultiset
    m_of_s: int
    b_of_s: int
    period: int

    @property
    def closed_form_is_minimal(self):
        # a single copy gives 0/1 coefficients, whose period does not grow with N
        return self.exponent == 1 or self.multiset.copies >= 2

    @property
    def passed(self):
        return True

    def to_dict(self):
        return {
            "prime": self.prime,
            "exponent": self.exponent,
            "parts": [[part, colors] for part, colors in self.multiset.entries],
            "m_of_s": self.m_of_s,
            "b_of_s": self.b_of_s,
            "period": self.period,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            prime=int(data["prime"]),
            exponent=int(data["exponent"]),
            multiset=ColoredPartMultiset(tuple(tuple(e) for e in data["parts"])),
            m_of_s=int(data["m_of_s"]),
            b_of_s=int(data["b_of_s"]),
            period=int(data["period"]),
        )


def ell_valuation(ell, n):
    """
    Split n as ell**exponent * free_part with ell not dividing free_part.

    Returns:
        tuple: (exponent, free_part)
    """
    if n < 1:
        raise PlaneCongError(f"valuation needs n >= 1, got {n}")
    exponent = 0
    while n % ell == 0:
        n //= ell
        exponent += 1
    return exponent, n


def m_of_set(ell, S):
    """ell-free part of lcm of the distinct parts of S; colors do not matter."""
    _require_nonempty(S)
    return ell_valuation(ell, math.lcm(*S.parts))[1]


def b_of_set(ell, S):
    """Least b >= 0 with ell**b >= sum of ell**ord(n) over every colored copy n in S."""
    _require_nonempty(S)
    total = sum(colors * ell ** ell_valuation(ell, part)[0] for part, colors in S.entries)
    b = 0
    while ell**b < total:
        b += 1
    return b


def kwong_period(ell, N, S):
    """
    Closed-form minimal period of sum p(n; S) q^n modulo ell**N.

    Args:
        ell (int): Prime
        N (int): Exponent of the modulus, >= 1
        S (ColoredPartMultiset): Nonempty multiset of parts

    Returns:
        PeriodCertificate: With period ell**(N + b(S) - 1) * m(S)
    """
    _require_prime(ell)
    if N < 1:
        raise PlaneCongError(f"exponent N must be at least 1, got {N}")
    m = m_of_set(ell, S)
    b = b_of_set(ell, S)
    return PeriodCertificate(ell, N, S, m, b, ell ** (N + b - 1) * m)


def f_ell_period(ell, N):
    """Minimal period of F_ell modulo ell**N, by the three-case closed form."""
    _require_prime(ell)
    if N < 1:
        raise PlaneCongError(f"exponent N must be at least 1, got {N}")
    if ell == 2:
        return 2 ** (N - 1)
    if ell == 3:
        return 2 * 3**N
    return ell ** (N + 1) * math.lcm(*range(1, ell))


def f_k_period(ell, N, k):
    """Certificate for F_k modulo ell**N, any k >= 2."""
    if k < 2:
        raise PlaneCongError(f"F_k has a nonempty part multiset only for k >= 2, got {k}")
    return kwong_period(ell, N, s_k_multiset(k))


def _is_period(coeffs, d):
    return bool(np.array_equal(coeffs[d:], coeffs[:-d]))


def detect_min_period(s, claimed):
    """
    Confirm that `claimed` is a period of s over its window, then return the
    least divisor of `claimed` that is a period too.

    The series is assumed purely periodic from index 0. Minimality is only
    certified over the computed window.

    Raises:
        PeriodError: If the window is shorter than 2 * claimed, or `claimed`
            is not a period
    """
    if claimed < 1:
        raise PeriodError(f"claimed period must be positive, got {claimed}")
    if s.order < 2 * claimed:
        raise PeriodError(
            f"series order {s.order} is too short to test period {claimed} (need {2 * claimed})"
        )
    coeffs = s.coeffs
    if not _is_period(coeffs, claimed):
        mismatch = int(np.flatnonzero(coeffs[claimed:] != coeffs[:-claimed])[0])
        raise PeriodError(
            f"{claimed} is not a period: coefficient {mismatch + claimed} differs from {mismatch}"
        )
    for d in divisors(claimed):
        if d == claimed or _is_period(coeffs, d):
            logger.debug("minimal period %d (claimed %d, window %d)", d, claimed, s.order)
            return int(d)
    return claimed
