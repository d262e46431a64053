"""
Congruence statements for plane-partition counts and their verification.

A statement claims
    sum_i pl_k(stride*n + a_i) == sum_j pl_k(stride*n + b_j)  (mod m)  for all n >= 0.

Verification paths:
    theorem-bound   finite check of the plane-partition values for n < B,
                    B = max(1, ceil(pi_ell(F_ell) / ell)); proves the statement
                    when k = m = stride = ell is prime.
    alpha-beta      the same finite check on the coefficients alpha_i of F_ell;
                    equivalent to theorem-bound.
    empirical       direct check up to a horizon, any k, m, stride.
    multipartition  direct check on PL_k rebuilt as p_k times a finite
                    polynomial, any k, m, stride.
"""

import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sympy import Poly, isprime, symbols

import config
from modules.errors import PlaneCongError, TheoremScopeError
from modules.modseries import (
    DensePoly,
    binomial_poly,
    coeff_at,
    dilate,
    mul_poly,
)
from modules.partitions import f_series, multipartition_series, pl_series, s_k_multiset
from modules.periodicity import PeriodCertificate, kwong_period

logger = logging.getLogger(__name__)

METHOD_THEOREM = "theorem-bound"
METHOD_ALPHA = "alpha-beta"
METHOD_EMPIRICAL = "empirical"
METHOD_MULTIPARTITION = "multipartition"
METHODS = (METHOD_THEOREM, METHOD_ALPHA, METHOD_EMPIRICAL, METHOD_MULTIPARTITION)

VERDICT_PROVED = "proved-for-all-n"
VERDICT_HOLDS = "holds-to-horizon"
VERDICT_REFUTED = "refuted"
VERDICTS = (VERDICT_PROVED, VERDICT_HOLDS, VERDICT_REFUTED)

# (1+q)^3 (1-q)^2 (1-q^3) reduced mod 4
PL4_WITNESS = (1, 1, 2, 1, 0, 3, 2, 3, 3)

WITNESS_CASES = ("mod4-triple", "mod4-odd", "mod8-triple")


@dataclass(frozen=True)
class CongruenceStatement:
    """
    Canonical statement. Residues lie in [0, stride); lhs and rhs share no
    residue; each side is sorted; an empty side is always rhs (the "== 0"
    form); otherwise (lhs, rhs) <= (rhs, lhs).
    """

    k: int
    modulus: int
    lhs: tuple
    rhs: tuple = ()
    stride: int = 0

    def __post_init__(self):
        if self.stride == 0:
            object.__setattr__(self, "stride", self.modulus)

    @property
    def residues(self):
        return self.lhs + self.rhs

    def sort_key(self):
        return (self.k, self.modulus, self.stride, self.lhs, self.rhs)

    def coefficient_vector(self):
        """Per-residue count on lhs minus count on rhs, reduced mod m."""
        vector = [0] * self.stride
        for a in self.lhs:
            vector[a] += 1
        for b in self.rhs:
            vector[b] -= 1
        return tuple(v % self.modulus for v in vector)

    def is_trivial(self):
        return not any(self.coefficient_vector())

    def in_theorem_scope(self):
        return self.k == self.modulus == self.stride and isprime(self.modulus)

    def describe(self):
        def side(residues):
            if not residues:
                return "0"
            terms = []
            for a in residues:
                shift = f"+{a}" if a else ""
                terms.append(f"pl_{self.k}({self.stride}n{shift})")
            return " + ".join(terms)

        return f"{side(self.lhs)} == {side(self.rhs)} (mod {self.modulus})"

    def to_dict(self):
        return {
            "k": self.k,
            "m": self.modulus,
            "stride": self.stride,
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
        }

    @classmethod
    def from_dict(cls, data):
        modulus = int(data["m"])
        return cls(
            k=int(data["k"]),
            modulus=modulus,
            lhs=tuple(int(a) for a in data["lhs"]),
            rhs=tuple(int(b) for b in data["rhs"]),
            stride=int(data.get("stride", modulus)),
        )


@dataclass(frozen=True)
class Counterexample:
    n: int
    lhs_value: int
    rhs_value: int

    def to_dict(self):
        return {"n": self.n, "lhs_value": self.lhs_value, "rhs_value": self.rhs_value}


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification; `bound` is B for proofs and the horizon otherwise."""

    statement: CongruenceStatement
    method: str
    checks_performed: int
    bound: int
    verdict: str
    counterexample: Counterexample = None
    certificate: PeriodCertificate = None
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self):
        return self.verdict != VERDICT_REFUTED


@dataclass(frozen=True)
class WitnessReport:
    """Finite polynomial computation behind one prime-power congruence family."""

    case: str
    modulus: int  # 0 means exact integer arithmetic
    coefficients: tuple
    checked: tuple  # (exponent, coefficient) pairs the assertion looks at
    condition: str
    holds: bool

    @property
    def passed(self):
        return self.holds


@dataclass(frozen=True)
class MultipartitionRouteReport:
    """Both steps of the pl_2 mod 5 argument, checked to a horizon."""

    horizon: int
    vanishing: tuple  # (a, p_2(5n+a) == 0 for all n < horizon) for a in 2, 3, 4
    identity_holds: bool
    conclusions: tuple  # VerificationReport per concluded congruence

    @property
    def passed(self):
        return (
            all(ok for _, ok in self.vanishing)
            and self.identity_holds
            and all(r.passed for r in self.conclusions)
        )


@dataclass(frozen=True)
class KimingOlssonReport:
    prime: int
    horizon: int
    rows: tuple  # (a, predicted vanishing, observed vanishing)

    @property
    def passed(self):
        return all(predicted == observed for _, predicted, observed in self.rows)


def residues_out_of_range(lhs, rhs, stride):
    return any(a >= stride for a in list(lhs) + list(rhs))


def canonicalize(k, modulus, lhs, rhs=(), stride=None):
    """
    Put a raw statement in canonical form.

    Residues are reduced mod stride (pl(stride*n + a) with a >= stride is the
    same progression, re-indexed), common residues are cancelled, sides are
    sorted and oriented.

    Args:
        k (int): Number of components, >= 1
        modulus (int): Modulus m, >= 2
        lhs (iterable): Residues on the left side
        rhs (iterable): Residues on the right side; empty means "== 0"
        stride (int, optional): Progression step; defaults to the modulus

    Returns:
        CongruenceStatement: Canonical statement

    Raises:
        PlaneCongError: If k < 1, modulus < 2, stride < 1 or a residue is negative
    """
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")
    if modulus < 2:
        raise PlaneCongError(f"modulus must be at least 2, got {modulus}")
    stride = modulus if stride is None else stride
    if stride < 1:
        raise PlaneCongError(f"stride must be at least 1, got {stride}")
    lhs, rhs = list(lhs), list(rhs)
    if any(a < 0 for a in lhs + rhs):
        raise PlaneCongError("residues must be nonnegative")
    if residues_out_of_range(lhs, rhs, stride):
        logger.warning("residues reduced modulo %d; the progression is re-indexed in n", stride)
    left = Counter(a % stride for a in lhs)
    right = Counter(b % stride for b in rhs)
    common = left & right
    left, right = left - common, right - common
    lhs_t = tuple(sorted(left.elements()))
    rhs_t = tuple(sorted(right.elements()))
    if not lhs_t or (rhs_t and (rhs_t, lhs_t) < (lhs_t, rhs_t)):
        lhs_t, rhs_t = rhs_t, lhs_t
    return CongruenceStatement(k, modulus, lhs_t, rhs_t, stride)


def _required_order(st, count):
    return st.stride * (count - 1) + max(st.residues, default=0) + 1


def _side_values(coeffs, residues, st, count):
    total = np.zeros(count, dtype=np.int64)
    for a in residues:
        total = (total + coeffs[a::st.stride][:count]) % st.modulus
    return total


def _first_failure(series, st, count):
    """
    Check the statement on `series` for n < count.

    Returns:
        tuple: (checks_performed, Counterexample or None)
    """
    if series.order < _required_order(st, count):
        raise PlaneCongError(
            f"series order {series.order} too short for {count} checks of {st.describe()}"
        )
    coeffs = series.coeffs % st.modulus
    left = _side_values(coeffs, st.lhs, st, count)
    right = _side_values(coeffs, st.rhs, st, count)
    bad = np.flatnonzero(left != right)
    if bad.size == 0:
        return count, None
    n = int(bad[0])
    return n + 1, Counterexample(n, int(left[n]), int(right[n]))


def evaluate(series, st, n):
    """Both sides of the statement at one n, via independent coefficient lookups."""
    left = sum(coeff_at(series, st.stride * n + a) for a in st.lhs) % st.modulus
    right = sum(coeff_at(series, st.stride * n + b) for b in st.rhs) % st.modulus
    return left, right


def statement_holds_on(series, st, n):
    left, right = evaluate(series, st, n)
    return left == right


def _require_theorem_scope(st):
    if not st.in_theorem_scope():
        raise TheoremScopeError(
            f"{st.describe()} is outside the finite-check theorem "
            "(needs k = m = stride = a prime); use the empirical path"
        )


def theorem_bound(ell):
    """
    The bound B and the certificate it comes from.

    Returns:
        tuple: (B, PeriodCertificate for F_ell mod ell)
    """
    certificate = kwong_period(ell, 1, s_k_multiset(ell))
    return max(1, math.ceil(certificate.period / ell)), certificate


def _finish(st, method, bound, checks, failure, start, proved, certificate=None):
    if failure is not None:
        verdict = VERDICT_REFUTED
        certificate = None
    else:
        verdict = VERDICT_PROVED if proved else VERDICT_HOLDS
    report = VerificationReport(
        statement=st,
        method=method,
        checks_performed=checks,
        bound=bound,
        verdict=verdict,
        counterexample=failure,
        certificate=certificate,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )
    logger.info("%s [%s, bound %d]: %s", st.describe(), method, bound, verdict)
    return report


def verify_bounded(st):
    """
    Decide a statement with k = m = stride = ell prime by checking the
    plane-partition values for n < B.

    Raises:
        TheoremScopeError: If the statement is outside the theorem's hypothesis
    """
    _require_theorem_scope(st)
    start = time.perf_counter()
    ell = st.modulus
    bound, certificate = theorem_bound(ell)
    series = pl_series(ell, ell, _required_order(st, bound))
    checks, failure = _first_failure(series, st, bound)
    return _finish(st, METHOD_THEOREM, bound, checks, failure, start, True, certificate)


def alpha_check(st):
    """
    Decide the statement through the coefficients alpha_i = p(i; S_ell) of F_ell.

    Agrees with verify_bounded on every in-scope statement. A counterexample
    here carries alpha sums, not plane-partition values.
    """
    _require_theorem_scope(st)
    start = time.perf_counter()
    ell = st.modulus
    bound, certificate = theorem_bound(ell)
    series = f_series(ell, ell, _required_order(st, bound))
    checks, failure = _first_failure(series, st, bound)
    return _finish(st, METHOD_ALPHA, bound, checks, failure, start, True, certificate)


def empirical_check(st, horizon=None):
    """Check the statement directly on pl_k mod m for n < horizon; never proves."""
    horizon = config.DEFAULT_EMPIRICAL_HORIZON if horizon is None else horizon
    if horizon < 1:
        raise PlaneCongError(f"horizon must be at least 1, got {horizon}")
    start = time.perf_counter()
    series = pl_series(st.k, st.modulus, st.stride * horizon)
    checks, failure = _first_failure(series, st, horizon)
    return _finish(st, METHOD_EMPIRICAL, horizon, checks, failure, start, False)


def plane_from_multipartition(k, modulus, order):
    """PL_k rebuilt as p_k(q) * prod_{i<k} (1 - q^i)^(k-i)."""
    correction = DensePoly(modulus, (1,))
    for i in range(1, k):
        correction = correction * binomial_poly(modulus, i, k - i)
    return mul_poly(multipartition_series(k, modulus, order), correction)


def multipartition_check(st, horizon=None):
    """Check the statement on the multipartition-derived series for n < horizon."""
    horizon = config.DEFAULT_EMPIRICAL_HORIZON if horizon is None else horizon
    if horizon < 1:
        raise PlaneCongError(f"horizon must be at least 1, got {horizon}")
    start = time.perf_counter()
    series = plane_from_multipartition(st.k, st.modulus, st.stride * horizon)
    checks, failure = _first_failure(series, st, horizon)
    return _finish(st, METHOD_MULTIPARTITION, horizon, checks, failure, start, False)


def verify(st, method=None, horizon=None):
    """
    Dispatch on method; the default proves in-scope statements and checks the
    rest empirically.

    Raises:
        PlaneCongError: If the statement has no left side or every residue
            cancels mod m, so that it asserts nothing
    """
    if not st.lhs or st.is_trivial():
        raise PlaneCongError(f"{st.describe()} is trivial after cancellation; nothing to verify")
    if method is None:
        method = METHOD_THEOREM if st.in_theorem_scope() else METHOD_EMPIRICAL
    if method == METHOD_THEOREM:
        return verify_bounded(st)
    if method == METHOD_ALPHA:
        return alpha_check(st)
    if method == METHOD_EMPIRICAL:
        return empirical_check(st, horizon)
    if method == METHOD_MULTIPARTITION:
        return multipartition_check(st, horizon)
    raise PlaneCongError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


def recheck(report):
    """
    Re-evaluate a refutation with fresh coefficient lookups.

    Returns:
        bool: True if the recorded counterexample reproduces (or there is none)
    """
    cex = report.counterexample
    if cex is None:
        return True
    st = report.statement
    order = st.stride * cex.n + max(st.residues, default=0) + 1
    if report.method == METHOD_ALPHA:
        series = f_series(st.k, st.modulus, order)
    elif report.method == METHOD_MULTIPARTITION:
        series = plane_from_multipartition(st.k, st.modulus, order)
    else:
        series = pl_series(st.k, st.modulus, order)
    return evaluate(series, st, cex.n) == (cex.lhs_value, cex.rhs_value)


def _integer_coefficients(expr, q):
    coeffs = Poly(expr, q).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def prime_power_witness(case):
    """
    Reproduce the finite polynomial computation behind a prime-power family.

    Cases:
        mod4-triple  (1+q)^3 (1-q)^2 (1-q^3) mod 4 equals PL4_WITNESS
        mod4-odd     (1-q)^3 (1-q^2)^2 (1-q^3) over Z has even coefficients
                     at every exponent == 3 (mod 4)
        mod8-triple  prod_{i=1..7} (1-q^i)^(8-i) over Z has even coefficients
                     at every exponent == 5, 6, 7 (mod 8)

    Raises:
        PlaneCongError: For an unknown case tag
    """
    if case == "mod4-triple":
        poly = (
            DensePoly.from_coeffs(4, (1, 3, 3, 1))
            * binomial_poly(4, 1, 2)
            * binomial_poly(4, 3, 1)
        )
        checked = tuple(enumerate(poly.coeffs))
        return WitnessReport(
            case, 4, poly.coeffs, checked,
            "equals 1+q+2q^2+q^3+3q^5+2q^6+3q^7+3q^8", poly.coeffs == PL4_WITNESS,
        )
    q = symbols("q")
    if case == "mod4-odd":
        coeffs = _integer_coefficients((1 - q) ** 3 * (1 - q**2) ** 2 * (1 - q**3), q)
        checked = tuple((e, c) for e, c in enumerate(coeffs) if e % 4 == 3)
        condition = "coefficients at exponents 3 mod 4 are even"
    elif case == "mod8-triple":
        expr = 1
        for i in range(1, 8):
            expr *= (1 - q**i) ** (8 - i)
        coeffs = _integer_coefficients(expr, q)
        checked = tuple((e, c) for e, c in enumerate(coeffs) if e % 8 in (5, 6, 7))
        condition = "coefficients at exponents 5, 6, 7 mod 8 are even"
    else:
        raise PlaneCongError(f"unknown witness case {case!r}; expected one of {', '.join(WITNESS_CASES)}")
    return WitnessReport(case, 0, coeffs, checked, condition, all(c % 2 == 0 for _, c in checked))


def pl4_via_pl2_identity(order):
    """Check PL_4(q) == W(q) * PL_2(q^2) (mod 4) coefficient-for-coefficient up to `order`."""
    half = pl_series(2, 4, -(-order // 2))
    rebuilt = mul_poly(dilate(half, 2, order), DensePoly(4, PL4_WITNESS))
    return rebuilt == pl_series(4, 4, order)


def legendre(a, ell):
    """
    Legendre symbol (a | ell) by Euler's criterion.

    Raises:
        PlaneCongError: If ell is not an odd prime
    """
    if ell == 2 or not isprime(ell):
        raise PlaneCongError(f"Legendre symbol needs an odd prime, got {ell}")
    value = pow(a % ell, (ell - 1) // 2, ell)
    return -1 if value == ell - 1 else value


def kiming_olsson_holds(ell, a):
    """True when p_{ell-3}(ell*n + a) == 0 (mod ell) for all n, i.e. (8a+1 | ell) != 1."""
    if ell < 5 or not isprime(ell):
        raise PlaneCongError(f"the criterion needs a prime ell >= 5, got {ell}")
    if not 0 <= a < ell:
        raise PlaneCongError(f"residue must lie in [0, {ell}), got {a}")
    return legendre(8 * a + 1, ell) != 1


def kiming_olsson_scan(ell, horizon=None):
    """
    Compare the criterion with p_{ell-3}(ell*n + a) mod ell for n < horizon.

    Returns:
        KimingOlssonReport: One (a, predicted, observed) row per residue
    """
    horizon = config.DEFAULT_EMPIRICAL_HORIZON if horizon is None else horizon
    if horizon < 1:
        raise PlaneCongError(f"horizon must be at least 1, got {horizon}")
    predicted = [kiming_olsson_holds(ell, a) for a in range(ell)]
    series = multipartition_series(ell - 3, ell, ell * horizon)
    rows = tuple(
        (a, predicted[a], not bool(np.any(series.coeffs[a::ell][:horizon])))
        for a in range(ell)
    )
    return KimingOlssonReport(ell, horizon, rows)


def pl2_mod5_via_multipartition(horizon=None):
    """
    pl_2(5n+3) == pl_2(5n+4) == 0 (mod 5) through the 2-multipartitions:
    p_2(5n+a) vanishes for a in {2, 3, 4} and pl_2(n) = p_2(n) - p_2(n-1).
    """
    horizon = config.DEFAULT_EMPIRICAL_HORIZON if horizon is None else horizon
    order = 5 * horizon
    p2 = multipartition_series(2, 5, order)
    vanishing = tuple((a, not bool(np.any(p2.coeffs[a::5][:horizon]))) for a in (2, 3, 4))
    identity = mul_poly(p2, binomial_poly(5, 1, 1)) == pl_series(2, 5, order)
    conclusions = tuple(
        multipartition_check(canonicalize(2, 5, [a], []), horizon) for a in (3, 4)
    )
    return MultipartitionRouteReport(horizon, vanishing, identity, conclusions)


def known_congruences():
    """The six statements the finite-check theorem proves for ell in {2, 3, 5, 7}."""
    return [
        canonicalize(2, 2, [1], [0]),
        canonicalize(3, 3, [2], []),
        canonicalize(3, 3, [1], [0]),
        canonicalize(5, 5, [2], [4]),
        canonicalize(5, 5, [1], [3]),
        canonicalize(7, 7, [2, 3], [4, 5]),
    ]


def prime_power_statements():
    """The prime-power family: one mod-4 relation and four parity statements."""
    return [
        canonicalize(4, 4, [1], [2, 3]),
        canonicalize(4, 2, [3], [], stride=4),
        canonicalize(8, 2, [5], [], stride=8),
        canonicalize(8, 2, [6], [], stride=8),
        canonicalize(8, 2, [7], [], stride=8),
    ]
