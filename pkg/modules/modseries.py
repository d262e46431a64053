"""
Dense truncated power series over Z/mZ.

A ResidueSeries keeps exponents 0..order-1 as a read-only int64 numpy array of
reduced residues. Every generating function in the toolkit is a product of
factors 1/(1 - q^j)^e, and multiplying by one such factor is e strided prefix
sums (c[n] += c[n - j]), each O(order). Finite polynomials (DensePoly) only
ever appear as multipliers, so mul_poly walks the nonzero polynomial terms.

Moduli are capped at config.MAX_MODULUS so that a product of two residues,
plus one more residue, stays inside int64.
"""

from dataclasses import dataclass

import numpy as np

import config
from modules.errors import ModulusMismatchError, PlaneCongError, SeriesIndexError


def _check_modulus(modulus):
    if not isinstance(modulus, (int, np.integer)) or modulus < 2:
        raise PlaneCongError(f"modulus must be an integer >= 2, got {modulus!r}")
    if modulus > config.MAX_MODULUS:
        raise PlaneCongError(f"modulus {modulus} exceeds the supported maximum {config.MAX_MODULUS}")


@dataclass(frozen=True, eq=False)
class ResidueSeries:
    """
    Truncated power series sum c[n] q^n, 0 <= n < order, with 0 <= c[n] < modulus.

    Instances are immutable: the coefficient array is flagged read-only and
    every operation returns a fresh series.
    """

    modulus: int
    coeffs: np.ndarray

    def __post_init__(self):
        _check_modulus(self.modulus)
        arr = np.asarray(self.coeffs)
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise PlaneCongError("a series needs at least one retained coefficient")
        if arr.dtype != np.int64:
            arr = arr.astype(np.int64)
        if arr.min() < 0 or arr.max() >= self.modulus:
            raise PlaneCongError(f"coefficients must be reduced modulo {self.modulus}")
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        object.__setattr__(self, "modulus", int(self.modulus))
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_coeffs(cls, modulus, values):
        """Build a series from arbitrary (possibly negative) integers, reducing them."""
        _check_modulus(modulus)
        arr = np.array([int(v) % modulus for v in values], dtype=np.int64)
        return cls(modulus, arr)

    @property
    def order(self):
        return int(self.coeffs.shape[0])

    def tolist(self):
        return [int(c) for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, ResidueSeries):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.modulus, self.coeffs.tobytes()))

    def __repr__(self):
        head = self.tolist()[:8]
        more = ", ..." if self.order > 8 else ""
        return f"ResidueSeries(modulus={self.modulus}, order={self.order}, coeffs={head}{more})"


@dataclass(frozen=True)
class DensePoly:
    """Polynomial with residues mod `modulus`; coeffs[i] is the coefficient of q^i, trailing zeros trimmed."""

    modulus: int
    coeffs: tuple

    def __post_init__(self):
        _check_modulus(self.modulus)
        values = [int(c) for c in self.coeffs]
        if any(c < 0 or c >= self.modulus for c in values):
            raise PlaneCongError(f"polynomial coefficients must be reduced modulo {self.modulus}")
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_coeffs(cls, modulus, values):
        _check_modulus(modulus)
        return cls(modulus, tuple(int(v) % modulus for v in values))

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"cannot multiply polynomials mod {self.modulus} and mod {other.modulus}"
            )
        if self.is_zero() or other.is_zero():
            return DensePoly(self.modulus, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % self.modulus
        return DensePoly(self.modulus, tuple(out))

    def __add__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"cannot add polynomials mod {self.modulus} and mod {other.modulus}"
            )
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return DensePoly(self.modulus, tuple((x + y) % self.modulus for x, y in zip(a, b)))

    def coefficient(self, exponent):
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return 0


def one(modulus, order):
    """
    The series 1 truncated to `order` coefficients.

    Raises:
        PlaneCongError: If modulus < 2 or order < 1
    """
    _check_modulus(modulus)
    if order < 1:
        raise PlaneCongError(f"order must be at least 1, got {order}")
    coeffs = np.zeros(order, dtype=np.int64)
    coeffs[0] = 1
    return ResidueSeries(modulus, coeffs)


def coeff_at(s, n):
    """Coefficient of q^n; raises SeriesIndexError outside 0..order-1."""
    if n < 0 or n >= s.order:
        raise SeriesIndexError(f"index {n} outside retained range 0..{s.order - 1}")
    return int(s.coeffs[n])


def _strided_prefix_sum(work, stride, modulus):
    # in place: work[n] += work[n - stride] for n >= stride, left to right
    size = work.shape[0]
    if stride >= size:
        return
    rows = -(-size // stride)
    pad = rows * stride - size
    if pad:
        grid = np.concatenate([work, np.zeros(pad, dtype=np.int64)]).reshape(rows, stride)
        work[:] = (np.cumsum(grid, axis=0) % modulus).reshape(-1)[:size]
    else:
        grid = work.reshape(rows, stride)
        grid[:] = np.cumsum(grid, axis=0) % modulus


def apply_inverse_factors(s, factors):
    """
    Multiply `s` by prod 1/(1 - q^j)^e over the (j, e) pairs in `factors`.

    One working copy is made; each factor costs e passes of O(order).
    Factors with j >= order only touch dropped terms and are skipped.
    """
    work = np.array(s.coeffs, dtype=np.int64)
    for stride, exponent in factors:
        if stride < 1 or exponent < 0:
            raise PlaneCongError(f"invalid factor 1/(1-q^{stride})^{exponent}")
        if stride >= s.order:
            continue
        for _ in range(exponent):
            _strided_prefix_sum(work, stride, s.modulus)
    return ResidueSeries(s.modulus, work)


def apply_inverse_factor(s, j, e):
    """
    Multiply `s` by 1/(1 - q^j)^e, exact modulo s.modulus up to truncation.

    Args:
        s (ResidueSeries): Series to multiply
        j (int): Stride of the factor, >= 1
        e (int): Exponent, >= 1

    Returns:
        ResidueSeries: New series with the same modulus and order
    """
    return apply_inverse_factors(s, [(j, e)])


def mul_poly(s, p):
    """
    Multiply a series by a finite polynomial, truncating at s.order.

    Raises:
        ModulusMismatchError: If the moduli differ
    """
    if s.modulus != p.modulus:
        raise ModulusMismatchError(
            f"series is mod {s.modulus} but polynomial is mod {p.modulus}"
        )
    size = s.order
    out = np.zeros(size, dtype=np.int64)
    for shift, a in enumerate(p.coeffs):
        if shift >= size:
            break
        if a:
            out[shift:] = (out[shift:] + a * s.coeffs[: size - shift]) % s.modulus
    return ResidueSeries(s.modulus, out)


def binomial_poly(modulus, j, e):
    """
    Expand (1 - q^j)^e with binomial coefficients reduced mod `modulus`.

    Pascal-row iteration keeps every entry reduced, so the modulus need not be
    prime (the mod-4 identities rely on this).
    """
    _check_modulus(modulus)
    if j < 1 or e < 0:
        raise PlaneCongError(f"binomial_poly needs j >= 1 and e >= 0, got j={j}, e={e}")
    row = [1]
    for _ in range(e):
        row = [1] + [(row[i] + row[i + 1]) % modulus for i in range(len(row) - 1)] + [1]
    coeffs = [0] * (j * e + 1)
    for i, c in enumerate(row):
        coeffs[j * i] = c if i % 2 == 0 else (-c) % modulus
    return DensePoly(modulus, tuple(coeffs))


def dilate(s, factor, order):
    """
    Substitute q -> q^factor, keeping `order` coefficients.

    Raises:
        SeriesIndexError: If `s` is too short to fill the requested order
    """
    if factor < 1:
        raise PlaneCongError(f"dilation factor must be >= 1, got {factor}")
    needed = -(-order // factor)
    if s.order < needed:
        raise SeriesIndexError(f"need {needed} source coefficients, series has {s.order}")
    out = np.zeros(order, dtype=np.int64)
    out[::factor] = s.coeffs[:needed]
    return ResidueSeries(s.modulus, out)


def reduce_modulus(s, modulus):
    """Reduce every coefficient to a divisor modulus (e.g. mod 8 -> mod 2)."""
    if s.modulus % modulus != 0:
        raise ModulusMismatchError(f"{modulus} does not divide {s.modulus}")
    return ResidueSeries(modulus, s.coeffs % modulus)
