"""
Generating-function builders and brute-force enumeration oracles.

Builders return ResidueSeries for F_k, PL_k, p_k, restricted partitions and
the beta series of the plane-partition decomposition. Oracles count the same
objects by direct enumeration and exist only to validate the builders at
small n.

Exact small values: pass a modulus larger than the value you expect (for
example 10**6 for pl_k(n) with n <= 25); the residue then equals the count.
"""

import logging
import time
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime

import config
from modules.errors import OracleLimitError, PlaneCongError
from modules.modseries import apply_inverse_factors, one

logger = logging.getLogger(__name__)

_INT64_LIMIT = 2**63


@dataclass(frozen=True)
class ColoredPartMultiset:
    """
    Finite multiset of positive parts where `colors` distinguishable copies of
    `part` are present. Entries are kept sorted by part with unique parts;
    duplicates passed in are aggregated.
    """

    entries: tuple = ()

    def __post_init__(self):
        merged = {}
        for part, colors in self.entries:
            part, colors = int(part), int(colors)
            if part < 1 or colors < 1:
                raise PlaneCongError(f"parts and colors must be positive, got ({part}, {colors})")
            merged[part] = merged.get(part, 0) + colors
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def from_parts(cls, parts):
        """Each repetition of a value in `parts` is one more color of that part."""
        return cls(tuple((p, 1) for p in parts))

    @classmethod
    def parse(cls, text):
        """Parse "1:1,2:2,5" (part[:colors], comma separated)."""
        entries = []
        for token in text.split(","):
            token = token.strip()
            if not token:
                continue
            part, _, colors = token.partition(":")
            try:
                entries.append((int(part), int(colors) if colors else 1))
            except ValueError:
                raise PlaneCongError(f"malformed part entry {token!r}; expected part[:colors]")
        return cls(tuple(entries))

    @property
    def parts(self):
        return tuple(part for part, _ in self.entries)

    @property
    def copies(self):
        """Total number of colored copies (|S| counted with multiplicity)."""
        return sum(colors for _, colors in self.entries)

    def is_empty(self):
        return not self.entries

    def expanded(self):
        """One entry per colored copy, e.g. {(2, 2)} -> (2, 2)."""
        return tuple(part for part, colors in self.entries for _ in range(colors))

    def __str__(self):
        return "{" + ",".join(f"{p}:{c}" for p, c in self.entries) + "}"


@dataclass(frozen=True)
class PlanePartition:
    """
    A plane partition as a chain of layers lambda(1) >= lambda(2) >= ...;
    layer t holds the cells whose entry is at least t.
    """

    layers: tuple

    @property
    def weight(self):
        return sum(sum(layer) for layer in self.layers)

    def is_valid(self):
        previous = None
        for layer in self.layers:
            if not layer or any(a < b for a, b in zip(layer, layer[1:])):
                return False
            if previous is not None:
                if len(layer) > len(previous) or any(a > b for a, b in zip(layer, previous)):
                    return False
            previous = layer
        return True

    def to_array(self):
        """Rows of entries n_{i,j}: the number of layers containing cell (i, j)."""
        if not self.layers:
            return []
        base = self.layers[0]
        return [
            [sum(1 for layer in self.layers if i < len(layer) and j < layer[i]) for j in range(row)]
            for i, row in enumerate(base)
        ]


def _frobenius_factors(factors, modulus):
    # mod a prime p: (1 - q^j)^(p*e) == (1 - q^(j*p))^e
    if not isprime(modulus):
        return factors
    reduced = []
    for stride, exponent in factors:
        while exponent % modulus == 0 and exponent > 0:
            exponent //= modulus
            stride *= modulus
        reduced.append((stride, exponent))
    return reduced


def _build(label, modulus, order, factors):
    start = time.perf_counter()
    factors = [(j, e) for j, e in _frobenius_factors(factors, modulus) if j < order]
    series = apply_inverse_factors(one(modulus, order), factors)
    logger.info(
        "built %s mod %d to order %d (%d factors) in %.1f ms",
        label, modulus, order, len(factors), (time.perf_counter() - start) * 1000,
    )
    return series


def s_k_multiset(k):
    """S_k: i colors of each part i < k (empty for k = 1)."""
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")
    return ColoredPartMultiset(tuple((i, i) for i in range(1, k)))


def restricted_series(S, modulus, order):
    """Series of p(n; S) mod `modulus`: product of 1/(1 - q^i)^c over the entries (i, c)."""
    return _build(f"restricted{S}", modulus, order, list(S.entries))


@lru_cache(maxsize=config.SERIES_CACHE_SIZE)
def f_series(k, modulus, order):
    """F_k(q) = prod_{n<k} 1/(1 - q^n)^n mod `modulus`; F_1 = 1."""
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")
    return _build(f"F_{k}", modulus, order, list(s_k_multiset(k).entries))


@lru_cache(maxsize=config.SERIES_CACHE_SIZE)
def pl_series(k, modulus, order):
    """
    Generating function of k-component plane partitions, PL_k = prod_n 1/(1 - q^n)^min(k, n).

    Args:
        k (int): Largest allowed part, >= 1
        modulus (int): Coefficient modulus
        order (int): Number of retained coefficients

    Returns:
        ResidueSeries: Coefficient n is pl_k(n) mod `modulus`
    """
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")
    head = [(i, i) for i in range(1, k)]
    tail = [(n, k) for n in range(k, order)]
    return _build(f"PL_{k}", modulus, order, head + tail)


@lru_cache(maxsize=config.SERIES_CACHE_SIZE)
def multipartition_series(k, modulus, order):
    """Series of p_k(n), the number of k-tuples of partitions of total weight n."""
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")
    return _build(f"p_{k}", modulus, order, [(n, k) for n in range(1, order)])


def beta_series(ell, order_in_multiples):
    """
    beta_m, the coefficient of q^(m*ell) in prod_{j>=ell} 1/(1 - q^(j*ell)), mod ell.

    After substituting x = q^ell this counts partitions of m into parts >= ell.
    """
    if not isprime(ell):
        raise PlaneCongError(f"beta series needs a prime, got {ell}")
    return _build(
        f"beta_{ell}", ell, order_in_multiples,
        [(j, 1) for j in range(ell, order_in_multiples)],
    )


def _check_oracle_size(n, k=None):
    if n < 0:
        raise PlaneCongError(f"n must be nonnegative, got {n}")
    if n > config.ORACLE_LIMIT:
        raise OracleLimitError(
            f"n={n} exceeds the enumeration limit {config.ORACLE_LIMIT} "
            "(set PLANECONG_ORACLE_LIMIT to raise it)"
        )
    if k is not None:
        if k < 1:
            raise PlaneCongError(f"k must be at least 1, got {k}")
        if k > config.ORACLE_MAX_COMPONENTS:
            raise OracleLimitError(
                f"k={k} exceeds the enumeration limit {config.ORACLE_MAX_COMPONENTS}"
            )


def _check_exact(count):
    if count >= _INT64_LIMIT:
        raise OracleLimitError(f"exact count {count} does not fit in 64 bits")
    return count


def _partitions_inside(bound, max_weight):
    """Yield every nonempty partition mu with mu_i <= bound_i and |mu| <= max_weight."""
    prefix = []

    def extend(index, remaining, cap):
        if prefix:
            yield tuple(prefix)
        if index >= len(bound):
            return
        for part in range(min(cap, bound[index], remaining), 0, -1):
            prefix.append(part)
            yield from extend(index + 1, remaining - part, part)
            prefix.pop()

    yield from extend(0, max_weight, max_weight)


@lru_cache(maxsize=None)
def _count_chains(weight, layers, bound):
    if weight == 0:
        return 1
    if layers == 0:
        return 0
    return sum(
        _count_chains(weight - sum(mu), layers - 1, mu)
        for mu in _partitions_inside(bound, weight)
    )


def plane_partitions(n, k):
    """
    Yield every k-component plane partition of n as a PlanePartition.

    Meant for small n (inspection and tests); enum_plane counts without
    materialising the chains.
    """
    _check_oracle_size(n)
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")

    def chains(weight, layers, bound):
        if weight == 0:
            yield ()
            return
        if layers == 0:
            return
        for mu in _partitions_inside(bound, weight):
            for rest in chains(weight - sum(mu), layers - 1, mu):
                yield (mu,) + rest

    for layers in chains(n, min(k, n), (n,) * n):
        yield PlanePartition(layers)


def enum_plane(n, k):
    """
    Exact pl_k(n) by counting containment chains of at most k layers.

    Raises:
        OracleLimitError: If n (or the effective k) exceeds the configured caps
    """
    if k < 1:
        raise PlaneCongError(f"k must be at least 1, got {k}")
    # parts never exceed n, so only min(k, n) layers can be nonempty
    effective = min(k, n)
    _check_oracle_size(n, max(effective, 1))
    return _check_exact(_count_chains(n, effective, (n,) * n))


def enum_restricted(n, S):
    """Exact p(n; S): multisets of colored parts from S summing to n."""
    _check_oracle_size(n)
    copies = S.expanded()

    @lru_cache(maxsize=None)
    def count(remaining, index):
        if remaining == 0:
            return 1
        if index == len(copies):
            return 0
        part = copies[index]
        return sum(count(remaining - t * part, index + 1) for t in range(remaining // part + 1))

    return _check_exact(count(n, 0))


@lru_cache(maxsize=None)
def _partition_count(weight):
    if weight == 0:
        return 1
    return sum(1 for mu in _partitions_inside((weight,) * weight, weight) if sum(mu) == weight)


def enum_multi(n, k):
    """Exact p_k(n): ordered k-tuples of partitions with total weight n."""
    _check_oracle_size(n, k)
    counts = [_partition_count(w) for w in range(n + 1)]
    # ways[w] = number of j-tuples of weight w, built up one component at a time
    ways = [1] + [0] * n
    for _ in range(k):
        ways = [sum(counts[w] * ways[total - w] for w in range(total + 1)) for total in range(n + 1)]
    return _check_exact(ways[n])
