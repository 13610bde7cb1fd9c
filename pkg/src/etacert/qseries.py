"""Truncated q-series over Z or Z/u, eta-quotient expansion, and a DP oracle.

A :class:`TruncatedSeries` holds the coefficients ``c(0), ..., c(T)`` of a
formal power series.  Binary operations always truncate to the shorter
operand.  Integer coefficients are Python ints, so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Tuple

__all__ = [
    "TruncatedSeries",
    "ExponentVector",
    "one",
    "euler_factor",
    "mul",
    "div",
    "invert",
    "power",
    "eta_quotient_series",
    "pk_exponents",
    "pk_series",
    "pk_oracle",
    "pk_oracle_table",
    "pentagonal_numbers",
]


@dataclass(frozen=True)
class TruncatedSeries:
    trunc: int
    coeffs: Tuple[int, ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.trunc < 0:
            raise ValueError(f"truncation must be nonnegative, got {self.trunc}")
        if self.modulus is not None and self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.trunc + 1:
            raise ValueError(
                f"expected {self.trunc + 1} coefficients, got {len(coeffs)}")
        if self.modulus is not None:
            coeffs = tuple(c % self.modulus for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_list(cls, coeffs: Sequence[int], modulus: Optional[int] = None):
        return cls(len(coeffs) - 1, tuple(coeffs), modulus)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return mul(self, other)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return div(self, other)

    def __pow__(self, e):
        return power(self, e)

    def truncate(self, trunc: int) -> "TruncatedSeries":
        if trunc > self.trunc:
            raise ValueError(
                f"cannot extend a series truncated at {self.trunc} to {trunc}")
        return TruncatedSeries(trunc, self.coeffs[: trunc + 1], self.modulus)

    def reduce(self, modulus: int) -> "TruncatedSeries":
        """Reduce an integer series modulo ``modulus``."""
        if self.modulus is not None and self.modulus % modulus:
            raise ValueError(
                f"cannot reduce a series mod {self.modulus} to mod {modulus}")
        return TruncatedSeries(self.trunc, self.coeffs, modulus)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])


@dataclass(frozen=True, eq=False)
class ExponentVector:
    """Exponents ``r_delta`` of the eta quotient ``prod (q^d; q^d)^{r_d}``.

    ``entries`` may be a mapping or an iterable of ``(delta, exponent)``
    pairs; duplicate keys are summed and zero exponents dropped.  Equality
    and hashing only look at the nonzero entries, not at ``level``.
    """

    level: int
    entries: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        pairs = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        merged: dict = {}
        for delta, exp in pairs:
            delta, exp = int(delta), int(exp)
            if delta < 1 or self.level % delta:
                raise ValueError(f"{delta} is not a divisor of level {self.level}")
            merged[delta] = merged.get(delta, 0) + exp
        object.__setattr__(
            self, "entries", {d: merged[d] for d in sorted(merged) if merged[d]})

    def __eq__(self, other):
        if not isinstance(other, ExponentVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def __neg__(self):
        return ExponentVector(self.level, {d: -e for d, e in self.entries.items()})

    def __getitem__(self, delta):
        return self.entries.get(delta, 0)

    def __repr__(self):
        return f"ExponentVector({self.level}, {self.entries})"

    def items(self):
        return self.entries.items()

    def at_level(self, level: int) -> "ExponentVector":
        return ExponentVector(level, self.entries)

    def weight_sum(self) -> int:
        """``sum r_delta``."""
        return sum(self.entries.values())

    def order_sum(self) -> int:
        """``sum delta * r_delta``."""
        return sum(d * e for d, e in self.entries.items())

    def positional(self) -> Tuple[int, ...]:
        """Exponents listed over all divisors of ``level`` in increasing order."""
        return tuple(self[d] for d in range(1, self.level + 1) if self.level % d == 0)

    def to_dict(self) -> dict:
        return {"level": self.level,
                "entries": {str(d): e for d, e in self.entries.items()}}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExponentVector":
        return cls(int(data["level"]), {int(d): int(e) for d, e in data["entries"].items()})


def _check_same_modulus(a: TruncatedSeries, b: TruncatedSeries):
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def one(trunc: int, modulus: Optional[int] = None) -> TruncatedSeries:
    return TruncatedSeries(trunc, (1,) + (0,) * trunc, modulus)


def pentagonal_numbers(limit: int) -> Iterable[Tuple[int, int]]:
    """Yield ``(g, sign)`` for generalized pentagonal ``g = j(3j-1)/2 <= limit``.

    ``sign`` is ``(-1)^j``; values come out in increasing order.
    """
    yield 0, 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > limit:
            return
        sign = -1 if j % 2 else 1
        yield g1, sign
        g2 = j * (3 * j + 1) // 2
        if g2 <= limit:
            yield g2, sign
        j += 1


def euler_factor(delta: int, trunc: int, modulus: Optional[int] = None) -> TruncatedSeries:
    """``(q^delta; q^delta)_inf`` truncated at ``trunc`` (pentagonal expansion)."""
    if delta < 1:
        raise ValueError(f"delta must be positive, got {delta}")
    if trunc < 0:
        raise ValueError(f"truncation must be nonnegative, got {trunc}")
    coeffs = [0] * (trunc + 1)
    for g, sign in pentagonal_numbers(trunc // delta):
        coeffs[delta * g] = sign
    return TruncatedSeries(trunc, tuple(coeffs), modulus)


def _support(coeffs: Sequence[int], start: int = 0):
    return [(j, c) for j, c in enumerate(coeffs) if c and j >= start]


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at ``min(a.trunc, b.trunc)``.

    Only the nonzero terms of the sparser operand are visited, so multiplying
    by an Euler factor costs ``O(T * sqrt(T))``.
    """
    _check_same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    u = a.modulus
    sa, sb = _support(a.coeffs[: trunc + 1]), _support(b.coeffs[: trunc + 1])
    sparse, dense = (sa, b.coeffs) if len(sa) <= len(sb) else (sb, a.coeffs)
    out = [0] * (trunc + 1)
    for j, c in sparse:
        for n in range(j, trunc + 1):
            out[n] += c * dense[n - j]
    if u is not None:
        out = [x % u for x in out]
    return TruncatedSeries(trunc, tuple(out), u)


def _unit_inverse(c0: int, modulus: Optional[int]) -> int:
    if modulus is None:
        if c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not a unit in Z")
        return c0
    if math.gcd(c0, modulus) != 1:
        raise ValueError(f"constant term {c0} is not a unit mod {modulus}")
    return pow(c0, -1, modulus)


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Return ``c`` with ``b * c = a``, truncated at ``min(a.trunc, b.trunc)``.

    Uses the recurrence ``c_n = b_0^{-1} (a_n - sum_{j>=1} b_j c_{n-j})``
    over the nonzero ``b_j`` only.
    """
    _check_same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    u = a.modulus
    inv0 = _unit_inverse(b.coeffs[0], u)
    tail = _support(b.coeffs[: trunc + 1], start=1)
    c = [0] * (trunc + 1)
    for n in range(trunc + 1):
        acc = a.coeffs[n]
        for j, bj in tail:
            if j > n:
                break
            acc -= bj * c[n - j]
        acc *= inv0
        c[n] = acc % u if u is not None else acc
    return TruncatedSeries(trunc, tuple(c), u)


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be a unit."""
    return div(one(a.trunc, a.modulus), a)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """``a**e`` by binary powering; negative ``e`` inverts first."""
    if e < 0:
        a, e = invert(a), -e
    result = one(a.trunc, a.modulus)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def eta_quotient_series(r: ExponentVector, trunc: int,
                        modulus: Optional[int] = None) -> TruncatedSeries:
    """Expand ``prod_{delta} (q^delta; q^delta)_inf^{r_delta}`` to ``q^trunc``.

    Each factor is sparse, so positive exponents are applied by repeated
    multiplication and negative ones by repeated division; both stay
    ``O(T * sqrt(T))`` per unit of exponent.
    """
    result = one(trunc, modulus)
    for delta, exp in r.items():
        factor = euler_factor(delta, trunc, modulus)
        for _ in range(abs(exp)):
            result = mul(result, factor) if exp > 0 else div(result, factor)
    return result


def pk_exponents(k: int) -> ExponentVector:
    """Exponent vector of ``1 / ((q;q)_inf (q^k;q^k)_inf)``; ``k = 0`` gives ``1/(q;q)``."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k == 0:
        return ExponentVector(1, {1: -1})
    return ExponentVector(k, [(1, -1), (k, -1)])


def pk_series(k: int, trunc: int, modulus: Optional[int] = None) -> TruncatedSeries:
    """Generating function of 2-color partitions ``p_k(n)`` up to ``q^trunc``."""
    return eta_quotient_series(pk_exponents(k), trunc, modulus)


def pk_oracle_table(k: int, n_max: int, modulus: Optional[int] = None) -> list:
    """``[p_k(0), ..., p_k(n_max)]`` by counting partitions directly.

    Coin-change DP in part-major order: first every part size ``1..n_max``
    for the unrestricted colour, then parts ``k, 2k, ...`` for the second
    colour.  Deliberately shares nothing with the series code above.
    """
    if k < 0 or n_max < 0:
        raise ValueError("k and n_max must be nonnegative")
    ways = [0] * (n_max + 1)
    ways[0] = 1
    parts = list(range(1, n_max + 1))
    if k:
        parts += list(range(k, n_max + 1, k))
    for part in parts:
        for total in range(part, n_max + 1):
            ways[total] += ways[total - part]
            if modulus is not None:
                ways[total] %= modulus
    if modulus is not None:
        ways = [w % modulus for w in ways]
    return ways


def pk_oracle(k: int, n: int, modulus: Optional[int] = None) -> int:
    """Number of 2-color partitions of ``n`` (mod ``modulus`` if given)."""
    return pk_oracle_table(k, n, modulus)[n]
