"""Radu-Sellers finite check for congruences of eta-quotient coefficients.

Given ``(m, M, N, t, r)``, an auxiliary exponent vector ``r'`` at level N and
a modulus ``u``, :func:`verify_congruence` checks admissibility, the cusp
lower bounds at ``gamma_delta = [[1, 0], [delta, 1]]`` for every
``delta | N``, computes the bound ``v``, and inspects ``c_r(m n + t')`` for
``0 <= n <= floor(v)`` and every ``t'`` in the orbit of ``t``.  A verified
:class:`Certificate` proves ``c_r(m n + t') = 0 (mod u)`` for all ``n``.

All rational quantities are :class:`fractions.Fraction`; no floats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .qseries import ExponentVector, eta_quotient_series

ExactRational = Fraction

LAMBDA_SWEEP_GUARD = 10**4
PROJECTIVE_LINE_GUARD = 10**6

VERIFIED = "verified"
FAILED = "failed"


@dataclass(frozen=True)
class RaduTuple:
    m: int
    M: int
    N: int
    t: int
    r: ExponentVector

    def __post_init__(self):
        if min(self.m, self.M, self.N) < 1:
            raise ValueError("m, M and N must be positive")
        if not 0 <= self.t < self.m:
            raise ValueError(f"t must lie in [0, {self.m}), got {self.t}")
        if self.r.level != self.M:
            raise ValueError(f"r has level {self.r.level}, expected M = {self.M}")

    def to_dict(self) -> dict:
        return {"m": self.m, "M": self.M, "N": self.N, "t": self.t,
                "r": self.r.to_dict()}

    @classmethod
    def from_dict(cls, data) -> "RaduTuple":
        return cls(data["m"], data["M"], data["N"], data["t"],
                   ExponentVector.from_dict(data["r"]))


def divisors(n: int) -> List[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def prime_factors(n: int) -> List[int]:
    primes, p = [], 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def kappa(m: int) -> int:
    return math.gcd(m * m - 1, 24)


def sl2_index(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z): ``N * prod_{p | N} (1 + 1/p)``."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    index = N
    for p in prime_factors(N):
        index = index // p * (p + 1)
    return index


def projective_line_size(N: int) -> int:
    """Count points of P^1(Z/N) by enumerating pairs ``(a, c)`` mod N.

    Units of Z/N act freely on pairs with ``gcd(a, c, N) = 1``, so the number
    of classes is the number of such pairs divided by the number of units.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if N > PROJECTIVE_LINE_GUARD:
        raise ValueError(f"N = {N} exceeds the enumeration guard {PROJECTIVE_LINE_GUARD}")
    residues = np.arange(N)
    primitive = np.gcd(np.gcd.outer(residues, residues), N) == 1
    units = np.gcd(residues, N) == 1
    pairs, n_units = int(primitive.sum()), int(units.sum())
    assert pairs % n_units == 0
    return pairs // n_units


def square_classes(m: int) -> List[int]:
    """Squares of the units modulo ``24 m``, sorted."""
    n = 24 * m
    return sorted({s * s % n for s in range(1, n) if math.gcd(s, n) == 1})


def orbit_map(s: int, t: int, w: int, m: int) -> int:
    """``t s + (s - 1)/24 * w  (mod m)`` where ``w = sum delta r_delta``."""
    assert (s - 1) % 24 == 0, f"square class {s} is not 1 mod 24"
    return (t * s + (s - 1) // 24 * w) % m


def residue_orbit(tup: RaduTuple) -> List[int]:
    w = tup.r.order_sum()
    return sorted({orbit_map(s, tup.t, w, tup.m) for s in square_classes(tup.m)})


def delta_star_conditions(tup: RaduTuple) -> dict:
    """Evaluate admissibility conditions C1..C5 individually (any parity of m)."""
    m, N, t, r = tup.m, tup.N, tup.t, tup.r
    k = kappa(m)
    w = r.order_sum()
    mN = m * N
    c3_sum = sum(e * (mN // d) if mN % d == 0 else Fraction(e * mN, d)
                 for d, e in r.items())
    c3 = k * N * c3_sum
    return {
        "C1": all(N % p == 0 for p in prime_factors(m)),
        "C2": all(mN % d == 0 for d, _ in r.items()),
        "C3": isinstance(c3, int) and c3 % 24 == 0,
        "C4": (k * N * r.weight_sum()) % 8 == 0,
        "C5": N % (24 * m // math.gcd(k * (-24 * t - w), 24 * m)) == 0,
    }


def delta_star_check(tup: RaduTuple) -> Optional[str]:
    """Return ``None`` if the tuple is admissible, else the failing condition id.

    Even ``m`` is rejected up front as ``"unsupported-even-m"``.
    """
    if tup.m % 2 == 0:
        return "unsupported-even-m"
    for name, ok in delta_star_conditions(tup).items():
        if not ok:
            return name
    return None


def _gcd_sq_sum(r: ExponentVector, a: int, c: int, m: int) -> Fraction:
    return sum((Fraction(e * math.gcd(d * a, m * c) ** 2, d * m) for d, e in r.items()),
               Fraction(0))


def cusp_order_r(tup: RaduTuple, a: int, c: int) -> Fraction:
    """``min_lambda 1/24 sum r_d gcd^2(d (a + kappa lambda c), m c) / (d m)``."""
    if tup.m > LAMBDA_SWEEP_GUARD:
        raise ValueError(f"m = {tup.m} exceeds the lambda sweep guard")
    k = kappa(tup.m)
    return min(_gcd_sq_sum(tup.r, a + k * lam * c, c, tup.m)
               for lam in range(tup.m)) / 24


def cusp_order_rprime(rprime: ExponentVector, c: int) -> Fraction:
    """``1/24 sum r'_d gcd^2(d, c) / d``."""
    return sum((Fraction(e * math.gcd(d, c) ** 2, d) for d, e in rprime.items()),
               Fraction(0)) / 24


def cusp_lower_bound(tup: RaduTuple, rprime: ExponentVector, delta: int) -> Fraction:
    if tup.N % delta:
        raise ValueError(f"{delta} does not divide N = {tup.N}")
    return cusp_order_r(tup, 1, delta) + cusp_order_rprime(rprime, delta)


def series_bound(tup: RaduTuple, rprime: ExponentVector,
                 orbit: Optional[List[int]] = None) -> Tuple[Fraction, int]:
    """The bound ``v`` and ``floor(v)``; coefficients up to ``floor(v)`` suffice."""
    if orbit is None:
        orbit = residue_orbit(tup)
    t_min = min(orbit)
    index = sl2_index(tup.N)
    v = (Fraction((tup.r.weight_sum() + rprime.weight_sum()) * index
                  - rprime.order_sum(), 24)
         - Fraction(tup.r.order_sum(), 24 * tup.m)
         - Fraction(t_min, tup.m))
    return v, math.floor(v)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


@dataclass
class Certificate:
    tuple: RaduTuple
    rprime: ExponentVector
    u: int
    kappa: int
    index: int
    orbit: List[int]
    cusp_bounds: List[Tuple[int, Fraction]]
    v: Fraction
    floor_v: int
    coefficients_checked: int
    verdict: str
    failure: Optional[dict] = field(default=None)

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def to_dict(self) -> dict:
        return {
            "tuple": self.tuple.to_dict(),
            "rprime": self.rprime.to_dict(),
            "u": self.u,
            "kappa": self.kappa,
            "index": self.index,
            "orbit": sorted(self.orbit),
            "cusp_bounds": [{"delta": d, "bound": format_rational(b)}
                            for d, b in sorted(self.cusp_bounds)],
            "v": format_rational(self.v),
            "floor_v": self.floor_v,
            "coefficients_checked": self.coefficients_checked,
            "verdict": self.verdict,
            "failure": self.failure,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data) -> "Certificate":
        return cls(
            tuple=RaduTuple.from_dict(data["tuple"]),
            rprime=ExponentVector.from_dict(data["rprime"]),
            u=data["u"],
            kappa=data["kappa"],
            index=data["index"],
            orbit=list(data["orbit"]),
            cusp_bounds=[(cb["delta"], parse_rational(cb["bound"]))
                         for cb in data["cusp_bounds"]],
            v=parse_rational(data["v"]),
            floor_v=data["floor_v"],
            coefficients_checked=data["coefficients_checked"],
            verdict=data["verdict"],
            failure=data["failure"],
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def check_coefficients(r: ExponentVector, m: int, orbit: List[int], floor_v: int,
                       u: int) -> Tuple[int, Optional[dict]]:
    """Inspect ``c_r(m n + t') mod u`` for ``0 <= n <= floor_v``, ``t'`` in ``orbit``.

    Returns the number of coefficients inspected and the first nonzero one
    (smallest ``n``, then smallest ``t'``) as a failure record, or ``None``.
    """
    if floor_v < 0:
        return 0, None
    orbit = sorted(orbit)
    series = eta_quotient_series(r, m * floor_v + orbit[-1], u)
    checked = 0
    for n in range(floor_v + 1):
        for tp in orbit:
            checked += 1
            value = series[m * n + tp]
            if value:
                return checked, {"stage": "coefficient",
                                 "detail": {"n": n, "t": tp, "value": value}}
    return checked, None


def verify_congruence(tup: RaduTuple, rprime: ExponentVector, u: int) -> Certificate:
    """Run the full finite check and return its certificate.

    Every quantity is computed even when an early stage fails, so a failed
    certificate still shows the whole picture; coefficients are only
    inspected when admissibility and all cusp bounds pass.
    """
    if rprime.level != tup.N:
        raise ValueError(f"r' has level {rprime.level}, expected N = {tup.N}")
    if u < 2:
        raise ValueError(f"modulus u must be at least 2, got {u}")

    failure = None
    bad_condition = delta_star_check(tup)
    if bad_condition is not None:
        failure = {"stage": "delta-star", "detail": {"condition": bad_condition}}

    orbit = residue_orbit(tup)
    bounds = [(d, cusp_lower_bound(tup, rprime, d)) for d in divisors(tup.N)]
    if failure is None:
        for d, b in bounds:
            if b < 0:
                failure = {"stage": "cusp-bound",
                           "detail": {"delta": d, "bound": format_rational(b)}}
                break

    v, floor_v = series_bound(tup, rprime, orbit)
    checked = 0
    if failure is None:
        checked, failure = check_coefficients(tup.r, tup.m, orbit, floor_v, u)

    return Certificate(
        tuple=tup, rprime=rprime, u=u, kappa=kappa(tup.m), index=sl2_index(tup.N),
        orbit=orbit, cusp_bounds=bounds, v=v, floor_v=floor_v,
        coefficients_checked=checked,
        verdict=VERIFIED if failure is None else FAILED, failure=failure)
