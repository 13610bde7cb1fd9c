"""The paper's verification cases, theorem drivers, and oracle screening.

Each 2-color generating function ``1/((q;q)(q^k;q^k))`` is first rewritten
mod ``p`` with the identity ``(q;q)^p = (q^p;q^p) (mod p)``; the resulting
eta quotient is then handed to :func:`etacert.radu.verify_congruence`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .qseries import (ExponentVector, eta_quotient_series, pk_exponents,
                      pk_oracle_table)
from .radu import Certificate, RaduTuple, verify_congruence

DEFAULT_SCAN_GUARD = 5 * 10**4


def work_guard(default: int) -> int:
    """Work guard, overridable through ``ETACERT_WORK_GUARD``."""
    value = os.environ.get("ETACERT_WORK_GUARD")
    return int(value) if value else default


@dataclass(frozen=True)
class CongruenceClaim:
    """``p_k(m n + t) = 0 (mod u)`` for all ``n >= 0``."""

    k: int
    m: int
    t: int
    u: int

    def __post_init__(self):
        if not 0 <= self.t < self.m:
            raise ValueError(f"t must lie in [0, {self.m}), got {self.t}")
        if self.u < 2:
            raise ValueError(f"u must be at least 2, got {self.u}")

    def __str__(self):
        return f"p_{self.k}({self.m}n+{self.t}) = 0 (mod {self.u})"

    def to_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "t": self.t, "u": self.u}


@dataclass(frozen=True)
class PaperCase:
    name: str
    k: int
    u: int
    tuple: RaduTuple
    rprime: ExponentVector
    claimed_floor_v: int
    claimed_orbit: Tuple[int, ...]
    theorem_residues: Tuple[Tuple[int, int], ...]
    theorem: str

    def to_dict(self) -> dict:
        return {
            "name": self.name, "k": self.k, "u": self.u, "theorem": self.theorem,
            "tuple": self.tuple.to_dict(), "rprime": self.rprime.to_dict(),
            "claimed_floor_v": self.claimed_floor_v,
            "claimed_orbit": list(self.claimed_orbit),
            "theorem_residues": [list(mt) for mt in self.theorem_residues],
        }


def _case(name, k, u, m, level, t, r, rprime, floor_v, orbit, theorem):
    return PaperCase(
        name=name, k=k, u=u,
        tuple=RaduTuple(m, level, level, t, ExponentVector(level, r)),
        rprime=ExponentVector(level, rprime),
        claimed_floor_v=floor_v, claimed_orbit=tuple(orbit),
        theorem_residues=tuple((m, tp) for tp in orbit), theorem=theorem)


PAPER_CASES: Dict[str, PaperCase] = {
    c.name: c for c in [
        _case("k7", 7, 5, 25, 35, 17, {1: 4, 5: -1, 7: -1}, {1: 3, 7: 11},
              28, [17], "thm-1.1"),
        # The text concludes p_8(25n+18); t = 16, the orbit and 24 - k all say 16.
        _case("k8", 8, 5, 25, 40, 16, {1: 4, 5: -1, 8: -1}, {8: 14},
              42, [16], "thm-1.1"),
        _case("k17", 17, 5, 25, 85, 7, {1: 4, 5: -1, 17: -1}, {17: 20},
              84, [7], "thm-1.1"),
        _case("k4-a", 4, 7, 49, 28, 11, {1: 6, 4: -1, 7: -1}, {1: 2, 4: 1},
              13, [11, 25, 32], "thm-1.2"),
        _case("k4-b", 4, 7, 49, 28, 39, {1: 6, 4: -1, 7: -1}, {1: 1, 4: 1},
              11, [39], "thm-1.2"),
    ]
}

THEOREMS = ("thm-1.1", "thm-1.2")


def paper_case(name: str, registry: Optional[Dict[str, PaperCase]] = None) -> PaperCase:
    registry = PAPER_CASES if registry is None else registry
    try:
        return registry[name]
    except KeyError:
        raise KeyError(f"unknown paper case {name!r}; "
                       f"expected one of {sorted(registry)}") from None


def binomial_reduce(r0: ExponentVector, p: int, alpha: int = 1,
                    delta: int = 1) -> ExponentVector:
    """Trade ``(q^d;q^d)^{-1}`` for ``(q^d;q^d)^{p^a - 1} (q^{pd};q^{pd})^{-p^{a-1}}``.

    The two eta quotients agree modulo ``p**alpha``.  The level of the
    result is ``lcm(r0.level, p * delta)``.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if r0[delta] >= 0:
        raise ValueError(f"exponent at delta={delta} is {r0[delta]}, expected negative")
    level = math.lcm(r0.level, p * delta)
    pairs = list(r0.items()) + [(delta, p**alpha), (p * delta, -p ** (alpha - 1))]
    return ExponentVector(level, pairs)


def check_binomial_lemma(p: int, alpha: int, trunc: int) -> Optional[int]:
    """Check ``(q;q)^{p^a} / (q^p;q^p)^{p^{a-1}} = 1 (mod p^a)`` to ``q^trunc``.

    Returns ``None`` on success, otherwise the first index where the
    expansion differs from 1.
    """
    r = ExponentVector(p, {1: p**alpha, p: -p ** (alpha - 1)})
    series = eta_quotient_series(r, trunc, p**alpha)
    for n, c in enumerate(series):
        if c != (1 if n == 0 else 0):
            return n
    return None


def reduced_exponents(case: PaperCase) -> ExponentVector:
    """Exponents of the p_k generating function after reduction mod ``case.u``."""
    return binomial_reduce(pk_exponents(case.k), case.u).at_level(case.tuple.M)


def case_claims(case: PaperCase) -> List[CongruenceClaim]:
    return [CongruenceClaim(case.k, m, t, case.u) for m, t in case.theorem_residues]


def verify_case(case: PaperCase) -> Certificate:
    derived = reduced_exponents(case)
    if derived != case.tuple.r:
        raise ValueError(f"case {case.name}: reduced exponents {derived.entries} "
                         f"differ from registered {case.tuple.r.entries}")
    return verify_congruence(case.tuple, case.rprime, case.u)


def verify_theorem(which: str, registry: Optional[Dict[str, PaperCase]] = None
                   ) -> List[Tuple[PaperCase, Certificate, List[CongruenceClaim]]]:
    """Verify every case of a theorem, in registry order.

    Claims are attached only to verified certificates.
    """
    if which not in THEOREMS:
        raise ValueError(f"unknown theorem {which!r}; expected one of {THEOREMS}")
    registry = PAPER_CASES if registry is None else registry
    results = []
    for case in registry.values():
        if case.theorem != which:
            continue
        cert = verify_case(case)
        results.append((case, cert, case_claims(case) if cert.verified else []))
    return results


def oracle_check(claim: CongruenceClaim, n_max: int) -> Optional[int]:
    """First ``n <= n_max`` with ``p_k(m n + t) != 0 (mod u)``, or ``None``."""
    table = pk_oracle_table(claim.k, claim.m * n_max + claim.t, claim.u)
    for n in range(n_max + 1):
        if table[claim.m * n + claim.t]:
            return n
    return None


def oracle_scan(k: int, m: int, u: int, n_checks: int,
                guard: Optional[int] = None) -> List[int]:
    """Residues ``t`` with ``p_k(m n + t) = 0 (mod u)`` for every ``n <= n_checks``.

    Screening only: the output is candidate evidence, never a proof.
    """
    if m < 1 or u < 2 or n_checks < 0:
        raise ValueError("need m >= 1, u >= 2 and n_checks >= 0")
    guard = work_guard(DEFAULT_SCAN_GUARD) if guard is None else guard
    top = m * n_checks + m
    if top > guard:
        raise ValueError(f"scan would reach n = {top}, above the work guard {guard}")
    table = pk_oracle_table(k, top, u)
    return [t for t in range(m)
            if all(table[m * n + t] == 0 for n in range(n_checks + 1))]
