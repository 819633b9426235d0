"""Polyadic integers: representatives of a congruence class [[a]]_b.

A class [[a]]_b is closed under m-ary addition when b divides (m-1)a and under
n-ary multiplication when b divides a**n - a.  Sums and products are only
defined for *admissible* operand counts, l(m-1)+1 and l(n-1)+1.

All arithmetic uses Python integers, so there is no fixed intermediate width
and no wraparound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import AdmissibilityError, MembershipError, NoRingError

__all__ = [
    "CongruenceClass",
    "PolyadicInt",
    "ArityShape",
    "value",
    "from_value",
    "additive_arity",
    "mult_arity",
    "arity_shape",
    "madd",
    "nmul",
]


@dataclass(frozen=True)
class CongruenceClass:
    a: int
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError(f"modulus must be >= 1, got b={self.b}")
        if not 0 <= self.a <= self.b - 1:
            raise ValueError(f"residue must satisfy 0 <= a <= b-1, got a={self.a}, b={self.b}")

    def __contains__(self, v: int) -> bool:
        return v % self.b == self.a

    def __str__(self):
        return f"[[{self.a}]]_{self.b}"


@dataclass(frozen=True)
class PolyadicInt:
    """The representative a + b*k of ``congruence``."""

    congruence: CongruenceClass
    k: int

    @property
    def value(self) -> int:
        return self.congruence.a + self.congruence.b * self.k

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class ArityShape:
    m: int
    n: Optional[int]
    I: int
    J: Optional[int]

    @property
    def is_ring(self) -> bool:
        return self.n is not None

    def __str__(self):
        if self.n is None:
            return f"m={self.m} n=- (no ring)"
        return f"m={self.m} n={self.n} I={self.I} J={self.J}"


def value(x: PolyadicInt) -> int:
    return x.value


def from_value(v: int, congruence: CongruenceClass) -> PolyadicInt:
    a, b = congruence.a, congruence.b
    r = v % b
    if r != a:
        raise MembershipError(f"{v} is not in {congruence}: {v} mod {b} = {r}")
    return PolyadicInt(congruence, (v - a) // b)


def additive_arity(congruence: CongruenceClass) -> int:
    """Smallest m >= 2 with b | (m-1)a, i.e. b/gcd(a, b) + 1."""
    a, b = congruence.a, congruence.b
    return b // math.gcd(a, b) + 1


def mult_arity(congruence: CongruenceClass) -> Optional[int]:
    """Smallest n >= 2 with b | a**n - a, or None when the class carries no ring.

    a**n mod b is eventually periodic with period at most b, so if a ever
    recurs it does so by n = b + 1.
    """
    a, b = congruence.a, congruence.b
    power = a % b
    for n in range(2, b + 2):
        power = power * a % b
        if power == a:
            return n
    return None


def arity_shape(congruence: CongruenceClass) -> ArityShape:
    a, b = congruence.a, congruence.b
    m = additive_arity(congruence)
    q, r = divmod((m - 1) * a, b)
    assert r == 0
    n = mult_arity(congruence)
    J = None
    if n is not None:
        J, r = divmod(a**n - a, b)
        assert r == 0
    return ArityShape(m=m, n=n, I=q, J=J)


def _check_members(congruence: CongruenceClass, elements: Sequence[PolyadicInt]):
    for i, x in enumerate(elements):
        if x.congruence != congruence:
            raise MembershipError(f"element {i} belongs to {x.congruence}, expected {congruence}")


def _check_count(count: int, arity: int, power: int, what: str):
    if power < 1:
        raise AdmissibilityError(f"polyadic power must be >= 1, got {power}")
    required = power * (arity - 1) + 1
    if count != required:
        raise AdmissibilityError(
            f"{what} of arity {arity} at power {power} needs {required} operands, got {count}"
        )


def madd(congruence: CongruenceClass, elements: Sequence[PolyadicInt], ell_m: int) -> PolyadicInt:
    """Admissible m-ary sum of ``ell_m*(m-1)+1`` class members."""
    _check_count(len(elements), additive_arity(congruence), ell_m, "sum")
    _check_members(congruence, elements)
    return from_value(sum(x.value for x in elements), congruence)


def nmul(congruence: CongruenceClass, elements: Sequence[PolyadicInt], ell_n: int) -> PolyadicInt:
    """Admissible n-ary product of ``ell_n*(n-1)+1`` class members."""
    n = mult_arity(congruence)
    if n is None:
        raise NoRingError(f"{congruence} has no multiplicative arity and is not a polyadic ring")
    _check_count(len(elements), n, ell_n, "product")
    _check_members(congruence, elements)
    return from_value(math.prod(x.value for x in elements), congruence)
