"""Element-level operations that depend on the ring kind."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from . import groebner as G
from . import poly as P
from .base import RingElement, RingKind, RingSpec, SpecMismatch


class UnsupportedRing(ValueError):
    """Raised for operations that need a unique factorization domain."""


def cusp_relation() -> P.Poly:
    return {(3, 0): Fraction(1), (0, 2): Fraction(-1)}


def _same(a: RingElement, b: RingElement) -> RingSpec:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    return a.spec


def add(a: RingElement, b: RingElement) -> RingElement:
    _same(a, b)
    return a + b


def sub(a: RingElement, b: RingElement) -> RingElement:
    _same(a, b)
    return a - b


def mul(a: RingElement, b: RingElement) -> RingElement:
    _same(a, b)
    return a * b


def neg(a: RingElement) -> RingElement:
    return -a


def is_zero(a: RingElement) -> bool:
    return a.is_zero()


def is_nonzerodivisor(a: RingElement) -> bool:
    # every supported ring is an integral domain
    return not a.is_zero()


def is_unit(a: RingElement) -> bool:
    k = a.spec.kind
    if k is RingKind.INTEGERS:
        return a.payload in (1, -1)
    if k is RingKind.RATIONALS:
        return a.payload != 0
    if k is RingKind.QUADRATIC:
        return a.norm() == 1
    return bool(a.payload) and P.is_constant(a.payload)


def exact_divide(a: RingElement, b: RingElement) -> Optional[RingElement]:
    """Return q with a == q*b, or None when b does not divide a."""
    spec = _same(a, b)
    if b.is_zero():
        raise ZeroDivisionError("exact_divide by zero")
    k = spec.kind
    if k is RingKind.INTEGERS:
        q, r = divmod(a.payload, b.payload)
        return None if r else RingElement(spec, q)
    if k is RingKind.RATIONALS:
        return RingElement(spec, a.payload / b.payload)
    if k is RingKind.QUADRATIC:
        num = a * b.conj()
        n = b.norm()
        x, y = num.payload
        if x % n or y % n:
            return None
        return RingElement(spec, (x // n, y // n))
    if k is RingKind.POLYNOMIAL:
        q = P.exact_div(a.payload, b.payload)
        return None if q is None else RingElement(spec, q)
    # cuspidal: a in (b) + (u^3 - v^2) inside Q[u, v]
    if a.is_zero():
        return spec.zero()
    gb = G.groebner([b.payload, cusp_relation()], 2, track=True)
    cof = G.membership_cofactors(a.payload, gb)
    if cof is None:
        return None
    q = spec.element(cof[0])
    assert q * b == a
    return q


def gcd(a: RingElement, b: RingElement) -> RingElement:
    """Normalized greatest common divisor in a UFD kind."""
    spec = _same(a, b)
    if not spec.is_ufd:
        raise UnsupportedRing(f"gcd is not available in {spec}")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    k = spec.kind
    if k is RingKind.INTEGERS:
        return RingElement(spec, math.gcd(a.payload, b.payload))
    if k is RingKind.RATIONALS:
        return spec.one()
    return RingElement(spec, P.gcd(a.payload, b.payload, spec.nvars))


def normalize_associate(a: RingElement) -> RingElement:
    """Canonical associate: positive integer, or monic polynomial."""
    k = a.spec.kind
    if a.is_zero():
        return a
    if k is RingKind.INTEGERS:
        return RingElement(a.spec, abs(a.payload))
    if k is RingKind.RATIONALS:
        return a.spec.one()
    if k is RingKind.POLYNOMIAL:
        return RingElement(a.spec, P.monic(a.payload))
    return a


def lcm(a: RingElement, b: RingElement) -> RingElement:
    if a.is_zero() or b.is_zero():
        return a.spec.zero()
    q = exact_divide(a * b, gcd(a, b))
    assert q is not None
    return normalize_associate(q)


def _int_squarefree(n: int) -> int:
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            out *= p
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out *= n
    return out


def squarefree_part(a: RingElement) -> RingElement:
    """Product of the distinct prime factors of a, normalized."""
    spec = a.spec
    if not spec.is_ufd:
        raise UnsupportedRing(f"squarefree_part is not available in {spec}")
    if a.is_zero():
        raise ValueError("squarefree part of zero")
    k = spec.kind
    if k is RingKind.INTEGERS:
        return RingElement(spec, _int_squarefree(a.payload))
    if k is RingKind.RATIONALS:
        return spec.one()
    f = a.payload
    g = f
    for i in range(spec.nvars):
        g = P.gcd(g, P.derivative(f, i), spec.nvars)
    q = P.exact_div(f, g)
    return RingElement(spec, P.monic(q))


def associates(a: RingElement, b: RingElement) -> bool:
    """a and b differ by a unit factor."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    q = exact_divide(a, b)
    return q is not None and is_unit(q)
