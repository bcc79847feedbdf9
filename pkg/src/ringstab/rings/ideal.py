"""Finitely generated ideals and ideal arithmetic.

Canonical data per kind:

* Integers: the nonnegative generator.
* Rationals: 0 or 1.
* Z[sqrt(-5)]: Hermite normal form of the ideal as a rank-2 lattice in
  coordinates (1, s).
* Polynomial and cuspidal kinds: reduced grevlex Groebner basis (cuspidal
  ideals always carry the relation u^3 - v^2).
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from . import groebner as G
from . import lattice as L
from . import poly as P
from .arith import cusp_relation, exact_divide, squarefree_part
from .base import RingElement, RingKind, RingSpec, SpecMismatch

DEFAULT_RADICAL_BOUND = 8


class RadicalInconclusive(RuntimeError):
    """Bounded power search neither found a power nor certified a negative."""

    def __init__(self, f, ideal, bound: int, needed: int):
        super().__init__(
            f"radical membership of {f} undecided with power bound {bound} "
            f"(a certified answer needs bound >= {needed})"
        )
        self.bound = bound
        self.needed = needed


def _quad_rows(g: RingElement) -> List[List[int]]:
    a, b = g.payload
    return [[a, b], [-5 * b, a]]


class Ideal:
    """Ideal of a supported ring given by a generator list.

    Canonical data is memoized on first use; recomputation is idempotent so
    concurrent first access is harmless.
    """

    def __init__(self, spec: RingSpec, generators: Iterable[RingElement] = ()):
        gens = tuple(spec.coerce(g) for g in generators)
        self.spec = spec
        self.generators = gens
        self._canon = None
        self._tracked = None

    @classmethod
    def of(cls, *gens: RingElement) -> "Ideal":
        if not gens:
            raise ValueError("Ideal.of needs at least one generator; use Ideal(spec)")
        return cls(gens[0].spec, gens)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.generators))})"

    # canonical data ---------------------------------------------------

    def _poly_gens(self) -> List[P.Poly]:
        gens = [g.payload for g in self.generators if not g.is_zero()]
        if self.spec.kind is RingKind.CUSPIDAL:
            gens.append(cusp_relation())
        return gens

    def canonical(self):
        if self._canon is None:
            k = self.spec.kind
            nz = [g for g in self.generators if not g.is_zero()]
            if k is RingKind.INTEGERS:
                canon = 0
                for g in nz:
                    canon = math.gcd(canon, g.payload)
            elif k is RingKind.RATIONALS:
                canon = 1 if nz else 0
            elif k is RingKind.QUADRATIC:
                rows = [r for g in nz for r in _quad_rows(g)]
                H, _ = L.hnf(rows) if rows else ([], [])
                canon = tuple(tuple(r) for r in H if any(r))
            else:
                canon = G.groebner(self._poly_gens(), self.spec.nvars)
            self._canon = canon
        return self._canon

    def _tracked_basis(self):
        """Cofactor-tracking canonical data over the generator list."""
        if self._tracked is None:
            k = self.spec.kind
            if k is RingKind.QUADRATIC:
                rows = [r for g in self.generators for r in _quad_rows(g)]
                self._tracked = L.hnf(rows) if rows else ([], [])
            else:
                polys = [g.payload for g in self.generators]
                if k is RingKind.CUSPIDAL:
                    polys.append(cusp_relation())
                self._tracked = G.groebner(polys, self.spec.nvars, track=True)
        return self._tracked

    def canonical_basis(self) -> Tuple[RingElement, ...]:
        """Canonical generators as ring elements (for reports and comparison)."""
        spec = self.spec
        c = self.canonical()
        k = spec.kind
        if k in (RingKind.INTEGERS, RingKind.RATIONALS):
            return (spec.from_int(c),) if c else ()
        if k is RingKind.QUADRATIC:
            # integer generator first: (n, a + b*s) with n the least positive integer
            H, _ = L.hnf([[b, a] for a, b in c])
            return tuple(spec.quad(a, b) for b, a in reversed([r for r in H if any(r)]))
        out = []
        for g in c.basis:
            e = spec.element(g)
            if not e.is_zero():
                out.append(e)
        return tuple(out)

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def contains(self, f: RingElement) -> bool:
        f = self.spec.coerce(f)
        k = self.spec.kind
        c = self.canonical()
        if k is RingKind.INTEGERS:
            return f.payload == 0 if c == 0 else f.payload % c == 0
        if k is RingKind.RATIONALS:
            return c == 1 or f.payload == 0
        if k is RingKind.QUADRATIC:
            return L.solve(c, f.payload) is not None
        return not G.normal_form(f.payload, c)

    def contains_one(self) -> bool:
        return self.contains(self.spec.one())

    def cofactors(self, f: RingElement) -> Optional[List[RingElement]]:
        """Elements c_i with f == sum(c_i * g_i) over the generators, or None."""
        spec = self.spec
        f = spec.coerce(f)
        gens = self.generators
        k = spec.kind
        if not self.contains(f):
            return None
        if f.is_zero():
            return [spec.zero() for _ in gens]
        if k is RingKind.INTEGERS:
            g, coeffs = 0, []
            for h in gens:
                g2, s, t = L.xgcd(g, h.payload)
                coeffs = [c * s for c in coeffs] + [t]
                g = g2
            q = f.payload // g
            out = [spec.from_int(c * q) for c in coeffs]
        elif k is RingKind.RATIONALS:
            j = next(i for i, h in enumerate(gens) if not h.is_zero())
            out = [spec.zero() for _ in gens]
            out[j] = RingElement(spec, f.payload / gens[j].payload)
        elif k is RingKind.QUADRATIC:
            H, U = self._tracked_basis()
            sol = L.solve(H, f.payload)
            nrows = len(U)
            z = [0] * nrows
            for c, urow in zip(sol, U):
                z = [a + c * b for a, b in zip(z, urow)]
            out = [spec.quad(z[2 * i], z[2 * i + 1]) for i in range(len(gens))]
        else:
            gb = self._tracked_basis()
            cof = G.membership_cofactors(f.payload, gb)
            out = [spec.element(c) for c in cof[: len(gens)]]
        check = spec.zero()
        for c, h in zip(out, gens):
            check = check + c * h
        assert check == f, "cofactor reconstruction failed"
        return out

    def equals(self, other: "Ideal") -> bool:
        return ideal_equals(self, other)


# operations -----------------------------------------------------------


def _check(*ideals: Ideal) -> RingSpec:
    spec = ideals[0].spec
    for a in ideals[1:]:
        if a.spec != spec:
            raise SpecMismatch(f"{spec} vs {a.spec}")
    return spec


def ideal_sum(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise ValueError("ideal_sum of an empty list")
    spec = _check(*ideals)
    return Ideal(spec, [g for a in ideals for g in a.generators])


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    spec = _check(a, b)
    return Ideal(spec, [x * y for x in a.generators for y in b.generators])


def principal(f: RingElement) -> Ideal:
    return Ideal(f.spec, [f])


def unit_ideal(spec: RingSpec) -> Ideal:
    return Ideal(spec, [spec.one()])


def ideal_membership(f: RingElement, a: Ideal, with_cofactors: bool = False):
    if f.spec != a.spec:
        raise SpecMismatch(f"{f.spec} vs {a.spec}")
    if not with_cofactors:
        return a.contains(f)
    cof = a.cofactors(f)
    return cof is not None, cof


def ideal_equals(a: Ideal, b: Ideal) -> bool:
    _check(a, b)
    return all(b.contains(g) for g in a.generators) and all(
        a.contains(g) for g in b.generators
    )


def ideal_contains_one(a: Ideal):
    """(True, cofactors expressing 1 over a.generators) or (False, None)."""
    cof = a.cofactors(a.spec.one())
    return cof is not None, cof


# quotients --------------------------------------------------------------


def _poly_intersection(fa: List[P.Poly], fb: List[P.Poly], nvars: int) -> List[P.Poly]:
    """Generators of (fa) ∩ (fb) via elimination of an auxiliary variable t."""
    if not fa or not fb:
        return []

    def lift(f, t_exp):
        return {(t_exp,) + e: c for e, c in f.items()}

    gens = [lift(f, 1) for f in fa]
    for f in fb:
        gens.append(P.sub(lift(f, 0), lift(f, 1)))
    gb = G.groebner(gens, nvars + 1, key=P.elimination_key(1))
    return [{e[1:]: c for e, c in g.items()} for g in gb.basis if all(e[0] == 0 for e in g)]


def _poly_quotient_principal(fa: List[P.Poly], b: P.Poly, nvars: int) -> List[P.Poly]:
    inter = _poly_intersection(fa, [b], nvars)
    out = []
    for g in inter:
        q = P.exact_div(g, b)
        assert q is not None
        out.append(q)
    return out


def _lattice_preimage(c: int, d: int, basis) -> List[List[int]]:
    """Z-basis of {f : f*(c + d s) in lattice(basis)}."""
    M = [[c, -5 * d] + [-row[0] for row in basis], [d, c] + [-row[1] for row in basis]]
    ker = L.kernel(M)
    H, _ = L.hnf([v[:2] for v in ker])
    return [r for r in H if any(r)]


def _lattice_intersection(b1, b2) -> List[List[int]]:
    if not b1 or not b2:
        return []
    M = [
        [r[0] for r in b1] + [-r[0] for r in b2],
        [r[1] for r in b1] + [-r[1] for r in b2],
    ]
    ker = L.kernel(M)
    vecs = [
        [sum(v[i] * b1[i][0] for i in range(len(b1))), sum(v[i] * b1[i][1] for i in range(len(b1)))]
        for v in ker
    ]
    H, _ = L.hnf(vecs) if vecs else ([], [])
    return [r for r in H if any(r)]


def ideal_quotient(a: Ideal, b: Ideal) -> Ideal:
    """(a : b) = {f : f*b ⊆ a}.  By convention (a : (0)) is the whole ring."""
    spec = _check(a, b)
    bgens = [g for g in b.generators if not g.is_zero()]
    if not bgens:
        return unit_ideal(spec)
    k = spec.kind
    if k is RingKind.INTEGERS:
        ca, cb = a.canonical(), b.canonical()
        if ca == 0:
            return Ideal(spec, [])
        return Ideal(spec, [spec.from_int(ca // math.gcd(ca, cb))])
    if k is RingKind.RATIONALS:
        return unit_ideal(spec) if a.canonical() else Ideal(spec, [])
    if k is RingKind.QUADRATIC:
        basis = [list(r) for r in a.canonical()]
        if not basis:
            return Ideal(spec, [])
        result = None
        for g in bgens:
            pre = _lattice_preimage(*g.payload, basis)
            result = pre if result is None else _lattice_intersection(result, pre)
        return Ideal(spec, [spec.quad(x, y) for x, y in result])
    nvars = spec.nvars
    fa = list(a.canonical().basis)
    result = None
    for g in bgens:
        q = _poly_quotient_principal(fa, g.payload, nvars)
        result = q if result is None else _poly_intersection(result, q, nvars)
        if k is RingKind.CUSPIDAL:
            result = result + [cusp_relation()]
    if result:
        result = G.groebner(result, nvars).basis
    gens = [spec.element(f) for f in result]
    return Ideal(spec, [g for g in gens if not g.is_zero()])


# radicals ---------------------------------------------------------------


def _smallest_positive_integer(basis) -> int:
    (h11, h12), (_, h22) = basis
    return h11 * h22 // math.gcd(h12, h22)


def _max_prime_exponent(n: int) -> int:
    best, p = 0, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        best = max(best, e)
        p += 1
    if n > 1:
        best = max(best, 1)
    return best


def quadratic_certified_exponent(a: Ideal) -> int:
    """An exponent k with: f in rad(a) implies f^k in a (nonzero a in Z[sqrt(-5)])."""
    n = _smallest_positive_integer(a.canonical())
    return max(1, 2 * _max_prime_exponent(n))


def radical_membership(f: RingElement, a: Ideal, bound: int = DEFAULT_RADICAL_BOUND) -> bool:
    spec = _check(a)
    if f.spec != spec:
        raise SpecMismatch(f"{f.spec} vs {spec}")
    k = spec.kind
    if f.is_zero():
        return True
    if a.is_zero():
        return False
    if k is RingKind.INTEGERS:
        c = spec.from_int(a.canonical())
        return exact_divide(f, squarefree_part(c)) is not None
    if k is RingKind.RATIONALS:
        return True
    if k is RingKind.QUADRATIC:
        power = f
        for _ in range(bound):
            if a.contains(power):
                return True
            power = power * f
        needed = quadratic_certified_exponent(a)
        if bound >= needed:
            return False
        raise RadicalInconclusive(f, a, bound, needed)
    # Rabinowitsch: 1 in a + (1 - t f) over Q[t, vars]
    nvars = spec.nvars
    gens = [{(0,) + e: c for e, c in g.items()} for g in a._poly_gens()]
    one_minus_tf = P.sub(P.const(1, nvars + 1), {(1,) + e: c for e, c in f.payload.items()})
    gb = G.groebner(gens + [one_minus_tf], nvars + 1)
    return gb.is_unit_ideal
