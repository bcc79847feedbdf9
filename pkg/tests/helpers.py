"""Random element generators and sympy conversions used as independent oracles."""

import itertools
import random
from fractions import Fraction

import sympy

from ringstab.matrices import Matrix
from ringstab.rings import RingKind, RingSpec

QQ = RingSpec.rationals()


def rand_poly(rng: random.Random, spec: RingSpec, terms: int = 3, deg: int = 2, coeff: int = 3):
    payload = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(0, deg) for _ in range(spec.nvars))
        c = Fraction(rng.randint(-coeff, coeff), rng.choice([1, 1, 2]))
        payload[e] = payload.get(e, 0) + c
    return spec.element({e: c for e, c in payload.items() if c})


def rand_elem(rng: random.Random, spec: RingSpec, size: int = 5):
    k = spec.kind
    if k is RingKind.INTEGERS:
        return spec.from_int(rng.randint(-size, size))
    if k is RingKind.RATIONALS:
        return spec.coerce(Fraction(rng.randint(-size, size), rng.randint(1, size)))
    if k is RingKind.QUADRATIC:
        return spec.quad(rng.randint(-size, size), rng.randint(-size, size))
    return rand_poly(rng, spec)


def rand_nonzero(rng: random.Random, spec: RingSpec, size: int = 5):
    while True:
        e = rand_elem(rng, spec, size)
        if not e.is_zero():
            return e


def rand_matrix(rng: random.Random, spec: RingSpec, r: int, c: int, size: int = 5):
    return Matrix(spec, [[rand_elem(rng, spec, size) for _ in range(c)] for _ in range(r)])


def sym_vars(spec: RingSpec):
    return sympy.symbols(spec.variables)


def to_sympy(f, spec: RingSpec):
    gens = sym_vars(spec)
    expr = sympy.Integer(0)
    for e, c in f.payload.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for g, k in zip(gens, e):
            term *= g ** k
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, spec: RingSpec):
    poly = sympy.Poly(sympy.expand(expr), *sym_vars(spec))
    return spec.element({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def perm_det(rows, zero):
    """Determinant by the permutation expansion (independent oracle)."""
    n = len(rows)
    total = zero
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = None
        for i in range(n):
            term = rows[i][perm[i]] if term is None else term * rows[i][perm[i]]
        total = total - term if inv % 2 else total + term
    return total
