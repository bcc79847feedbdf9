"""Sparse multivariate polynomials over Q.

A polynomial is a plain ``dict`` mapping exponent tuples to nonzero
``Fraction`` coefficients.  Callers treat these dicts as immutable; every
function here returns a fresh dict.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

Exp = Tuple[int, ...]
Poly = Dict[Exp, Fraction]
OrderKey = Callable[[Exp], tuple]


def grevlex_key(e: Exp) -> tuple:
    # larger key == larger monomial
    return (sum(e),) + tuple(-x for x in reversed(e))


def elimination_key(n_elim: int) -> OrderKey:
    """Block order: the first ``n_elim`` variables (by total degree) dominate."""

    def key(e: Exp) -> tuple:
        head = e[:n_elim]
        return (sum(head),) + grevlex_key(head)[1:] + grevlex_key(e[n_elim:])

    return key


def zero_exp(nvars: int) -> Exp:
    return (0,) * nvars


def const(c, nvars: int) -> Poly:
    c = Fraction(c)
    return {zero_exp(nvars): c} if c else {}


def var(i: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}


def add(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = dict(f)
    for e, c in g.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def neg(f: Poly) -> Poly:
    return {e: -c for e, c in f.items()}


def sub(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for e, c in g.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def scale(f: Poly, c) -> Poly:
    if not c:
        return {}
    return {e: a * c for e, a in f.items()}


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def mul_term(f: Poly, e: Exp, c) -> Poly:
    if not c:
        return {}
    return {mono_mul(m, e): a * c for m, a in f.items()}


def mul(f: Poly, g: Poly) -> Poly:
    if len(f) > len(g):
        f, g = g, f
    out: Poly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = mono_mul(e1, e2)
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def power(f: Poly, k: int, nvars: int) -> Poly:
    result = const(1, nvars)
    base = f
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def lead(f: Poly, key: OrderKey = grevlex_key) -> Tuple[Exp, Fraction]:
    e = max(f, key=key)
    return e, f[e]


def monic(f: Poly, key: OrderKey = grevlex_key) -> Poly:
    if not f:
        return {}
    _, c = lead(f, key)
    return scale(f, 1 / c)


def is_constant(f: Poly) -> bool:
    return not f or (len(f) == 1 and not any(next(iter(f))))


def total_degree(f: Poly) -> int:
    return max((sum(e) for e in f), default=-1)


def degree_in(f: Poly, i: int) -> int:
    return max((e[i] for e in f), default=-1)


def derivative(f: Poly, i: int) -> Poly:
    out: Poly = {}
    for e, c in f.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
    return out


def exact_div(f: Poly, g: Poly, key: OrderKey = grevlex_key) -> Optional[Poly]:
    """Return q with f == q*g, or None when g does not divide f."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    ge, gc = lead(g, key)
    q: Poly = {}
    r = dict(f)
    while r:
        re, rc = lead(r, key)
        if not mono_divides(ge, re):
            return None
        e = mono_div(re, ge)
        c = rc / gc
        q[e] = q.get(e, 0) + c
        r = sub(r, mul_term(g, e, c))
    return {e: c for e, c in q.items() if c}


def coeffs_in(f: Poly, i: int) -> Dict[int, Poly]:
    """View f as a univariate polynomial in variable i."""
    out: Dict[int, Poly] = {}
    for e, c in f.items():
        d = e[i]
        stripped = e[:i] + (0,) + e[i + 1:]
        out.setdefault(d, {})[stripped] = c
    return out


def _shift(f: Poly, i: int, k: int) -> Poly:
    if not k:
        return f
    return {e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in f.items()}


def _content(f: Poly, i: int, nvars: int) -> Poly:
    g: Poly = {}
    for c in coeffs_in(f, i).values():
        g = gcd(g, c, nvars)
        if is_constant(g):
            break
    return g


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    db = degree_in(b, i)
    lb = coeffs_in(b, i)[db]
    r = a
    while r and degree_in(r, i) >= db:
        dr = degree_in(r, i)
        lr = coeffs_in(r, i)[dr]
        r = sub(mul(r, lb), mul(_shift(lr, i, dr - db), b))
    return r


def _primitive(f: Poly, i: int, nvars: int) -> Poly:
    c = _content(f, i, nvars)
    q = exact_div(f, c)
    assert q is not None
    # rational scaling is free over Q and keeps coefficients from growing
    return monic(q)


def gcd(f: Poly, g: Poly, nvars: int) -> Poly:
    """Monic gcd over Q[x_1..x_n] by recursive primitive remainder sequences."""
    if not f:
        return monic(g)
    if not g:
        return monic(f)
    if is_constant(f) or is_constant(g):
        return const(1, nvars)
    i = next(
        (k for k in range(nvars) if degree_in(f, k) > 0 or degree_in(g, k) > 0)
    )
    df, dg = degree_in(f, i), degree_in(g, i)
    if df == 0:
        return gcd(f, _content(g, i, nvars), nvars)
    if dg == 0:
        return gcd(_content(f, i, nvars), g, nvars)
    cf, cg = _content(f, i, nvars), _content(g, i, nvars)
    c = gcd(cf, cg, nvars)
    a = exact_div(f, cf)
    b = exact_div(g, cg)
    if degree_in(a, i) < degree_in(b, i):
        a, b = b, a
    while True:
        r = _prem(a, b, i)
        if not r:
            h = b
            break
        if degree_in(r, i) == 0:
            h = const(1, nvars)
            break
        a, b = b, _primitive(r, i, nvars)
    h = _primitive(h, i, nvars)
    return monic(mul(c, h))


def to_str(f: Poly, names, key: OrderKey = grevlex_key) -> str:
    if not f:
        return "0"
    parts = []
    for e in sorted(f, key=key, reverse=True):
        c = f[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out
