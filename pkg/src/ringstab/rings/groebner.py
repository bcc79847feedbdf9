"""Buchberger's algorithm over Q with optional cofactor tracking.

When ``track=True`` every basis element carries a row of cofactors over the
input generators, so that ``basis[k] == sum(rows[k][j] * gens[j])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import poly as P
from .poly import Exp, OrderKey, Poly, grevlex_key


@dataclass
class GroebnerBasis:
    basis: List[Poly]
    rows: Optional[List[List[Poly]]]
    nvars: int
    key: OrderKey
    ngens: int = 0

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.basis) == 1 and P.is_constant(self.basis[0])


def _isub_term(p: Poly, g: Poly, m: Exp, c: Fraction) -> None:
    for e, a in g.items():
        t = P.mono_mul(e, m)
        s = p.get(t, 0) - a * c
        if s:
            p[t] = s
        else:
            p.pop(t, None)


def _row_isub(row: List[Poly], other: List[Poly], m: Exp, c: Fraction) -> None:
    for j, g in enumerate(other):
        if g:
            h = dict(row[j])
            _isub_term(h, g, m, c)
            row[j] = h


def _reduce(f: Poly, basis, lms, key, row=None, rows=None, quot=None):
    """Fully reduce ``f``; mutates ``row``/``quot`` when given."""
    p = dict(f)
    r: Poly = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for k, lm in enumerate(lms):
            if P.mono_divides(lm, e):
                m = P.mono_div(e, lm)
                _isub_term(p, basis[k], m, c)
                if row is not None:
                    _row_isub(row, rows[k], m, c)
                if quot is not None:
                    quot[k][m] = quot[k].get(m, 0) + c
                break
        else:
            r[e] = c
            del p[e]
    return r


def groebner(
    gens: Sequence[Poly],
    nvars: int,
    key: OrderKey = grevlex_key,
    track: bool = False,
) -> GroebnerBasis:
    ngens = len(gens)
    basis: List[Poly] = []
    rows: Optional[List[List[Poly]]] = [] if track else None
    lms: List[Exp] = []

    def unit_row(j: int) -> List[Poly]:
        row = [{} for _ in range(ngens)]
        row[j] = P.const(1, nvars)
        return row

    pairs = set()

    def add(g: Poly, row) -> None:
        e, c = P.lead(g, key)
        inv = 1 / c
        g = P.scale(g, inv)
        if track:
            row = [P.scale(h, inv) for h in row]
            rows.append(row)
        k = len(basis)
        basis.append(g)
        lms.append(e)
        for i in range(k):
            pairs.add((i, k))

    for j, g in enumerate(gens):
        if g:
            add(dict(g), unit_row(j) if track else None)

    while pairs:
        i, j = min(pairs, key=lambda ij: key(P.mono_lcm(lms[ij[0]], lms[ij[1]])))
        pairs.discard((i, j))
        lcm = P.mono_lcm(lms[i], lms[j])
        if P.mono_mul(lms[i], lms[j]) == lcm:
            continue
        if any(
            k != i
            and k != j
            and P.mono_divides(lms[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        mi = P.mono_div(lcm, lms[i])
        mj = P.mono_div(lcm, lms[j])
        s = P.mul_term(basis[i], mi, Fraction(1))
        _isub_term(s, basis[j], mj, Fraction(1))
        row = None
        if track:
            row = [P.mul_term(h, mi, Fraction(1)) for h in rows[i]]
            _row_isub(row, rows[j], mj, Fraction(1))
        h = _reduce(s, basis, lms, key, row, rows)
        if h:
            add(h, row)
            if P.is_constant(h):
                break

    gb = _interreduce(basis, rows, lms, nvars, key)
    gb.ngens = ngens
    return gb


def _interreduce(basis, rows, lms, nvars, key) -> GroebnerBasis:
    keep = []
    for k, e in enumerate(lms):
        if P.is_constant(basis[k]):
            keep = [k]
            break
        dominated = any(
            P.mono_divides(lms[j], e) and (lms[j] != e or j < k)
            for j in range(len(lms))
            if j != k
        )
        if not dominated:
            keep.append(k)
    G = [basis[k] for k in keep]
    R = [rows[k] for k in keep] if rows is not None else None
    L = [lms[k] for k in keep]
    out, out_rows = [], []
    for idx in range(len(G)):
        others = [G[j] for j in range(len(G)) if j != idx]
        other_lms = [L[j] for j in range(len(G)) if j != idx]
        other_rows = (
            [R[j] for j in range(len(G)) if j != idx] if R is not None else None
        )
        row = list(R[idx]) if R is not None else None
        g = _reduce(G[idx], others, other_lms, key, row, other_rows)
        e, c = P.lead(g, key)
        out.append(P.scale(g, 1 / c))
        if R is not None:
            out_rows.append([P.scale(h, 1 / c) for h in row])
        # later elements reduce against the already reduced ones
        G[idx] = out[-1]
        if R is not None:
            R[idx] = out_rows[-1]
    order = sorted(range(len(out)), key=lambda k: key(P.lead(out[k], key)[0]), reverse=True)
    return GroebnerBasis(
        basis=[out[k] for k in order],
        rows=[out_rows[k] for k in order] if rows is not None else None,
        nvars=nvars,
        key=key,
    )


def normal_form(f: Poly, gb: GroebnerBasis, with_quotients: bool = False):
    """Remainder of ``f`` modulo the basis, optionally with division quotients."""
    lms = [P.lead(g, gb.key)[0] for g in gb.basis]
    quot = [dict() for _ in gb.basis] if with_quotients else None
    r = _reduce(f, gb.basis, lms, gb.key, quot=quot)
    if with_quotients:
        return r, [{e: c for e, c in q.items() if c} for q in quot]
    return r


def membership_cofactors(f: Poly, gb: GroebnerBasis) -> Optional[List[Poly]]:
    """Cofactors of ``f`` over the original generators, or None if f is not a member."""
    assert gb.rows is not None, "basis was computed without tracking"
    r, quot = normal_form(f, gb, with_quotients=True)
    if r:
        return None
    ngens = gb.ngens
    out: List[Poly] = [{} for _ in range(ngens)]
    for q, row in zip(quot, gb.rows):
        if not q:
            continue
        for j in range(ngens):
            if row[j]:
                out[j] = P.add(out[j], P.mul(q, row[j]))
    return out
