"""Stabilizability criteria built from full-size minors of a plant.

Every criterion reduces to ideal arithmetic: quotient ideals of the minors,
reduced minors and elementary factors (UFD kinds only), and generalized
elementary factors.  All of them must agree on a given plant; the cross-check
helpers here make that agreement testable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .matrices import (
    IndexSet,
    Matrix,
    adjugate,
    all_index_sets,
    det,
    fraction_matrix_inverse,
    full_size_minors,
)
from .plant import Plant, derive_left_fraction, scalar_denominator_form
from .rings import (
    DEFAULT_RADICAL_BOUND,
    Ideal,
    RadicalInconclusive,
    RingElement,
    RingKind,
    UnsupportedRing,
    associates,
    exact_divide,
    gcd,
    ideal_contains_one,
    ideal_equals,
    ideal_quotient,
    ideal_sum,
    lcm,
    normalize_associate,
    principal,
    radical_membership,
    squarefree_part,
)
from .rings import poly as P


class SingularSelection(ValueError):
    """The selected square block of T is singular (I is not in I*)."""


@dataclass
class WitnessTerm:
    """One summand r * x of the partition of unity, with x in ((t_I) : t)."""

    index_set: IndexSet
    x: RingElement
    r: RingElement

    @property
    def value(self) -> RingElement:
        return self.r * self.x


@dataclass
class StabilizabilityReport:
    verdict: Optional[bool]
    minors: Dict[IndexSet, RingElement]
    minor_ideal: Ideal
    quotient_ideals: Dict[IndexSet, Ideal]
    witness: Optional[List[WitnessTerm]] = None
    refutation: Optional[dict] = None

    def localization_elements(self) -> List[Tuple[IndexSet, RingElement]]:
        """Per index set, the sum of its witness terms (an element of its quotient)."""
        if not self.witness:
            return []
        spec = self.minor_ideal.spec
        sums: Dict[IndexSet, RingElement] = {}
        for w in self.witness:
            sums[w.index_set] = sums.get(w.index_set, spec.zero()) + w.value
        return [(I, x) for I, x in sums.items() if not x.is_zero()]


def _ideal_from(spec, elements) -> Ideal:
    return Ideal(spec, [e for e in elements])


# minor ideals --------------------------------------------------------------


def minor_ideal(p: Plant) -> Tuple[Ideal, Dict[IndexSet, RingElement]]:
    minors = full_size_minors(p.T)
    return Ideal(p.spec, minors.values()), minors


def minor_ideal_W(p: Plant) -> Tuple[Ideal, Dict[IndexSet, RingElement]]:
    if p.Dt is None:
        p = derive_left_fraction(p)
    minors = full_size_minors(p.W.T)
    return Ideal(p.spec, minors.values()), minors


# quotient-ideal test -------------------------------------------------------


def _refute(ideal: Ideal) -> dict:
    """Independent evidence that 1 is not in ``ideal``."""
    spec = ideal.spec
    k = spec.kind
    gens = [g for g in ideal.canonical_basis()]
    if k is RingKind.INTEGERS:
        c = ideal.canonical()
        return {"kind": "common-divisor", "value": str(c)}
    if k is RingKind.RATIONALS:
        return {"kind": "zero-ideal"}
    if k is RingKind.QUADRATIC:
        c = ideal.canonical()
        index = c[0][0] * c[1][1] if len(c) == 2 else 0
        return {"kind": "lattice-index", "value": str(index), "basis": [str(g) for g in gens]}
    if k is RingKind.POLYNOMIAL:
        point = common_zero(ideal.generators, spec.nvars)
        if point is not None:
            return {
                "kind": "common-zero",
                "point": {v: str(c) for v, c in zip(spec.variables, point)},
            }
    if k is RingKind.CUSPIDAL:
        # points (z^2, z^3) of the curve
        for z in _small_rationals():
            pt = (z * z, z * z * z)
            if all(_evaluate(g.payload, pt) == 0 for g in ideal.generators):
                return {"kind": "common-zero", "point": {"u": str(pt[0]), "v": str(pt[1])}}
    return {"kind": "groebner-basis", "basis": [str(g) for g in gens]}


def _small_rationals(bound: int = 3):
    seen = []
    for den in range(1, bound + 1):
        for num in range(-bound * den, bound * den + 1):
            q = Fraction(num, den)
            if q not in seen:
                seen.append(q)
    return sorted(seen, key=lambda q: (abs(q.numerator) + q.denominator, q))


def _evaluate(f: P.Poly, point) -> Fraction:
    total = Fraction(0)
    for e, c in f.items():
        term = c
        for x, k in zip(point, e):
            term *= x ** k
        total += term
    return total


def common_zero(gens: Sequence[RingElement], nvars: int, bound: int = 2):
    """A small rational point where every generator vanishes, if one exists."""
    values = _small_rationals(bound)
    for pt in itertools.product(values, repeat=nvars):
        if all(_evaluate(g.payload, pt) == 0 for g in gens):
            return pt
    return None


def _flatten(items):
    gens, owners = [], []
    for owner, q in items:
        for g in q.canonical_basis():
            gens.append(g)
            owners.append(owner)
    return gens, owners


SPARSE_WITNESS_LIMIT = 8


def _sparse_contains_one(a: Ideal):
    """Like ideal_contains_one, but prefers cofactors supported on one or two
    generators so that witnesses stay readable."""
    ok, cof = ideal_contains_one(a)
    gens = a.generators
    if not ok or len(gens) > SPARSE_WITNESS_LIMIT:
        return ok, cof
    zero = a.spec.zero()
    for size in (1, 2):
        for idx in itertools.combinations(range(len(gens)), size):
            sub_ok, sub = ideal_contains_one(Ideal(a.spec, [gens[i] for i in idx]))
            if sub_ok:
                out = [zero] * len(gens)
                for i, c in zip(idx, sub):
                    out[i] = c
                return True, out
    return ok, cof


def quotient_sum(p: Plant) -> StabilizabilityReport:
    t, minors = minor_ideal(p)
    quotients = {I: ideal_quotient(principal(tI), t) for I, tI in minors.items()}
    gens, owners = _flatten(quotients.items())
    total = Ideal(p.spec, gens)
    ok, cof = _sparse_contains_one(total)
    report = StabilizabilityReport(None, minors, t, quotients)
    if ok:
        report.witness = [
            WitnessTerm(I, g, c) for I, g, c in zip(owners, gens, cof) if not c.is_zero()
        ]
    else:
        report.refutation = _refute(total)
    return report


def is_stabilizable(p: Plant) -> StabilizabilityReport:
    report = quotient_sum(p)
    report.verdict = report.witness is not None
    return report


@dataclass
class ProjectivityResult:
    projective: bool
    quotients: List[Ideal]
    witness: Optional[List[Tuple[int, RingElement, RingElement]]] = None


def is_ideal_projective(gens: Sequence[RingElement]) -> ProjectivityResult:
    """Decide whether (a_1, ..., a_k) is projective via sum((a_i) : a) == R."""
    if not gens:
        raise ValueError("need at least one generator")
    spec = gens[0].spec
    a = Ideal(spec, gens)
    quotients = [ideal_quotient(principal(g), a) for g in gens]
    flat, owner = _flatten(enumerate(quotients))
    ok, cof = _sparse_contains_one(Ideal(spec, flat))
    witness = None
    if ok:
        witness = [(i, g, c) for i, g, c in zip(owner, flat, cof) if not c.is_zero()]
    return ProjectivityResult(ok, quotients, witness)


# reduced minors (UFD) -------------------------------------------------------


def _require_ufd(p: Plant) -> None:
    if not p.spec.is_ufd:
        raise UnsupportedRing(f"{p.spec} is not a unique factorization domain")


def minors_gcd(minors: Dict[IndexSet, RingElement]) -> RingElement:
    spec = next(iter(minors.values())).spec
    d = spec.zero()
    for t in minors.values():
        if not t.is_zero():
            d = t if d.is_zero() else gcd(d, t)
    return normalize_associate(d)


def reduced_minors(p: Plant) -> Dict[IndexSet, RingElement]:
    _require_ufd(p)
    _, minors = minor_ideal(p)
    d = minors_gcd(minors)
    out = {}
    for I, t in minors.items():
        q = exact_divide(t, d)
        assert q is not None
        out[I] = q
    return out


def reduced_minors_generate(p: Plant) -> bool:
    """Reduced minors generate the ring; checked against principality of t."""
    _require_ufd(p)
    a = reduced_minors(p)
    generate = Ideal(p.spec, a.values()).contains_one()
    t, minors = minor_ideal(p)
    is_principal = ideal_equals(t, principal(minors_gcd(minors)))
    if generate != is_principal:
        raise AssertionError("reduced-minor test disagrees with principality of the minor ideal")
    return generate


# elementary factors (UFD) ----------------------------------------------------


def _scalar_T(p: Plant) -> Tuple[Matrix, Matrix]:
    """T_d = [N'; d E_m] and W_d^t = [N'^t; d E_n] for P = N'/d."""
    Nd, d = scalar_denominator_form(p)
    Tm = Nd.vstack(Matrix.identity(p.spec, p.m).scale(d))
    Wt = Nd.T.vstack(Matrix.identity(p.spec, p.n).scale(d))
    return Tm, Wt


def _elementary(M: Matrix, I: IndexSet) -> RingElement:
    block = M.select_rows(I.zero_based())
    if det(block).is_zero():
        raise SingularSelection(f"selection {I} gives a singular block")
    F = M @ fraction_matrix_inverse(block)
    spec = M.spec
    den = spec.one()
    for x in F.entries():
        den = lcm(den, x.den)
    return squarefree_part(den)


def elementary_factor(p: Plant, I: IndexSet) -> RingElement:
    _require_ufd(p)
    Tm, _ = _scalar_T(p)
    return _elementary(Tm, I)


def elementary_factors(p: Plant):
    """(F, G): elementary factors of T over I* and of W over J*."""
    _require_ufd(p)
    Tm, Wt = _scalar_T(p)
    F, Gs = {}, {}
    for I in all_index_sets(p.m, p.m + p.n):
        if not det(Tm.select_rows(I.zero_based())).is_zero():
            F[I] = _elementary(Tm, I)
    for J in all_index_sets(p.n, p.m + p.n):
        if not det(Wt.select_rows(J.zero_based())).is_zero():
            Gs[J] = _elementary(Wt, J)
    return F, Gs


def elementary_factors_coprime(p: Plant) -> bool:
    F, Gs = elementary_factors(p)
    h = [f * g for f in F.values() for g in Gs.values()]
    return Ideal(p.spec, h).contains_one()


# generalized elementary factors ----------------------------------------------


def generalized_elementary_factor(p: Plant, I: IndexSet) -> Ideal:
    """Λ_PI = {λ : λ T = K Δ_I T for some K over the ring}.

    Over a domain with t_I != 0 the matrix K is forced to be
    λ T adj(Δ_I T) / t_I, so λ qualifies exactly when λ e ∈ (t_I) for every
    entry e of T adj(Δ_I T).  When t_I == 0 only λ = 0 works.
    """
    T = p.T
    block = T.select_rows(I.zero_based())
    tI = det(block)
    if tI.is_zero():
        return Ideal(p.spec, [])
    Tp = T @ adjugate(block)
    return ideal_quotient(principal(tI), Ideal(p.spec, Tp.entries()))


def gef_witness_matrix(p: Plant, I: IndexSet, lam: RingElement) -> Matrix:
    """The K with lam*T == K Δ_I T for lam in Λ_PI."""
    T = p.T
    block = T.select_rows(I.zero_based())
    tI = det(block)
    Tp = (T @ adjugate(block)).scale(lam)
    K = Tp.map(lambda e: exact_divide(e, tI))
    if any(x is None for x in K.entries()):
        raise ValueError(f"{lam} is not in the generalized elementary factor for {I}")
    return K


def generalized_elementary_factors(p: Plant) -> Dict[IndexSet, Ideal]:
    return {I: generalized_elementary_factor(p, I) for I in all_index_sets(p.m, p.m + p.n)}


def gef_sum_is_ring(p: Plant) -> bool:
    lams = generalized_elementary_factors(p)
    return ideal_sum(list(lams.values())).contains_one()


# radical cross-checks -----------------------------------------------------------


@dataclass
class CrossCheck:
    index_set: IndexSet
    radical_agreement: Optional[bool]  # None: inconclusive under the power bound
    reduced_minor_equals_quotient: Optional[bool] = None
    elementary_matches_reduced: Optional[bool] = None
    note: str = ""


@dataclass
class CrossCheckReport:
    checks: List[CrossCheck] = field(default_factory=list)
    radical_bound: int = DEFAULT_RADICAL_BOUND

    @property
    def violations(self) -> List[CrossCheck]:
        return [
            c
            for c in self.checks
            if False
            in (c.radical_agreement, c.reduced_minor_equals_quotient, c.elementary_matches_reduced)
        ]

    @property
    def inconclusive(self) -> List[CrossCheck]:
        return [c for c in self.checks if c.radical_agreement is None]


def _mutual_radical(a: Ideal, b: Ideal, bound: int) -> bool:
    return all(radical_membership(g, b, bound) for g in a.generators) and all(
        radical_membership(g, a, bound) for g in b.generators
    )


def radical_cross_checks(p: Plant, bound: int = DEFAULT_RADICAL_BOUND) -> CrossCheckReport:
    report = CrossCheckReport(radical_bound=bound)
    t, minors = minor_ideal(p)
    ufd = p.spec.is_ufd
    if ufd:
        a = reduced_minors(p)
        Tm, _ = _scalar_T(p)
    for I, tI in minors.items():
        q = ideal_quotient(principal(tI), t)
        lam = generalized_elementary_factor(p, I)
        try:
            rad = _mutual_radical(lam, q, bound)
        except RadicalInconclusive as exc:
            check = CrossCheck(I, None, note=str(exc))
        else:
            check = CrossCheck(I, rad)
        if ufd:
            check.reduced_minor_equals_quotient = ideal_equals(principal(a[I]), q)
            if not tI.is_zero():
                f = _elementary(Tm, I)
                check.elementary_matches_reduced = associates(
                    squarefree_part(f), squarefree_part(a[I])
                )
        report.checks.append(check)
    return report


# ideal isomorphism certificates ---------------------------------------------------


@dataclass
class IsomorphismCertificate:
    status: str  # "equal", "associate", "scaled", or "inconclusive"
    scale_left: Optional[RingElement] = None
    scale_right: Optional[RingElement] = None


def principal_generator(a: Ideal) -> Optional[RingElement]:
    """A single generator of a when one is found; None when a is not principal
    or principality could not be established."""
    spec = a.spec
    k = spec.kind
    if a.is_zero():
        return spec.zero()
    if k in (RingKind.INTEGERS, RingKind.RATIONALS):
        return a.canonical_basis()[0]
    if k is RingKind.POLYNOMIAL:
        basis = a.canonical_basis()
        return basis[0] if len(basis) == 1 else None
    if k is RingKind.QUADRATIC:
        return quadratic_principal_generator(a)
    for g in a.generators:
        if not g.is_zero() and ideal_equals(a, principal(g)):
            return g
    return None


def quadratic_principal_generator(a: Ideal) -> Optional[RingElement]:
    """Exact principality test in Z[sqrt(-5)]: a generator has norm equal to the
    lattice index of the ideal, and there are finitely many such elements."""
    (h11, _), (_, h22) = a.canonical()
    norm = h11 * h22
    spec = a.spec
    b = 0
    while 5 * b * b <= norm:
        rest = norm - 5 * b * b
        x = int(round(rest ** 0.5))
        for xa in {x - 1, x, x + 1}:
            if xa >= 0 and xa * xa == rest:
                for sa in (1, -1):
                    for sb in (1, -1):
                        g = spec.quad(sa * xa, sb * b)
                        if ideal_equals(a, principal(g)):
                            return g
        b += 1
    return None


def isomorphism_certificate(a: Ideal, b: Ideal) -> IsomorphismCertificate:
    """Certify a ≅ b as modules: equality, associate principal generators,
    or alpha*a == beta*b for generators alpha, beta found by search."""
    if ideal_equals(a, b):
        return IsomorphismCertificate("equal")
    ga, gb = principal_generator(a), principal_generator(b)
    if ga is not None and gb is not None and associates(ga, gb):
        return IsomorphismCertificate("associate", ga, gb)
    spec = a.spec
    left = [spec.one()] + [g for g in b.generators if not g.is_zero()]
    right = [spec.one()] + [g for g in a.generators if not g.is_zero()]
    for alpha in left:
        for beta in right:
            sa = Ideal(spec, [alpha * g for g in a.generators])
            sb = Ideal(spec, [beta * g for g in b.generators])
            if ideal_equals(sa, sb):
                return IsomorphismCertificate("scaled", alpha, beta)
    return IsomorphismCertificate("inconclusive")
