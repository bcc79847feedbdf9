"""Controller synthesis by local coprime factorization and gluing.

Pipeline: a stabilizability witness sum r_i x_i = 1 gives localization
elements x'_i.  Over each localization the plant has a coprime factorization
read off from T adj(Δ_I T) / t_I.  The local Bezout data are glued with the
partition of unity into one matrix over the ring whose blocks define the
controller; when its lower-right block is singular (or Z-singular) one local
factor pair is adjusted by a determinant repair step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .criteria import (
    IsomorphismCertificate,
    StabilizabilityReport,
    is_stabilizable,
    isomorphism_certificate,
)
from .matrices import (
    FractionElement,
    IndexSet,
    Matrix,
    adjugate,
    as_fraction,
    block,
    common_denominator,
    det,
    fraction_matrix_inverse,
    full_size_minors,
    tau,
)
from .plant import Plant, derive_left_fraction, fraction_in_ring, scalar_denominator_form, transfer_matrix
from .rings import Ideal, RingElement, exact_divide, ideal_contains_one

DEFAULT_KDIV = 32


class SynthesisError(RuntimeError):
    pass


class NotStabilizable(SynthesisError):
    pass


class DivisibilityBoundExceeded(SynthesisError):
    pass


class ZeroMinor(SynthesisError):
    pass


class NoValidMinor(SynthesisError):
    pass


class RepairFailed(SynthesisError):
    pass


class SingularLoop(ArithmeticError):
    pass


# local factorization -----------------------------------------------------------


@dataclass
class LocalFactorization:
    """T adj(Δ_I T) / t_I over the localization at x, as numerators over x^k.

    N0 = N0num / x^k and D0 = D0num / x^k; [Yt Xt] = Δ_I.
    """

    index_set: IndexSet
    x: RingElement
    k: int
    N0num: Matrix
    D0num: Matrix
    Yt: Matrix
    Xt: Matrix

    @property
    def clearing_power(self) -> RingElement:
        return self.x ** self.k

    def N0(self) -> Matrix:
        q = self.clearing_power
        return self.N0num.map(lambda e: FractionElement(e, q))

    def D0(self) -> Matrix:
        q = self.clearing_power
        return self.D0num.map(lambda e: FractionElement(e, q))

    def bezout_holds(self) -> bool:
        lhs = self.Yt @ self.N0num + self.Xt @ self.D0num
        m = self.Xt.nrows
        return lhs == Matrix.identity(lhs.spec, m).scale(self.clearing_power)


def _split_delta(I: IndexSet, n: int, m: int, spec) -> Tuple[Matrix, Matrix]:
    one, zero = spec.one(), spec.zero()
    rows = [[one if c == i - 1 else zero for c in range(n + m)] for i in I]
    full = Matrix(spec, rows)
    return full.submatrix(range(m), range(n)), full.submatrix(range(m), range(n, n + m))


def local_coprime_factorization(
    p: Plant, I0: IndexSet, x: RingElement, kdiv: int = DEFAULT_KDIV
) -> LocalFactorization:
    T = p.T
    blk = T.select_rows(I0.zero_based())
    t0 = det(blk)
    if t0.is_zero():
        raise ZeroMinor(f"t_{I0} = 0")
    if x.is_zero():
        raise ValueError("localization element must be nonzero")
    Tp = T @ adjugate(blk)
    found = []
    k = 0
    for e in Tp.entries():
        xe = e
        for j in range(kdiv + 1):
            c = exact_divide(xe, t0)
            if c is not None:
                found.append((j, c))
                k = max(k, j)
                break
            xe = xe * x
        else:
            raise DivisibilityBoundExceeded(
                f"no k <= {kdiv} with ({x})^k * ({e}) in ({t0}) for index set {I0}"
            )
    cols = Tp.ncols
    vals = [c * x ** (k - j) for j, c in found]
    rows = [vals[i * cols:(i + 1) * cols] for i in range(Tp.nrows)]
    num = Matrix(p.spec, rows)
    Yt, Xt = _split_delta(I0, p.n, p.m, p.spec)
    lf = LocalFactorization(
        I0,
        x,
        k,
        num.submatrix(range(p.n), range(cols)),
        num.submatrix(range(p.n, p.n + p.m), range(cols)),
        Yt,
        Xt,
    )
    assert lf.bezout_holds(), "local Bezout identity failed"
    return lf


# determinant repair --------------------------------------------------------------


def repair_determinant(A: Matrix, B: Matrix, avoid: Ideal) -> Matrix:
    """R with det(A + R B) outside ``avoid``.

    Picks a full-size minor of [A; B] outside ``avoid`` with as few rows from B
    as possible and pairs the dropped rows of A with the chosen rows of B.
    """
    m = A.nrows
    k = B.nrows
    spec = A.spec
    if A.shape != (m, m) or B.ncols != m:
        raise ValueError("A must be square and B must have as many columns as A")
    R = [[spec.zero()] * k for _ in range(m)]
    if not avoid.contains(det(A)):
        return Matrix(spec, R)
    stacked = A.vstack(B)
    for j in range(1, min(k, m) + 1):
        for rows in itertools.combinations(range(m + k), m):
            b_rows = [r - m for r in rows if r >= m]
            if len(b_rows) != j:
                continue
            if avoid.contains(det(stacked.select_rows(rows))):
                continue
            dropped = [i for i in range(m) if i not in rows]
            for i, b in zip(dropped, b_rows):
                R[i][b] = spec.one()
            Rm = Matrix(spec, R)
            value = det(A + Rm @ B)
            assert not avoid.contains(value), "repair postcondition failed"
            return Rm
    raise NoValidMinor("every full-size minor of the stacked matrix lies in the avoided ideal")


# H(P, C) ----------------------------------------------------------------------------


def h_matrix(P: Matrix, C: Matrix) -> Matrix:
    """[[(E+PC)^-1, -P(E+CP)^-1], [C(E+PC)^-1, (E+CP)^-1]]."""
    P = P.to_fractions()
    C = C.to_fractions()
    n, m = P.shape
    if C.shape != (m, n):
        raise ValueError(f"controller must be {m}x{n}, got {C.shape}")
    spec = P.spec
    En = Matrix.identity(spec, n).to_fractions()
    Em = Matrix.identity(spec, m).to_fractions()
    loop = En + P @ C
    if as_fraction(det(loop)).is_zero():
        raise SingularLoop("det(E + PC) = 0")
    inv_n = fraction_matrix_inverse(loop)
    inv_m = fraction_matrix_inverse(Em + C @ P)
    return block([[inv_n, -(P @ inv_m)], [C @ inv_n, inv_m]])


@dataclass
class ControllerCertificate:
    controller: Matrix
    H: Optional[Matrix]
    all_entries_in_ring: bool
    det_condition: bool
    repair_applied: bool = False
    transcript: List[dict] = field(default_factory=list)
    offending: List[Tuple[int, int, str]] = field(default_factory=list)
    closed_loop_causal: Optional[bool] = None

    @property
    def stabilizing(self) -> bool:
        return self.det_condition and self.all_entries_in_ring


def verify_stabilizing(p: Plant, C: Matrix) -> ControllerCertificate:
    """Check that C stabilizes p, from P and C alone."""
    P = transfer_matrix(p)
    try:
        H = h_matrix(P, C)
    except SingularLoop:
        return ControllerCertificate(C, None, False, False)
    offending = []
    rows = []
    for i, row in enumerate(H.rows):
        out = []
        for j, e in enumerate(row):
            if fraction_in_ring(e):
                e = FractionElement(e.to_ring(), reduce=False)
            else:
                offending.append((i + 1, j + 1, str(e)))
            out.append(e)
        rows.append(out)
    H = Matrix(p.spec, rows)
    cert = ControllerCertificate(C, H, not offending, True, offending=offending)
    if p.causality_ideal is not None and not offending:
        # det(E+PC)^-1 = det(H11); the loop is causal when it stays outside Z
        h11 = H.submatrix(range(p.n), range(p.n)).to_ring()
        cert.closed_loop_causal = not p.causality_ideal.contains(det(h11))
    return cert


# gluing -------------------------------------------------------------------------------


def _left_local_factors(p: Plant, I1: IndexSet, x: RingElement, kdiv: int):
    """Left fraction (Dn, Nn) over the ring from the extraction run on W^t."""
    if p.Dt is None:
        p = derive_left_fraction(p)
    transposed = Plant(p.spec, p.n, p.m, p.Nt.T, p.Dt.T)
    J = tau(I1, p.m, p.n)
    lf = local_coprime_factorization(transposed, J, x, kdiv)
    return lf.D0num.T, lf.N0num.T, J, lf.k


def _blocks(p: Plant, parts):
    """Blocks of the glued matrix from (rho, N0num, D0num, Yt, Xt) tuples."""
    spec = p.spec
    H11 = Matrix.identity(spec, p.n)
    H12 = Matrix.zeros(spec, p.n, p.m)
    H21 = Matrix.zeros(spec, p.m, p.n)
    H22 = Matrix.zeros(spec, p.m, p.m)
    for rho, Nn, Dn, Yt, Xt in parts:
        H11 = H11 - (Nn @ Yt).scale(rho)
        H12 = H12 - (Nn @ Xt).scale(rho)
        H21 = H21 + (Dn @ Yt).scale(rho)
        H22 = H22 + (Dn @ Xt).scale(rho)
    return H11, H12, H21, H22


def glue_controller(
    p: Plant, report: Optional[StabilizabilityReport] = None, kdiv: int = DEFAULT_KDIV
) -> ControllerCertificate:
    if report is None:
        report = is_stabilizable(p)
    if not report.verdict:
        raise NotStabilizable("the plant is not stabilizable")
    spec = p.spec
    transcript: List[dict] = []
    locals_: List[LocalFactorization] = []
    for I, xp in report.localization_elements():
        lf = local_coprime_factorization(p, I, xp, kdiv)
        locals_.append(lf)
        transcript.append(
            {"step": "local-factorization", "index_set": str(I), "x": str(xp), "k": lf.k}
        )
    if all(lf.k == 1 for lf in locals_):
        rhos = [spec.one()] * len(locals_)
    else:
        ok, rhos = ideal_contains_one(Ideal(spec, [lf.clearing_power for lf in locals_]))
        if not ok:
            raise SynthesisError("clearing powers are not comaximal")
    transcript.append(
        {
            "step": "partition-of-unity",
            "terms": [
                {"index_set": str(lf.index_set), "rho": str(r), "q": str(lf.clearing_power)}
                for lf, r in zip(locals_, rhos)
            ],
        }
    )
    parts = [[r, lf.N0num, lf.D0num, lf.Yt, lf.Xt] for lf, r in zip(locals_, rhos)]
    H11, H12, H21, H22 = _blocks(p, parts)

    Z = p.causality_ideal
    causal_plant = Z is not None and not Z.contains(det(p.D))
    avoid = Z if causal_plant else Ideal(spec, [])
    target = "outside Z" if causal_plant else "nonzero"
    transcript.append({"step": "determinant-target", "det(H22)": target})

    repaired = False
    if avoid.contains(det(H22)):
        weights = [r * lf.clearing_power for lf, r in zip(locals_, rhos)]
        # sum of weights is 1, which lies outside any proper ideal
        pick = next((i for i, w in enumerate(weights) if not avoid.contains(w)), None)
        if pick is None:
            raise SynthesisError("no partition weight outside the avoided ideal")
        lf, rho, w = locals_[pick], rhos[pick], weights[pick]
        wD = lf.D0num.scale(rho)
        c = w * det(wD)
        Dn, Nn, J, kw = _left_local_factors(p, lf.index_set, lf.x, kdiv)
        try:
            Rp = repair_determinant(H22, (-Nn).scale(c), avoid)
        except NoValidMinor as exc:
            raise RepairFailed(str(exc)) from exc
        R = (adjugate(wD) @ Rp).scale(w)
        parts[pick][4] = lf.Xt - R @ Nn
        parts[pick][3] = lf.Yt + R @ Dn
        H11, H12, H21, H22 = _blocks(p, parts)
        if avoid.contains(det(H22)):
            raise RepairFailed("repair left det(H22) in the avoided ideal")
        repaired = True
        transcript.append(
            {
                "step": "repair",
                "index_set": str(lf.index_set),
                "left_index_set": str(J),
                "R'": [[str(e) for e in row] for row in Rp.rows],
            }
        )

    C = fraction_matrix_inverse(H22) @ H21.to_fractions()
    cert = verify_stabilizing(p, C)
    cert.repair_applied = repaired
    cert.transcript = transcript
    glued = block([[H11, H12], [H21, H22]])
    if cert.H is None or cert.H != glued:
        raise SynthesisError("glued matrix does not reproduce H(P, C)")
    if not cert.stabilizing:
        raise SynthesisError("synthesized controller failed verification")
    return cert


def synthesize(p: Plant, kdiv: int = DEFAULT_KDIV) -> ControllerCertificate:
    return glue_controller(p, is_stabilizable(p), kdiv)


# minor ideals of the closed loop ------------------------------------------------------


@dataclass
class MinorProductReport:
    plant_ideal: Ideal
    controller_ideal: Ideal
    product_ideal: Ideal
    closed_loop_ideal: Ideal
    certificate: IsomorphismCertificate


def controller_fraction(C: Matrix) -> Tuple[Matrix, RingElement]:
    """(Nc, dc) with C = Nc / dc and Nc over the ring."""
    if not C.is_fraction:
        return C, C.spec.one()
    d, M = common_denominator(C)
    return M, d


def closed_loop_fraction(p: Plant, C: Matrix) -> Tuple[Matrix, Matrix]:
    """(S, Q) over the ring with H(P, C) = S Q^-1."""
    spec = p.spec
    Nd, d = scalar_denominator_form(p)
    Nc, dc = controller_fraction(C)
    En = Matrix.identity(spec, p.n)
    Em = Matrix.identity(spec, p.m)
    Q = block([[En.scale(dc), Nd], [-Nc, Em.scale(d)]])
    S = block(
        [
            [En.scale(dc), Matrix.zeros(spec, p.n, p.m)],
            [Matrix.zeros(spec, p.m, p.n), Em.scale(d)],
        ]
    )
    if det(Q).is_zero():
        raise SingularLoop("det(E + PC) = 0")
    return S, Q


def minor_ideal_product_check(p: Plant, C: Matrix) -> MinorProductReport:
    spec = p.spec
    Nd, d = scalar_denominator_form(p)
    Nc, dc = controller_fraction(C)
    tP = full_size_minors(Nd.vstack(Matrix.identity(spec, p.m).scale(d)))
    tC = full_size_minors(Nc.vstack(Matrix.identity(spec, p.n).scale(dc)))
    S, Q = closed_loop_fraction(p, C)
    tH = full_size_minors(S.vstack(Q))
    a = Ideal(spec, tP.values())
    b = Ideal(spec, tC.values())
    prod = Ideal(spec, [x * y for x in tP.values() for y in tC.values()])
    h = Ideal(spec, tH.values())
    return MinorProductReport(a, b, prod, h, isomorphism_certificate(h, prod))
