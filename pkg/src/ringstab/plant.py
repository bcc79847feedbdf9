"""Plants as matrix fractions over a ring, plus causality predicates."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .matrices import (
    DimensionError,
    FractionElement,
    Matrix,
    adjugate,
    det,
)
from .rings import Ideal, RingKind, RingSpec
from .rings import arith

DEFAULT_MAX_SIZE = 4


class PlantError(ValueError):
    pass


class SingularDenominator(PlantError):
    pass


class CausalityIdealMissing(PlantError):
    pass


class SizeLimitExceeded(PlantError):
    pass


@dataclass(frozen=True)
class Plant:
    """P = N D^{-1} with N (n x m) and D (m x m) over the ring.

    ``Dt``/``Nt`` hold an optional left fraction P = Dt^{-1} Nt, and
    ``causality_ideal`` the proper ideal Z that defines causality.
    """

    spec: RingSpec
    m: int
    n: int
    N: Matrix
    D: Matrix
    Dt: Optional[Matrix] = None
    Nt: Optional[Matrix] = None
    causality_ideal: Optional[Ideal] = None

    @property
    def T(self) -> Matrix:
        """The stacked (n+m) x m matrix [N; D]."""
        return self.N.vstack(self.D)

    @property
    def W(self) -> Matrix:
        """The n x (n+m) matrix [Nt Dt]; requires a left fraction."""
        if self.Dt is None:
            return derive_left_fraction(self).W
        return self.Nt.hstack(self.Dt)

    def with_causality(self, Z: Optional[Ideal]) -> "Plant":
        _check_causality_ideal(self.spec, Z)
        return replace(self, causality_ideal=Z)


def _check_causality_ideal(spec: RingSpec, Z: Optional[Ideal]) -> None:
    if Z is None:
        return
    if Z.spec != spec:
        raise PlantError("causality ideal lives in a different ring")
    if Z.contains_one():
        raise PlantError("causality ideal must be proper (it contains 1)")


def plant_from_right_fraction(
    N: Matrix,
    D: Matrix,
    Z: Optional[Ideal] = None,
    max_size: int = DEFAULT_MAX_SIZE,
) -> Plant:
    spec = N.spec
    if D.spec != spec:
        raise PlantError("N and D live in different rings")
    if N.is_fraction or D.is_fraction:
        raise PlantError("N and D must be matrices over the ring")
    n, m = N.shape
    if D.shape != (m, m):
        raise DimensionError(f"D must be {m}x{m} for an N of shape {N.shape}, got {D.shape}")
    if m > max_size or n > max_size:
        raise SizeLimitExceeded(f"plant size {n}x{m} exceeds the limit {max_size}")
    if det(D).is_zero():
        raise SingularDenominator("denominator matrix D is singular")
    _check_causality_ideal(spec, Z)
    return Plant(spec, m, n, N, D, causality_ideal=Z)


def derive_left_fraction(p: Plant) -> Plant:
    """Common-denominator left fraction: Dt = det(D) E_n, Nt = N adj(D)."""
    d = det(p.D)
    one_n = Matrix.identity(p.spec, p.n)
    Dt = one_n.scale(d)
    Nt = p.N @ adjugate(p.D)
    return replace(p, Dt=Dt, Nt=Nt)


def scalar_denominator_form(p: Plant):
    """(N adj(D), det(D)) so that P = N' / d with a scalar denominator."""
    return p.N @ adjugate(p.D), det(p.D)


def _require_z(p: Plant) -> Ideal:
    if p.causality_ideal is None:
        raise CausalityIdealMissing("no causality ideal configured for this plant")
    return p.causality_ideal


def is_causal(p: Plant) -> bool:
    Z = _require_z(p)
    return not Z.contains(det(p.D))


def is_strictly_causal(p: Plant) -> bool:
    """Representative-level test: det(D) outside Z and every entry of N in Z.

    A True answer is certain; False may be conservative because the test runs
    on the given fraction, not on reduced entries.
    """
    Z = _require_z(p)
    if Z.contains(det(p.D)):
        return False
    return all(Z.contains(x) for x in p.N.entries())


def fraction_in_ring(f: FractionElement) -> bool:
    if f.is_zero() or f.den == f.spec.one():
        return True
    if f.spec.kind is RingKind.CUSPIDAL:
        return Ideal(f.spec, [f.den]).contains(f.num)
    return arith.exact_divide(f.num, f.den) is not None


def transfer_matrix(p: Plant) -> Matrix:
    """P = N adj(D) / det(D) over the fraction field."""
    d = det(p.D)
    Nadj = p.N @ adjugate(p.D)
    return Nadj.map(lambda x: FractionElement(x, d))
