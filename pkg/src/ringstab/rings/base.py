"""Ring descriptions and exact elements for the supported ring tower."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from . import poly as P

CUSP_RELATION_VARS = ("u", "v")


class RingKind(enum.Enum):
    INTEGERS = "integers"
    RATIONALS = "rationals"
    QUADRATIC = "quadratic"  # Z[sqrt(-5)]
    POLYNOMIAL = "polynomial"  # Q[x_1, ..., x_k]
    CUSPIDAL = "cuspidal"  # Q[u, v] / (u^3 - v^2)  ~  Q[z^2, z^3]


class SpecMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    kind: RingKind
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is RingKind.CUSPIDAL and not self.variables:
            object.__setattr__(self, "variables", CUSP_RELATION_VARS)
        if self.kind in (RingKind.POLYNOMIAL, RingKind.CUSPIDAL):
            if not self.variables:
                raise ValueError("polynomial rings need at least one variable")
            if len(set(self.variables)) != len(self.variables):
                raise ValueError(f"duplicate variable names: {self.variables}")
            if self.kind is RingKind.CUSPIDAL and len(self.variables) != 2:
                raise ValueError("the cuspidal ring has exactly two variables")
        elif self.variables:
            raise ValueError(f"{self.kind.value} ring takes no variables")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(RingKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "RingSpec":
        return cls(RingKind.RATIONALS)

    @classmethod
    def quadratic(cls) -> "RingSpec":
        return cls(RingKind.QUADRATIC)

    @classmethod
    def polynomial(cls, *names: str) -> "RingSpec":
        return cls(RingKind.POLYNOMIAL, tuple(names))

    @classmethod
    def cuspidal(cls) -> "RingSpec":
        return cls(RingKind.CUSPIDAL)

    @property
    def is_polynomial(self) -> bool:
        """True for kinds whose ideals are handled by Groebner bases."""
        return self.kind in (RingKind.POLYNOMIAL, RingKind.CUSPIDAL)

    @property
    def is_ufd(self) -> bool:
        return self.kind in (RingKind.INTEGERS, RingKind.RATIONALS, RingKind.POLYNOMIAL)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        if self.kind is RingKind.POLYNOMIAL:
            return f"Q[{','.join(self.variables)}]"
        return {
            RingKind.INTEGERS: "Z",
            RingKind.RATIONALS: "Q",
            RingKind.QUADRATIC: "Z[sqrt(-5)]",
            RingKind.CUSPIDAL: "Q[u,v]/(u^3-v^2)",
        }[self.kind]

    # constructors -----------------------------------------------------

    def element(self, payload) -> "RingElement":
        return RingElement(self, _normalize(self, payload))

    def from_int(self, k: int) -> "RingElement":
        k = int(k)
        if self.kind is RingKind.INTEGERS:
            return RingElement(self, k)
        if self.kind is RingKind.RATIONALS:
            return RingElement(self, Fraction(k))
        if self.kind is RingKind.QUADRATIC:
            return RingElement(self, (k, 0))
        return RingElement(self, P.const(k, self.nvars))

    def zero(self) -> "RingElement":
        return self.from_int(0)

    def one(self) -> "RingElement":
        return self.from_int(1)

    def var(self, name: str) -> "RingElement":
        if not self.is_polynomial:
            raise ValueError(f"{self} has no variables")
        try:
            i = self.variables.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} in {self}") from None
        return self.element(P.var(i, self.nvars))

    def quad(self, a: int, b: int) -> "RingElement":
        if self.kind is not RingKind.QUADRATIC:
            raise ValueError("quad() needs the quadratic ring")
        return RingElement(self, (int(a), int(b)))

    def coerce(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.spec != self:
                raise SpecMismatch(f"element of {x.spec} used in {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction) and self.kind in (RingKind.RATIONALS, RingKind.POLYNOMIAL, RingKind.CUSPIDAL):
            return self.element(P.const(x, self.nvars) if self.is_polynomial else x)
        raise TypeError(f"cannot coerce {x!r} into {self}")


def _cusp_normalize(f: P.Poly) -> P.Poly:
    out: P.Poly = {}
    for (i, j), c in f.items():
        e = (i % 3, j + 2 * (i // 3))
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _normalize(spec: RingSpec, payload):
    kind = spec.kind
    if kind is RingKind.INTEGERS:
        if isinstance(payload, Fraction):
            if payload.denominator != 1:
                raise ValueError(f"{payload} is not an integer")
            payload = payload.numerator
        return int(payload)
    if kind is RingKind.RATIONALS:
        return Fraction(payload)
    if kind is RingKind.QUADRATIC:
        a, b = payload
        return (int(a), int(b))
    f = {tuple(e): Fraction(c) for e, c in dict(payload).items() if c}
    if any(len(e) != spec.nvars for e in f):
        raise ValueError("exponent arity does not match the ring")
    if kind is RingKind.CUSPIDAL:
        f = _cusp_normalize(f)
    return f


class RingElement:
    """Immutable exact element of a supported ring."""

    __slots__ = ("spec", "payload", "_hash")

    def __init__(self, spec: RingSpec, payload):
        self.spec = spec
        self.payload = payload
        self._hash = None

    # arithmetic ---------------------------------------------------------

    def _other(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other
        return self.spec.coerce(other)

    def __add__(self, other):
        o = self._other(other)
        k = self.spec.kind
        if k in (RingKind.INTEGERS, RingKind.RATIONALS):
            return RingElement(self.spec, self.payload + o.payload)
        if k is RingKind.QUADRATIC:
            (a, b), (c, d) = self.payload, o.payload
            return RingElement(self.spec, (a + c, b + d))
        return RingElement(self.spec, P.add(self.payload, o.payload))

    __radd__ = __add__

    def __neg__(self):
        k = self.spec.kind
        if k in (RingKind.INTEGERS, RingKind.RATIONALS):
            return RingElement(self.spec, -self.payload)
        if k is RingKind.QUADRATIC:
            a, b = self.payload
            return RingElement(self.spec, (-a, -b))
        return RingElement(self.spec, P.neg(self.payload))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        k = self.spec.kind
        if k in (RingKind.INTEGERS, RingKind.RATIONALS):
            return RingElement(self.spec, self.payload * o.payload)
        if k is RingKind.QUADRATIC:
            (a, b), (c, d) = self.payload, o.payload
            return RingElement(self.spec, (a * c - 5 * b * d, a * d + b * c))
        prod = P.mul(self.payload, o.payload)
        if k is RingKind.CUSPIDAL:
            prod = _cusp_normalize(prod)
        return RingElement(self.spec, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.spec.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        k = self.spec.kind
        if k is RingKind.QUADRATIC:
            return self.payload == (0, 0)
        if self.spec.is_polynomial:
            return not self.payload
        return self.payload == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.spec.from_int(other)
        if not isinstance(other, RingElement) or other.spec != self.spec:
            return NotImplemented
        return self.payload == other.payload

    def __hash__(self) -> int:
        if self._hash is None:
            p = self.payload
            if isinstance(p, dict):
                p = frozenset(p.items())
            self._hash = hash((self.spec, p))
        return self._hash

    def conj(self) -> "RingElement":
        a, b = self.payload
        return RingElement(self.spec, (a, -b))

    def norm(self) -> int:
        a, b = self.payload
        return a * a + 5 * b * b

    def constant_value(self):
        """The element as a Fraction when it is a constant, else None."""
        k = self.spec.kind
        if k in (RingKind.INTEGERS, RingKind.RATIONALS):
            return Fraction(self.payload)
        if k is RingKind.QUADRATIC:
            a, b = self.payload
            return Fraction(a) if b == 0 else None
        if not self.payload:
            return Fraction(0)
        if P.is_constant(self.payload):
            return next(iter(self.payload.values()))
        return None

    # text -----------------------------------------------------------------

    def __str__(self) -> str:
        k = self.spec.kind
        if k in (RingKind.INTEGERS, RingKind.RATIONALS):
            return str(self.payload)
        if k is RingKind.QUADRATIC:
            return _quad_str(*self.payload)
        return P.to_str(self.payload, self.spec.variables)

    def __repr__(self) -> str:
        return f"<{self.spec}: {self}>"


def _quad_str(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    coeff = {1: "", -1: "-"}.get(b, f"{b}*")
    s_part = f"{coeff}s"
    if a == 0:
        return s_part
    return f"{a}+{s_part}" if b > 0 else f"{a}{s_part}"
