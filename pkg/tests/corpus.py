"""Test plants shared by the criteria, synthesis and acceptance tests."""

from dataclasses import dataclass

from ringstab.matrices import Matrix
from ringstab.parser import parse_element
from ringstab.plant import Plant, plant_from_right_fraction
from ringstab.rings import Ideal, RingSpec

ZZ = RingSpec.integers()
QX = RingSpec.polynomial("x")
QXY = RingSpec.polynomial("x", "y")
ZS = RingSpec.quadratic()
CUSP = RingSpec.cuspidal()


@dataclass
class Case:
    name: str
    plant: Plant
    stabilizable: bool


def mat(spec, text):
    return Matrix(spec, [[parse_element(spec, e) for e in row.split(",")] for row in text.split(";")])


def make(spec, N, D, Z=None):
    z = None if Z is None else Ideal(spec, [parse_element(spec, g) for g in Z])
    return plant_from_right_fraction(mat(spec, N), mat(spec, D), z)


def corpus():
    return [
        Case("x/(1-x)", make(QX, "x", "1-x", ["x"]), True),
        Case("1/x", make(QX, "1", "x"), True),
        Case("(x^2-1)/(x^2+x)", make(QX, "x^2-1", "x^2+x"), True),
        Case("Q[x] 2x2", make(QX, "x, 1; 0, x", "1-x, 0; 1, x+2"), True),
        Case("x/y", make(QXY, "x", "y"), False),
        Case("x^2/(xy)", make(QXY, "x^2", "x*y"), False),
        Case("xy/(1+xy)", make(QXY, "x*y", "1+x*y"), True),
        Case("1/(x+y)", make(QXY, "1", "x+y"), True),
        Case("(x+1)/y", make(QXY, "x+1", "y"), False),
        Case("diag(x/y, 1)", make(QXY, "x, 0; 0, 1", "y, 0; 0, 1"), False),
        Case("diag(x/(1-x), 1/(1+y))", make(QXY, "x, 0; 0, 1", "1-x, 0; 0, 1+y"), True),
        Case("3/2", make(ZZ, "3", "2"), True),
        Case("Z 2x2", make(ZZ, "1, 2; 3, 4", "2, 0; 0, 5"), True),
        Case("(1+s)/2", make(ZS, "1+s", "2"), True),
        Case("3/(1+s)", make(ZS, "3", "1+s"), True),
        Case("diag((1+s)/2, 1)", make(ZS, "1+s, 0; 0, 1", "2, 0; 0, 1"), True),
        Case("v/u", make(CUSP, "v", "u"), False),
        Case("(v-1)/(u-1)", make(CUSP, "v-1", "u-1"), True),
    ]


def ufd_corpus():
    return [c for c in corpus() if c.plant.spec.is_ufd]
