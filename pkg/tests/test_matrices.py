import random
from math import comb

import pytest

from ringstab.matrices import (
    DimensionError,
    FractionElement,
    IndexSet,
    Matrix,
    SingularMatrix,
    adjugate,
    all_index_sets,
    delta_matrix,
    det,
    det_cofactor,
    fraction_matrix_inverse,
    full_size_minors,
    mat_add,
    mat_mul,
    tau,
    tau_inv,
)
from ringstab.parser import parse_element
from ringstab.rings import RingSpec

from helpers import perm_det, rand_matrix, rand_nonzero

ZZ = RingSpec.integers()
ZS = RingSpec.quadratic()
QX = RingSpec.polynomial("x")
QXY = RingSpec.polynomial("x", "y")
CUSP = RingSpec.cuspidal()


def e(spec, text):
    return parse_element(spec, text)


def col(spec, *texts):
    return Matrix(spec, [[e(spec, t)] for t in texts])


# determinants -----------------------------------------------------------------


def test_det_examples():
    assert det(Matrix(ZS, [[ZS.quad(1, 1)]])) == ZS.quad(1, 1)
    for k in range(1, 5):
        assert det(Matrix.identity(QXY, k)) == QXY.one()
    with pytest.raises(DimensionError):
        det(Matrix.zeros(ZZ, 2, 3))


@pytest.mark.parametrize("spec", [ZZ, ZS, QX, QXY, CUSP], ids=str)
def test_det_matches_permutation_expansion(spec):
    rng = random.Random(20)
    for size in range(1, 5):
        for _ in range(8 if size < 4 else 4):
            M = rand_matrix(rng, spec, size, size, 4)
            expected = perm_det(M.rows, spec.zero())
            assert det(M) == expected
            assert det_cofactor(M) == expected


def test_bareiss_equals_cofactor_up_to_five():
    rng = random.Random(21)
    for size in range(1, 6):
        for _ in range(6):
            M = rand_matrix(rng, ZZ, size, size, 9)
            assert det(M) == det_cofactor(M)
            M = rand_matrix(rng, QX, size, size)
            assert det(M) == det_cofactor(M)


def test_det_of_fraction_matrix():
    M = Matrix(QX, [[FractionElement(e(QX, "1"), e(QX, "x")), QX.one()], [QX.zero(), e(QX, "x")]])
    assert det(M) == FractionElement(QX.one())


# adjugates and inverses ----------------------------------------------------------


def test_adjugate_examples():
    a, b, c, d = (e(QXY, t) for t in ("x", "y", "x+1", "y^2"))
    M = Matrix(QXY, [[a, b], [c, d]])
    assert adjugate(M) == Matrix(QXY, [[d, -b], [-c, a]])
    assert adjugate(Matrix.identity(QXY, 3)) == Matrix.identity(QXY, 3)


@pytest.mark.parametrize("spec", [ZZ, ZS, QX, QXY, CUSP], ids=str)
def test_adjugate_identity(spec):
    rng = random.Random(22)
    for size in range(1, 5):
        for _ in range(5):
            M = rand_matrix(rng, spec, size, size, 4)
            E = Matrix.identity(spec, size).scale(det(M))
            assert M @ adjugate(M) == E
            assert adjugate(M) @ M == E


def test_fraction_inverse():
    rng = random.Random(23)
    E = Matrix.identity(QX, 3).to_fractions()
    done = 0
    while done < 10:
        M = rand_matrix(rng, QX, 3, 3).map(lambda a: FractionElement(a, rand_nonzero(rng, QX)))
        if det(M).is_zero():
            continue
        assert M @ fraction_matrix_inverse(M) == E
        done += 1
    I3 = Matrix.identity(QX, 3)
    assert fraction_matrix_inverse(I3) == I3.to_fractions()
    d = e(QX, "x^2+1")
    assert fraction_matrix_inverse(Matrix(QX, [[d]])) == Matrix(QX, [[FractionElement(QX.one(), d)]])
    with pytest.raises(SingularMatrix):
        fraction_matrix_inverse(Matrix.zeros(QX, 2, 2))


def test_mat_mul_add_shapes():
    A = Matrix.identity(ZZ, 2)
    assert mat_add(A, A) == A.scale(ZZ.from_int(2))
    assert mat_mul(A, Matrix.zeros(ZZ, 2, 3)).shape == (2, 3)
    with pytest.raises(DimensionError):
        mat_mul(A, Matrix.zeros(ZZ, 3, 3))


# index machinery ----------------------------------------------------------------


def test_delta_matrix_examples():
    assert delta_matrix(IndexSet([1]), 2, ZZ) == Matrix.from_values(ZZ, [[1, 0]])
    assert delta_matrix(IndexSet([2]), 2, ZZ) == Matrix.from_values(ZZ, [[0, 1]])
    assert delta_matrix(IndexSet([1, 3]), 3, ZZ) == Matrix.from_values(ZZ, [[1, 0, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        delta_matrix(IndexSet([4]), 3, ZZ)


def test_delta_extracts_rows():
    rng = random.Random(24)
    M = rand_matrix(rng, ZZ, 5, 2)
    for I in all_index_sets(2, 5):
        assert delta_matrix(I, 5, ZZ) @ M == M.select_rows(I.zero_based())


def test_index_set_validation():
    with pytest.raises(ValueError):
        IndexSet([2, 1])
    with pytest.raises(ValueError):
        IndexSet([0, 1])
    assert str(IndexSet([1, 3])) == "{1,3}"


def test_all_index_sets():
    assert all_index_sets(1, 2) == [IndexSet([1]), IndexSet([2])]
    assert all_index_sets(2, 3) == [IndexSet(s) for s in ([1, 2], [1, 3], [2, 3])]
    assert len(all_index_sets(2, 5)) == 10
    for k in range(1, 6):
        assert len(all_index_sets(k, 6)) == comb(6, k)


def test_tau_examples_and_round_trip():
    assert tau(IndexSet([1]), 1, 1) == IndexSet([1])
    assert tau(IndexSet([2]), 1, 1) == IndexSet([2])
    for m in range(1, 4):
        for n in range(1, 4):
            images = set()
            for I in all_index_sets(m, m + n):
                J = tau(I, m, n)
                assert len(J) == n
                assert tau_inv(J, m, n) == I
                images.add(J)
            assert images == set(all_index_sets(n, m + n))
    with pytest.raises(ValueError):
        tau(IndexSet([1]), 2, 1)


def test_full_size_minor_examples():
    assert full_size_minors(col(ZS, "1+s", "2")) == {IndexSet([1]): ZS.quad(1, 1), IndexSet([2]): ZS.from_int(2)}
    assert list(full_size_minors(col(QX, "0", "1")).values()) == [QX.zero(), QX.one()]
    rng = random.Random(25)
    M = rand_matrix(rng, QX, 3, 2)
    for I, t in full_size_minors(M).items():
        rows = [M.rows[i - 1] for i in I]
        assert t == rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    with pytest.raises(DimensionError):
        full_size_minors(Matrix.zeros(QX, 1, 2))


def _minor_identity_instance(rng, m, n):
    N = rand_matrix(rng, QX, n, m)
    d = rand_nonzero(rng, QX)
    T = N.vstack(Matrix.identity(QX, m).scale(d))
    W = N.hstack(Matrix.identity(QX, n).scale(d))
    return T, W, d


def test_minor_identity_under_tau():
    rng = random.Random(26)
    signs = {}
    for trial in range(60):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        T, W, d = _minor_identity_instance(rng, m, n)
        t = full_size_minors(T)
        w = full_size_minors(W.T)
        for I, tI in t.items():
            lhs = tI * d ** n
            rhs = w[tau(I, m, n)] * d ** m
            assert lhs == rhs or lhs == -rhs
            if not lhs.is_zero():
                sign = 1 if lhs == rhs else -1
                assert signs.setdefault((m, n, I), sign) == sign


def test_binet_cauchy():
    rng = random.Random(27)
    for spec in (ZZ, QX):
        for _ in range(30):
            m = rng.randint(1, 3)
            n = rng.randint(1, 5 - m)
            A = rand_matrix(rng, spec, m, m + n)
            B = rand_matrix(rng, spec, m + n, m)
            total = spec.zero()
            for I in all_index_sets(m, m + n):
                Dl = delta_matrix(I, m + n, spec)
                total = total + det(A @ Dl.T) * det(Dl @ B)
            assert det(A @ B) == total
