from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.matrices import DomainMatrix

from qcoinv.exactnum import (
    ONE,
    Q,
    ZERO,
    LaurentMatrix,
    LaurentPoly,
    kernel_basis,
    kernel_basis_at,
    laurent_arith,
    parse_rational,
    rank,
    specialize,
)

qs = sympy.Symbol("q")

laurent = st.dictionaries(
    st.integers(-4, 4),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4,
).map(LaurentPoly)

small_laurent = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=3).map(LaurentPoly)


def to_sympy(p: LaurentPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * qs**e for e, c in p.terms()), sympy.Integer(0))


def sympy_rank(M: LaurentMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    S = sympy.Matrix(M.rows, M.cols, lambda i, j: to_sympy(M[i, j]))
    K = sympy.QQ.frac_field(qs)
    return DomainMatrix.from_Matrix(S).convert_to(K).rank()


def test_text_form_and_parse():
    p = LaurentPoly({2: 1, 0: -3})
    assert str(p) == "1*q^2 - 3*q^0"
    assert LaurentPoly.parse(str(p)) == p
    assert LaurentPoly.parse("q^-1 + 1/2") == LaurentPoly({-1: 1, 0: Fraction(1, 2)})
    assert str(ZERO) == "0"
    assert LaurentPoly.parse("0") == ZERO


@pytest.mark.parametrize("bad", ["q q", "1 2", "x", "q^"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        LaurentPoly.parse(bad)


def test_arith_examples():
    assert laurent_arith(Q, Q**-1, "mul") == ONE
    assert laurent_arith(Q - ONE, Q - ONE, "mul") == LaurentPoly({2: 1, 1: -2, 0: 1})
    assert laurent_arith(Q, Q, "sub") == ZERO
    with pytest.raises(ValueError):
        laurent_arith(Q, Q, "div")


def test_specialize():
    p = LaurentPoly({1: 1, -1: 1})
    assert specialize(p, 2) == Fraction(5, 2)
    assert specialize(p, 1) == 2
    with pytest.raises(ValueError):
        specialize(p, 0)


def test_rational_literals():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-4") == -4


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    assert LaurentPoly.parse(str(a)) == a


@given(laurent, laurent, st.sampled_from([Fraction(1), Fraction(2), Fraction(-3, 2), Fraction(1, 5)]))
def test_specialize_is_ring_map(a, b, lam):
    assert (a * b).specialize(lam) == a.specialize(lam) * b.specialize(lam)
    assert (a + b).specialize(lam) == a.specialize(lam) + b.specialize(lam)


def test_bar_involution():
    p = LaurentPoly({2: 3, -1: 1})
    assert p.bar() == LaurentPoly({-2: 3, 1: 1})
    assert p.bar().bar() == p


def test_kernel_examples():
    M = LaurentMatrix.from_dense([[ONE, Q], [Q**-1, ONE]])
    ker = kernel_basis(M)
    assert len(ker) == 1
    assert M.apply(ker[0]) == [ZERO, ZERO]
    assert rank(M) == 1

    qm1 = Q - ONE
    N = LaurentMatrix.from_dense([[qm1, -qm1]])
    assert kernel_basis(N) == [[ONE, ONE]]
    W = LaurentMatrix.from_dense([[qm1]])
    assert rank(W) == 1
    assert rank(W, at=1) == 0
    assert rank(W, at=2) == 1


def test_rank_of_empty_and_identity():
    assert rank(LaurentMatrix.identity(3)) == 3
    assert kernel_basis(LaurentMatrix.identity(3)) == []
    assert rank(LaurentMatrix.zero(2, 3)) == 0
    assert len(kernel_basis(LaurentMatrix.zero(2, 3))) == 3


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small_laurent, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_against_sympy(rows):
    M = LaurentMatrix.from_dense(rows)
    ker = kernel_basis(M)
    for v in ker:
        assert all(x == ZERO for x in M.apply(v))
    r = sympy_rank(M)
    assert len(ker) == M.cols - r
    assert rank(M) == r
    # basis vectors are independent
    if ker:
        K = LaurentMatrix.from_columns(M.cols, [{i: x for i, x in enumerate(v) if x} for v in ker])
        assert rank(K) == len(ker)


@settings(max_examples=40, deadline=None)
@given(matrices, st.sampled_from([Fraction(1), Fraction(-1), Fraction(3, 2)]))
def test_specialized_rank_never_exceeds_generic(rows, lam):
    M = LaurentMatrix.from_dense(rows)
    r = rank(M, at=lam)
    assert r <= rank(M)
    ker = kernel_basis_at(M, lam)
    assert len(ker) == M.cols - r
    Ms = M.specialize(lam)
    for v in ker:
        assert all(x == 0 for x in Ms.apply(v))


def test_tall_matrix_kernel():
    # many dependent rows exercise the probe-and-verify strategy
    base = [[ONE, Q, Q * Q, ZERO], [ZERO, ONE, Q, Q - ONE]]
    rows = []
    for k in range(12):
        c1, c2 = LaurentPoly({k % 3: 1}), LaurentPoly({-(k % 2): k - 5})
        rows.append([c1 * a + c2 * b for a, b in zip(*base)])
    M = LaurentMatrix.from_dense(rows)
    ker = kernel_basis(M)
    assert len(ker) == 2
    for v in ker:
        assert all(x == ZERO for x in M.apply(v))


def test_matrix_ops():
    A = LaurentMatrix.from_dense([[ONE, Q], [ZERO, ONE]])
    B = LaurentMatrix.from_dense([[ONE, -Q], [ZERO, ONE]])
    assert A @ B == LaurentMatrix.identity(2)
    assert A.transpose()[1, 0] == Q
    assert A.hstack(B).shape == (2, 4)
    assert A.specialize(2).is_constant()
