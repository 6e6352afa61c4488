import random
from fractions import Fraction
from math import comb

import pytest

from qcoinv.coact import (
    Coaction,
    beta_conjugation,
    coaction_value,
    coinvariance_matrix,
    coinvariants_basis,
    coinvariants_basis_at,
    gamma_interior,
    minor_generators,
    mu_hom,
    rho_right,
    rho_slr,
    solve_domain,
    tau,
)
from qcoinv.exactnum import ONE, Q, ZERO, rank, LaurentMatrix
from qcoinv.qalgebra import NCPoly, QuantumMatrix, Tensor, express_in_basis, graded_basis
from qcoinv.qhopf import det_q, quantum_minor_cached
from qcoinv.selftest import comodule


def X(A, i, j):
    return A.gen(i, j)


def test_coaction_validation():
    with pytest.raises(ValueError):
        Coaction.interior(2, 2, 3)
    with pytest.raises(ValueError):
        Coaction.slr(2, 2)
    with pytest.raises(ValueError):
        Coaction.conjugation(0)
    c = Coaction.interior(2, 3, 1)
    assert (c.carrier.left.m, c.carrier.left.n, c.carrier.right.m, c.carrier.right.n) == (2, 1, 1, 3)
    assert (Coaction.slr(4, 2).carrier.m, Coaction.slr(4, 2).carrier.n) == (4, 2)


def test_rho_examples():
    A = QuantumMatrix(2, 1)
    H = QuantumMatrix(1, 1)
    T = Tensor(A, H)
    assert rho_right(A.unit()) == T.unit()
    assert rho_right(X(A, 1, 1)) == T.pure(X(A, 1, 1), X(H, 1, 1))
    A2 = QuantumMatrix(2, 2)
    lhs = rho_right(X(A2, 1, 1) * X(A2, 1, 2))
    assert lhs == rho_right(X(A2, 1, 1)) * rho_right(X(A2, 1, 2))


def test_gamma_examples_t1():
    c = Coaction.interior(2, 2, 1)
    T = c.carrier
    A, B = T.left, T.right
    one = gamma_interior(T.unit(), 0)
    assert one.equals_unit_tensor(T.unit())
    v = T.pure(X(A, 1, 1), X(B, 1, 1))
    assert gamma_interior(v, 2).equals_unit_tensor(v)
    w = T.pure(X(A, 1, 1), B.unit())
    val = gamma_interior(w, 1)
    assert set(val.terms) == {((), 1)}
    assert not val.equals_unit_tensor(w)
    with pytest.raises(ValueError):
        gamma_interior(v + w, 2)


def test_gamma_preserves_degree():
    c = Coaction.interior(2, 2, 2)
    for d in range(3):
        for mono in graded_basis(c.carrier, d):
            val = coaction_value(c, NCPoly(c.carrier, {mono: ONE}), d)
            for vec in val.terms.values():
                assert all(sum(map(len, v)) == d for v in vec)


def test_beta_examples():
    A1 = QuantumMatrix(1, 1)
    assert beta_conjugation(A1.unit(), 0).equals_unit_tensor(A1.unit())
    assert beta_conjugation(X(A1, 1, 1), 1).equals_unit_tensor(X(A1, 1, 1))
    A2 = QuantumMatrix(2, 2)
    assert not beta_conjugation(X(A2, 1, 2), 1).equals_unit_tensor(X(A2, 1, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_tau_coinvariant(n):
    A = QuantumMatrix(n, n)
    for i in range(1, n + 1):
        t = tau(n, i, A)
        assert beta_conjugation(t, i).equals_unit_tensor(t)


def test_tau_examples():
    A = QuantumMatrix(2, 2)
    assert tau(2, 1) == Q**-2 * X(A, 1, 1) + Q**-4 * X(A, 2, 2)
    assert tau(2, 2) == Q**-6 * (X(A, 1, 1) * X(A, 2, 2) - Q * (X(A, 1, 2) * X(A, 2, 1)))
    with pytest.raises(IndexError):
        tau(2, 3)
    assert (tau(2, 1) * tau(2, 2) - tau(2, 2) * tau(2, 1)).is_zero()
    A3 = QuantumMatrix(3, 3)
    ts = [tau(3, i, A3) for i in (1, 2, 3)]
    for a in ts:
        for b in ts:
            assert (a * b - b * a).is_zero()


def test_tau_at_q1_is_classical_trace():
    A = QuantumMatrix(2, 2, qvalue=Fraction(1))
    t1 = tau(2, 1, A).specialize(1)
    assert t1 == (X(A, 1, 1) + X(A, 2, 2)).specialize(1)


def test_coinvariant_examples():
    for c in (Coaction.interior(2, 2, 1), Coaction.slr(3, 2), Coaction.conjugation(2)):
        basis = coinvariants_basis(c, 0)
        assert basis == [[ONE]]
    c = Coaction.interior(2, 2, 1)
    assert coinvariants_basis(c, 1) == []
    co2 = coinvariants_basis(c, 2)
    assert len(co2) == 4
    # equal to the span of mu(X_ij)
    hom = mu_hom(2, 2, 1)
    images = [express_in_basis(hom(X(hom.source, i, j)), 2) for i in (1, 2) for j in (1, 2)]
    stacked = LaurentMatrix.from_dense(co2 + images)
    assert rank(stacked) == 4


def test_image_in_coinvariants():
    c = Coaction.interior(2, 2, 2)
    hom = c.source_hom()
    for d in (1, 2):
        cm = coinvariance_matrix(c, 2 * d, full=True)
        for mono in graded_basis(hom.source, d):
            vec = express_in_basis(hom(NCPoly(hom.source, {mono: ONE})), 2 * d)
            assert all(x == ZERO for x in cm.matrix.apply(vec))


@pytest.mark.parametrize(
    "c,degrees",
    [
        (Coaction.interior(2, 2, 1), (1, 2, 3)),
        (Coaction.interior(2, 2, 2), (2,)),
        (Coaction.conjugation(2), (1, 2, 3)),
    ],
)
def test_weight_zero_domain_is_lossless(c, degrees):
    for d in degrees:
        assert len(solve_domain(c, d)) <= len(solve_domain(c, d, full=True))
        a = coinvariants_basis(c, d)
        b = coinvariants_basis(c, d, full=True)
        assert len(a) == len(b)
        if a:
            assert rank(LaurentMatrix.from_dense(a + b)) == len(a)


def _weight_zero_count(m, n, d):
    """Classical GL_1 invariants: monomials in a_1..a_m (weight -1) and b_1..b_n (weight +1)."""
    if d % 2:
        return 0
    k = d // 2
    return comb(m + k - 1, k) * comb(n + k - 1, k)


def _partitions(d, n):
    if d == 0:
        return 1
    if n == 0:
        return 0
    return sum(_partitions(d - k * n, n - 1) for k in range(d // n + 1))


def _grassmannian_dim(n, k):
    """Degree-k piece of the Plucker coordinate ring of Gr(2, n) (hook-content formula)."""
    return comb(n + k - 1, k) * comb(n + k - 2, k) // (k + 1)


@pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
def test_classical_interior_dims(d):
    c = Coaction.interior(2, 3, 1, qvalue=Fraction(1))
    assert len(coinvariants_basis(c, d)) == _weight_zero_count(2, 3, d)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_classical_conjugation_dims(d):
    c = Coaction.conjugation(2, qvalue=Fraction(1))
    assert len(coinvariants_basis(c, d)) == _partitions(d, 2)


@pytest.mark.parametrize("n,d", [(3, 2), (3, 3), (3, 4), (4, 2), (4, 4)])
def test_classical_slr_dims(n, d):
    c = Coaction.slr(n, 2, qvalue=Fraction(1))
    expected = _grassmannian_dim(n, d // 2) if d % 2 == 0 else 0
    assert len(coinvariants_basis(c, d)) == expected


def test_quantum_dims_match_classical():
    for quantum, classical, d in (
        (Coaction.interior(2, 2, 1), Coaction.interior(2, 2, 1, qvalue=Fraction(1)), 4),
        (Coaction.slr(3, 2), Coaction.slr(3, 2, qvalue=Fraction(1)), 2),
        (Coaction.conjugation(2), Coaction.conjugation(2, qvalue=Fraction(1)), 3),
    ):
        assert len(coinvariants_basis(quantum, d)) == len(coinvariants_basis(classical, d))


def test_slr_minor_scales_by_det():
    A = QuantumMatrix(3, 2)
    H = QuantumMatrix(2, 2)
    T = Tensor(A, H)
    for I in minor_generators(3, 2):
        D = quantum_minor_cached(A, I, (1, 2))
        assert rho_slr(D) == T.pure(D, det_q(H))


def test_specialized_coinvariants():
    c = Coaction.conjugation(2)
    assert len(coinvariants_basis_at(c, 2, Fraction(3, 2))) == 2
    with pytest.raises(ValueError):
        coinvariants_basis_at(c, 2, 0)


def test_comodule_axioms():
    res = comodule(random.Random(0))
    assert res.ok, res.failures


def test_rho_coassociative_on_random_elements():
    from qcoinv.qhopf import comultiply_hom, tensor_map
    from qcoinv.selftest import _reassoc, _reassoc_right, random_element

    rng = random.Random(4)
    A = QuantumMatrix(2, 2)
    delta = comultiply_hom(QuantumMatrix(2, 2))
    for _ in range(5):
        f = random_element(A, 2, rng)
        r = rho_right(f)
        assert _reassoc_right(tensor_map(None, delta, r)) == _reassoc(tensor_map(rho_right, None, r))
