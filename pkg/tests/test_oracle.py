from fractions import Fraction

import pytest

from src.oracle import (
    BernsteinForm, OracleStatus, Simplex, bernstein_certify, double_zeros2, grid_min, grid_min2,
    oracle_verdict, oracle_verdict2, quadratic_grid_min, quadratic_simplex_min,
)
from src.tensors import DomainError, EvalPoint, SymMatrix3, SymTensor2, SymTensor3, eval_form2, eval_form3
from tests.conftest import random_tensor


def test_grid_min_diagonal(diagonal_tensor):
    value, point = grid_min(diagonal_tensor, 3)
    assert value == Fraction(1, 9)
    assert point == EvalPoint.of("1/3", "1/3", "1/3")


def test_grid_min_finds_interior_minimum(minimum_tensor):
    value, point = grid_min(minimum_tensor, 7)
    assert value == Fraction(1, 49)
    assert eval_form3(minimum_tensor, point) == value
    assert eval_form3(minimum_tensor, EvalPoint.of("4/7", "1/7", "2/7")) == Fraction(1, 49)
    assert eval_form3(minimum_tensor, (4, 1, 2)) == 7


def test_grid_min_value_matches_evaluation(rng):
    for _ in range(10):
        t = random_tensor(rng)
        value, point = grid_min(t, 12)
        assert sum(point) == 1
        assert eval_form3(t, point) == value


def test_grid_min_large_entries(two_one_one_tensor):
    scale = 10 ** 15
    big = SymTensor3.from_entries([scale * v for v in two_one_one_tensor.entries()])
    value, point = grid_min(big, 84)
    small, _ = grid_min(two_one_one_tensor, 84)
    assert value == scale * small
    assert eval_form3(big, point) == value


def test_grid_min_rejects_empty_grid(ones_tensor):
    with pytest.raises(DomainError):
        grid_min(ones_tensor, 0)


def test_grid_min2():
    value, point = grid_min2(SymTensor2(1, -1, -1, 1), 2)
    assert value == Fraction(-1, 2)
    assert point == EvalPoint.of("1/2", "1/2")


@pytest.mark.parametrize("matrix, expected_value, expected_point", [
    (SymMatrix3.identity(), Fraction(1, 3), ("1/3", "1/3", "1/3")),
    (SymMatrix3(m11=1, m22=1, m33=1, m12=-2), Fraction(-1, 2), ("1/2", "1/2", "0")),
    (SymMatrix3(m11=2, m22=5, m33=1, m12=3, m13=3, m23=3), Fraction(1), ("0", "0", "1")),
])
def test_quadratic_simplex_min(matrix, expected_value, expected_point):
    value, point = quadratic_simplex_min(matrix)
    assert value == expected_value
    assert point == EvalPoint.of(*expected_point)


def test_quadratic_grid_min_bounds_true_minimum():
    m = SymMatrix3(m11=1, m22=1, m33=1, m12=-2)
    exact, _ = quadratic_simplex_min(m)
    value, _ = quadratic_grid_min(m, 7)
    assert value >= exact
    assert quadratic_grid_min(SymMatrix3.identity(), 3)[0] == Fraction(1, 3)


def test_simplex_validation():
    e1, e2 = EvalPoint.unit(1), EvalPoint.unit(2)
    with pytest.raises(DomainError):
        Simplex((e1, e1, e2))
    with pytest.raises(DomainError):
        Simplex((e1, e2, EvalPoint.of(1, 1, 0)))
    assert Simplex.standard().longest_edge() == (0, 1)
    assert Simplex.standard(2).vertices == (EvalPoint.of(1, 0), EvalPoint.of(0, 1))


def test_bernstein_corners_are_exact_values(rng):
    t = random_tensor(rng)
    forms = [BernsteinForm.from_tensor(t)]
    for _ in range(3):
        forms = [child for form in forms for child in form.subdivide()]
    assert len(forms) == 8
    for form in forms:
        for vertex, value in form.corners():
            assert eval_form3(t, vertex) == value


def test_bernstein_root_certificate(ones_tensor):
    result = bernstein_certify(ones_tensor)
    assert result.status == OracleStatus.POSITIVE_CERTIFIED
    assert result.certificate.node_count == 1
    assert result.certificate.leaf_count == 1
    assert result.certificate.max_depth == 0


def test_oracle_certifies_interior_minimum(minimum_tensor):
    result = oracle_verdict(minimum_tensor)
    assert result.is_positive
    assert result.certificate.max_depth > 0
    assert result.min_estimate == Fraction(1, 49)


def test_oracle_witness(two_one_one_tensor):
    result = oracle_verdict(two_one_one_tensor)
    assert result.is_nonpositive
    assert result.witness_value <= 0
    assert eval_form3(two_one_one_tensor, result.witness) == result.witness_value


def test_oracle_zero_tensor_is_not_positive():
    result = oracle_verdict(SymTensor3())
    assert result.status == OracleStatus.NONPOSITIVE_WITNESS
    assert result.witness_value == 0


def test_oracle_inconclusive_at_depth_limit(diagonal_tensor):
    result = oracle_verdict(diagonal_tensor, max_depth=0)
    assert result.status == OracleStatus.INCONCLUSIVE
    assert result.min_estimate == Fraction(1, 9)
    assert oracle_verdict(diagonal_tensor).is_positive


def test_oracle_verdict2():
    assert oracle_verdict2(SymTensor2(1, -1, -1, 1)).is_nonpositive
    assert oracle_verdict2(SymTensor2(1, 0, 0, 1)).is_positive
    assert oracle_verdict2(SymTensor2(0, 1, 1, 1)).is_nonpositive


def test_witness_found_at_depth_limit():
    t = SymTensor3(a111=-1, a222=1, a333=1)
    result = bernstein_certify(t, max_depth=0)
    assert result.status == OracleStatus.NONPOSITIVE_WITNESS
    assert result.witness_value == -1


# (x1 - 10x2)²(x1 + x2): tek sıfır 10/11, hiçbir grid paydasına bölünmez
TANGENT_FORM = SymTensor2(1, Fraction(-19, 3), Fraction(80, 3), 100)


@pytest.mark.parametrize("t, expected", [
    (TANGENT_FORM, [("10/11", "1/11")]),
    (SymTensor2(1, -1, 1, -1), [("1/2", "1/2")]),
    (SymTensor2(1, 0, 0, 0), [("0", "1")]),
    (SymTensor2(0, 0, 1, 1), [("1", "0")]),
    (SymTensor2(1, -1, -1, 1), []),
    (SymTensor2(1, 1, 1, 1), []),
    (SymTensor2(), []),
])
def test_double_zeros2(t, expected):
    zeros = double_zeros2(t)
    assert zeros == [EvalPoint.of(*point) for point in expected]
    assert all(eval_form2(t, point) == 0 for point in zeros)


def test_oracle_verdict2_uses_double_zero():
    assert grid_min2(TANGENT_FORM, 84)[0] > 0
    result = oracle_verdict2(TANGENT_FORM)
    assert result.status == OracleStatus.NONPOSITIVE_WITNESS
    assert result.witness == EvalPoint.of("10/11", "1/11")
    assert result.witness_value == 0


def test_grid_refinement_is_monotone(rng):
    for _ in range(10):
        t = random_tensor(rng)
        for n in (3, 7, 12):
            assert grid_min(t, 2 * n)[0] <= grid_min(t, n)[0]


@pytest.mark.parametrize("denominator", [1, 5, 84])
def test_grid_min_of_full_cube(ones_tensor, denominator):
    assert grid_min(ones_tensor, denominator)[0] == 1


def test_negative_corner_is_a_witness():
    t = SymTensor3(a111=-1, a222=1, a333=1, a112=1, a122=1, a113=1, a133=1, a223=1, a233=1, a123=1)
    result = bernstein_certify(t)
    assert result.status == OracleStatus.NONPOSITIVE_WITNESS
    assert result.witness == EvalPoint.unit(1)
    assert result.witness_value == -1


def test_bernstein_children_on_random_tensors(rng):
    for _ in range(100):
        t = random_tensor(rng)
        for child in BernsteinForm.from_tensor(t).subdivide():
            for vertex, value in child.corners():
                assert eval_form3(t, vertex) == value


def test_witness_comes_from_smallest_grid(two_one_one_tensor):
    value, point = grid_min(two_one_one_tensor, 7)
    assert value < 0
    result = oracle_verdict(two_one_one_tensor, denominator=84, grid_denominators=(12, 7))
    assert (result.witness, result.witness_value) == (point, value)
