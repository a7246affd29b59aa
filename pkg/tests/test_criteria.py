from fractions import Fraction
from itertools import product

import pytest

from src.criteria import (
    ALL_ROLES, PRINTED_COR38_II, RULE_CLASSIFY, RULE_COR34, RULE_THM31, RULE_THM32, RULE_THM33,
    SUFFICIENT_RULES, RoleAssignment, VerdictStatus, check_cor34, check_dim2, check_dim2_pm1,
    check_matrix3, check_sufficient_general, check_thm31, check_thm32, check_thm33, classify,
    discriminant2, proof_witness_candidates,
)
from src.oracle import OracleStatus, oracle_verdict, oracle_verdict2
from src.tensors import DomainError, EvalPoint, SymMatrix3, SymTensor2, SymTensor3, decompose, eval_form3
from tests.conftest import pm1, random_tensor


# === Dimension 2 ===

@pytest.mark.parametrize("entries, expected", [
    ((1, -1, 1, 1), 4),
    ((4, -3, 2, 1), 72),
    ((1, -1, -1, 1), -16),
])
def test_discriminant2(entries, expected):
    assert discriminant2(SymTensor2(*entries)) == expected


def test_check_dim2_negative_branch_uses_discriminant():
    verdict = check_dim2(SymTensor2(1, -1, 1, 1))
    assert verdict.status == VerdictStatus.STRICTLY_COPOSITIVE
    assert verdict.note == "discriminant 4"


def test_check_dim2_failure_has_witness():
    verdict = check_dim2(SymTensor2(1, -1, -1, 1))
    assert verdict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE
    assert verdict.witness == EvalPoint.of("1/2", "1/2")
    assert verdict.witness_value == Fraction(-1, 2)


def test_check_dim2_copositive_but_not_strict():
    t = SymTensor2(0, 1, 1, 0)
    assert check_dim2(t, strict=False).status == VerdictStatus.COPOSITIVE
    strict = check_dim2(t)
    assert strict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE
    assert strict.witness_value == 0


def test_check_dim2_double_root_witness():
    # (x1 - 10x2)²(x1 + x2): Δ = 0, sıfır 84 grid'inde değil
    t = SymTensor2(1, Fraction(-19, 3), Fraction(80, 3), 100)
    assert discriminant2(t) == 0
    verdict = check_dim2(t)
    assert verdict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE
    assert verdict.witness == EvalPoint.of("10/11", "1/11")
    assert verdict.witness_value == 0
    assert check_dim2(t, strict=False).status == VerdictStatus.COPOSITIVE


def test_check_dim2_zero_diagonal_witness():
    verdict = check_dim2(SymTensor2(0, 0, 1, 1))
    assert verdict.witness == EvalPoint.of(1, 0)
    assert verdict.witness_value == 0


def test_check_dim2_agrees_with_oracle_on_random_forms(rng):
    for _ in range(200):
        t = SymTensor2(*(Fraction(int(k), 6) for k in rng.integers(-24, 25, size=4)))
        verdict = check_dim2(t)
        result = oracle_verdict2(t)
        assert result.status != OracleStatus.INCONCLUSIVE, t
        assert verdict.is_strict == result.is_positive, t
        if verdict.witness is not None:
            assert verdict.witness_value <= 0


def test_check_dim2_pm1():
    assert check_dim2_pm1(SymTensor2(1, -1, 1, 1)).is_strict
    verdict = check_dim2_pm1(SymTensor2(1, -1, 0, 1))
    assert verdict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE
    assert verdict.witness == EvalPoint.of(1, 1)
    assert verdict.witness_value == -1
    assert check_dim2_pm1(SymTensor2(2, 0, 0, 1)).status == VerdictStatus.INAPPLICABLE


def test_binary_closure_agrees_with_discriminant():
    strict = 0
    for entries in product((-1, 0, 1), repeat=4):
        t = SymTensor2(*entries)
        closed = check_dim2_pm1(t)
        assert closed.is_strict == check_dim2(t).is_strict, entries
        if not closed.is_strict:
            assert closed.witness_value <= 0
        strict += closed.is_strict
    assert strict == 6


# === 3x3 matrices ===

def test_matrix_identity():
    report = check_matrix3(SymMatrix3.identity())
    assert report.strict and report.copositive
    assert report.delta == pytest.approx(1 + 2 ** 0.5)


def test_matrix_negative_alpha():
    report = check_matrix3(SymMatrix3(m11=1, m22=1, m33=1, m12=-2))
    assert report.alpha == pytest.approx(-1.0)
    assert report.delta is None
    assert not report.copositive and not report.strict


def test_matrix_boundary_case_is_copositive_only():
    m = decompose(pm1(a123=-1, a112=1, a113=-1)).m
    report = check_matrix3(m)
    assert report.gamma == 0.0
    assert report.delta == 0.0
    assert report.copositive
    assert not report.strict
    assert not report.holds
    assert check_matrix3(m, strict=False).holds


def test_matrix_negative_diagonal():
    report = check_matrix3(SymMatrix3(m11=-1, m22=1, m33=1))
    assert report.alpha is None and not report.copositive


# === {-1,0,1} theorems ===

def test_thm31_strict(minimum_tensor):
    verdict = check_thm31(minimum_tensor)
    assert verdict.is_strict
    assert verdict.role == RoleAssignment(1, 2, 3)


def test_thm31_first_necessity_witness(two_one_one_tensor):
    verdict = check_thm31(two_one_one_tensor)
    assert verdict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE
    assert verdict.witness == EvalPoint.of(2, 1, 1)
    assert verdict.witness_value == -8


def test_thm31_second_necessity_witness():
    t = pm1(a123=-1, a112=0, a113=-1, a223=0, a233=1)
    verdict = check_thm31(t)
    assert verdict.witness == EvalPoint.of(3, 1, "3/2")
    assert verdict.witness_value == Fraction(-1, 8)


def test_thm32():
    assert check_thm32(pm1(a123=0, a112=-1, a113=0, a223=1, a233=1)).is_strict
    verdict = check_thm32(pm1(a123=0, a112=-1, a113=-1, a223=1, a233=1))
    assert verdict.witness == EvalPoint.of(3, 1, 1)
    assert verdict.witness_value == -1


def test_thm33():
    assert check_thm33(pm1(a123=1)).is_strict
    verdict = check_thm33(pm1(a123=1, a112=-1, a113=-1, a223=-1, a233=-1))
    assert verdict.witness == EvalPoint.of(0, 1, 1)
    assert verdict.witness_value == -4


def test_cor34(ones_tensor, two_one_one_tensor):
    assert check_cor34(ones_tensor).is_strict
    assert check_cor34(pm1(a123=-1, a112=1, a113=-1, a223=1, a233=1)).is_strict
    verdict = check_cor34(two_one_one_tensor)
    assert verdict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE
    assert verdict.witness_value == -8


@pytest.mark.parametrize("check, t, reason", [
    (check_thm31, pm1(a123=0), "a123 = 0"),
    (check_thm32, pm1(a123=1), "a123 = 1"),
    (check_thm33, SymTensor3(a111=1, a222=1, a333=1, a123=1), "no role assignment with a_rss = a_rtt = 1"),
    (check_cor34, pm1(a123=1), "entries outside the hypothesis alphabet"),
    (check_thm31, SymTensor3(a111=2, a222=1, a333=1, a122=1, a133=1, a123=-1),
     "entries outside the hypothesis alphabet"),
])
def test_theorem_inapplicable(check, t, reason):
    verdict = check(t)
    assert verdict.status == VerdictStatus.INAPPLICABLE
    assert verdict.note == reason


def test_decisive_verdicts_match_evaluation(rng):
    for _ in range(50):
        t = pm1(**{name: int(v) for name, v in zip(
            ("a112", "a113", "a223", "a233", "a123"), rng.integers(-1, 2, size=5))})
        verdict = classify(t)
        assert verdict.is_decisive
        if not verdict.is_strict:
            assert eval_form3(t, verdict.witness) == verdict.witness_value <= 0


def test_proof_witness_candidates():
    assert len(proof_witness_candidates()) == 6
    points = proof_witness_candidates([RoleAssignment(2, 1, 3)])
    assert len(points) == 10
    assert points[6] == EvalPoint.of(1, 2, 1)
    assert points[9] == EvalPoint.of("3/2", 3, 1)


def test_role_assignment():
    role = RoleAssignment(2, 1, 3)
    assert role.index("rss") == (2, 1, 1)
    assert str(role) == "(r,s,t)=(2,1,3)"
    with pytest.raises(DomainError):
        RoleAssignment(1, 1, 3)


def test_role_relabeling_follows_permutation(rng):
    t = random_tensor(rng)
    for perm in ((2, 3, 1), (3, 1, 2), (1, 3, 2)):
        moved = t.permuted(perm)
        for role in ALL_ROLES:
            for pattern in ("rss", "rrt", "sst", "rst"):
                assert moved.entry(*role.relabeled(perm).index(pattern)) == t.entry(*role.index(pattern))


# === Sufficient conditions ===

@pytest.mark.parametrize("rule", SUFFICIENT_RULES, ids=lambda rule: rule.name)
@pytest.mark.parametrize("role", ALL_ROLES, ids=str)
def test_threshold_instances_are_strictly_copositive(rule, role):
    t = rule.threshold_instance(role)
    assert t.is_pm1()
    assert classify(t).is_strict
    holds = check_sufficient_general(t)
    assert holds.status == VerdictStatus.SUFFICIENT_CONDITION_HOLDS


def test_printed_reading_fails_at_threshold():
    t = PRINTED_COR38_II.threshold_instance(RoleAssignment(1, 2, 3))
    assert eval_form3(t, (2, 1, 1)) == -2
    assert not classify(t).is_strict


def test_sufficient_rule_order():
    t = SUFFICIENT_RULES[0].threshold_instance(RoleAssignment(1, 2, 3))
    assert t == pm1(a123=1, a112=-1, a113=-1, a223=-1, a233=1)
    verdict = check_sufficient_general(t)
    assert verdict.rule == "Corollary 3.6"
    assert verdict.role == RoleAssignment(1, 2, 3)
    assert classify(t).rule == RULE_THM33


def test_sufficient_condition_on_scaled_tensor():
    t = SymTensor3(a111=8, a222=1, a333=1, a122=2, a133=2, a112=-4, a113=-4, a223=-1, a233=1, a123=2)
    verdict = classify(t)
    assert verdict.status == VerdictStatus.SUFFICIENT_CONDITION_HOLDS
    assert verdict.rule == "Corollary 3.6"
    assert oracle_verdict(t).is_positive


def test_sufficient_needs_positive_diagonal():
    with pytest.raises(DomainError):
        check_sufficient_general(SymTensor3(a111=1, a222=0, a333=1))


def test_classify_order_and_fallthrough(minimum_tensor):
    assert classify(minimum_tensor).rule == RULE_THM31
    assert classify(pm1(a123=0)).rule == RULE_THM32
    assert classify(pm1(a123=1)).rule == RULE_THM33

    unmatched = classify(SymTensor3(a111=1, a222=1, a333=1, a123=-1))
    assert unmatched.status == VerdictStatus.INAPPLICABLE
    assert unmatched.rule == RULE_CLASSIFY
    assert classify(SymTensor3(a111=-1, a222=2, a333=2)).status == VerdictStatus.INAPPLICABLE


def test_cor34_reached_only_after_theorems():
    t = SymTensor3.from_entries([1, 1, 1, -1, 1, 1, 1, -1, 1, -1])
    assert check_cor34(t).status != VerdictStatus.INAPPLICABLE
    assert classify(t).rule != RULE_COR34
