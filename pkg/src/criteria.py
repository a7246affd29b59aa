"""
Criteria - Analitik kesin kopozitiflik kriterleri
{-1,0,1} girdili tensörler için karar teoremleri, genel tensörler için yeter koşullar
ve uygun kuralı seçen classify()
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .oracle import DEFAULT_DENOMINATOR, double_zeros2, grid_min, grid_min2
from .tensors import (
    DomainError, EvalPoint, NormalizedTensor, SymMatrix3, SymTensor2, SymTensor3,
    eval_form2, eval_form3, normalize,
)

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-12

RULE_THM22 = "Theorem 2.2"
RULE_LEM23 = "Lemma 2.3"
RULE_THM31 = "Theorem 3.1"
RULE_THM32 = "Theorem 3.2"
RULE_THM33 = "Theorem 3.3"
RULE_COR34 = "Corollary 3.4"
RULE_SUFFICIENT = "Corollaries 3.6-3.9"
RULE_CLASSIFY = "classify"

PAIRS = ((1, 2), (1, 3), (2, 3))


class VerdictStatus(str, Enum):
    STRICTLY_COPOSITIVE = "StrictlyCopositive"
    NOT_STRICTLY_COPOSITIVE = "NotStrictlyCopositive"
    SUFFICIENT_CONDITION_HOLDS = "SufficientConditionHolds"
    INAPPLICABLE = "Inapplicable"
    # check_dim2(strict=False)
    COPOSITIVE = "Copositive"
    NOT_COPOSITIVE = "NotCopositive"


@dataclass(frozen=True)
class RoleAssignment:
    """Hipotezdeki (r, s, t) etiketlemesi"""
    r: int
    s: int
    t: int

    def __post_init__(self):
        if sorted((self.r, self.s, self.t)) != [1, 2, 3]:
            raise DomainError(f"Role assignment must be a permutation of (1, 2, 3): {(self.r, self.s, self.t)}")

    def index(self, pattern: str) -> Tuple[int, int, int]:
        """"rss" → (r, s, s)"""
        return tuple(getattr(self, letter) for letter in pattern)

    def relabeled(self, perm: Sequence[int]) -> "RoleAssignment":
        """SymTensor3.permuted(perm) sonrası aynı rol"""
        inverse = {old: new for new, old in enumerate(perm, start=1)}
        return RoleAssignment(inverse[self.r], inverse[self.s], inverse[self.t])

    def __str__(self) -> str:
        return f"(r,s,t)=({self.r},{self.s},{self.t})"


ALL_ROLES: Tuple[RoleAssignment, ...] = tuple(RoleAssignment(*p) for p in permutations((1, 2, 3)))


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    rule: str
    witness: Optional[EvalPoint] = None
    witness_value: Optional[Fraction] = None
    role: Optional[RoleAssignment] = None
    note: Optional[str] = None

    @property
    def is_strict(self) -> bool:
        return self.status == VerdictStatus.STRICTLY_COPOSITIVE

    @property
    def is_decisive(self) -> bool:
        return self.status in (VerdictStatus.STRICTLY_COPOSITIVE, VerdictStatus.NOT_STRICTLY_COPOSITIVE)


@dataclass(frozen=True)
class MatrixCriterionReport:
    """3x3 matris kriterinin ara değerleri ve sonucu"""
    alpha: Optional[float]
    beta: Optional[float]
    gamma: Optional[float]
    delta: Optional[float]
    copositive: bool
    strict: bool
    requested_strict: bool = True

    @property
    def holds(self) -> bool:
        return self.strict if self.requested_strict else self.copositive


def _inapplicable(rule: str, note: Optional[str] = None) -> Verdict:
    return Verdict(status=VerdictStatus.INAPPLICABLE, rule=rule, note=note)


# === Dimension 2 ===

def discriminant2(t: SymTensor2) -> Fraction:
    """4a111a122³ + 4a112³a222 + a111²a222² − 6a111a112a122a222 − 3a112²a122²"""
    a, b, c, d = t.a111, t.a112, t.a122, t.a222
    return 4 * a * c ** 3 + 4 * b ** 3 * d + a ** 2 * d ** 2 - 6 * a * b * c * d - 3 * b ** 2 * c ** 2


def check_dim2(t: SymTensor2, strict: bool = True, denominator: int = DEFAULT_DENOMINATOR) -> Verdict:
    """
    İkili kübik form için diskriminant kriteri.
    Başarısızlıkta tanık önce katlı sıfırlardan (tam, değer 0), sonra
    1-simpleks grid'inden alınır.
    """
    delta = discriminant2(t)
    if strict:
        diagonal_ok = t.a111 > 0 and t.a222 > 0
        branch_ok = (t.a112 >= 0 and t.a122 >= 0) or delta > 0
        passed, failed = VerdictStatus.STRICTLY_COPOSITIVE, VerdictStatus.NOT_STRICTLY_COPOSITIVE
    else:
        diagonal_ok = t.a111 >= 0 and t.a222 >= 0
        branch_ok = (t.a112 >= 0 and t.a122 >= 0) or delta >= 0
        passed, failed = VerdictStatus.COPOSITIVE, VerdictStatus.NOT_COPOSITIVE

    note = f"discriminant {delta}"
    if diagonal_ok and branch_ok:
        return Verdict(status=passed, rule=RULE_THM22, note=note)

    zeros = double_zeros2(t) if strict else []
    if zeros:
        return Verdict(status=failed, rule=RULE_THM22, witness=zeros[0], witness_value=Fraction(0), note=note)

    value, point = grid_min2(t, denominator)
    if value < 0 or (strict and value == 0):
        return Verdict(status=failed, rule=RULE_THM22, witness=point, witness_value=value, note=note)
    return Verdict(status=failed, rule=RULE_THM22, note=f"{note}; no grid witness at denominator {denominator}")


def check_dim2_pm1(t: SymTensor2) -> Verdict:
    """{-1,0,1} girdili ikili form: a111 = a222 = 1 ve a112 + a122 >= 0"""
    if not t.is_pm1():
        return _inapplicable(RULE_LEM23, "entries outside {-1,0,1}")

    if t.a111 == 1 and t.a222 == 1 and t.a112 + t.a122 >= 0:
        return Verdict(status=VerdictStatus.STRICTLY_COPOSITIVE, rule=RULE_LEM23)

    for point in (EvalPoint.of(1, 0), EvalPoint.of(0, 1), EvalPoint.of(1, 1)):
        value = eval_form2(t, point)
        if value <= 0:
            return Verdict(
                status=VerdictStatus.NOT_STRICTLY_COPOSITIVE,
                rule=RULE_LEM23,
                witness=point,
                witness_value=value,
            )
    # a111, a222 ∈ {-1,0,1} ve toplam <= -1 iken (1,1) her zaman tanıktır
    raise AssertionError(f"No witness for {t}")


# === 3x3 matrices ===

def check_matrix3(m: SymMatrix3, strict: bool = True, epsilon: float = DEFAULT_EPSILON) -> MatrixCriterionReport:
    """
    α, β, γ, δ üzerinden (kesin) kopozitiflik.
    Köşegen işaretleri tam; karekök içeren büyüklükler epsilon toleransıyla.
    """
    diagonal = (m.m11, m.m22, m.m33)
    if any(d < 0 for d in diagonal):
        # Negatif köşegenin karekökü yok
        return MatrixCriterionReport(None, None, None, None, copositive=False, strict=False,
                                     requested_strict=strict)

    m11, m22, m33 = (float(d) for d in diagonal)
    m12, m13, m23 = float(m.m12), float(m.m13), float(m.m23)

    alpha = m12 + float(np.sqrt(m11 * m22))
    beta = m13 + float(np.sqrt(m11 * m33))
    gamma = m23 + float(np.sqrt(m22 * m33))

    def nonnegative(v: Optional[float]) -> bool:
        return v is not None and v >= -epsilon

    def positive(v: Optional[float]) -> bool:
        return v is not None and v > epsilon

    delta: Optional[float] = None
    if all(nonnegative(v) for v in (alpha, beta, gamma)):
        product = max(alpha, 0.0) * max(beta, 0.0) * max(gamma, 0.0)
        delta = (m12 * float(np.sqrt(m33)) + m13 * float(np.sqrt(m22)) + m23 * float(np.sqrt(m11))
                 + float(np.sqrt(m11 * m22 * m33)) + float(np.sqrt(2.0 * product)))

    copositive = all(nonnegative(v) for v in (alpha, beta, gamma, delta))
    strict_ok = all(d > 0 for d in diagonal) and all(positive(v) for v in (alpha, beta, gamma, delta))

    return MatrixCriterionReport(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        delta=delta,
        copositive=copositive,
        strict=strict_ok,
        requested_strict=strict,
    )


# === Dimension 3, entries in {-1,0,1} ===

def _diagonal_ones(t: SymTensor3) -> bool:
    return all(d == 1 for d in t.diagonal())


def _pair_sums_nonnegative(t: SymTensor3) -> bool:
    """a_iij + a_ijj >= 0, sırasız üç çift için"""
    return all(t.entry(i, i, j) + t.entry(i, j, j) >= 0 for i, j in PAIRS)


def _roles_with_unit_rss_rtt(t: SymTensor3) -> List[RoleAssignment]:
    return [
        role for role in ALL_ROLES
        if t.entry(*role.index("rss")) == 1 and t.entry(*role.index("rtt")) == 1
    ]


def proof_witness_candidates(roles: Sequence[RoleAssignment] = ()) -> List[EvalPoint]:
    """
    Gereklilik ispatlarındaki noktalar: birim vektörler, e_i + e_j ve her rol
    için (x_r, x_s, x_t) = (2,1,1), (3,1,1), (3,1,3/2), (3,3/2,1).
    """
    points = [EvalPoint.unit(i) for i in (1, 2, 3)]
    points += [EvalPoint(tuple(1 if k in pair else 0 for k in (1, 2, 3))) for pair in PAIRS]
    half = Fraction(3, 2)
    for role in roles:
        for xr, xs, xt in ((2, 1, 1), (3, 1, 1), (3, 1, half), (3, half, 1)):
            coords = [Fraction(0)] * 3
            coords[role.r - 1], coords[role.s - 1], coords[role.t - 1] = xr, xs, xt
            points.append(EvalPoint(tuple(coords)))
    return points


def _failure(t: SymTensor3, rule: str, roles: Sequence[RoleAssignment],
             denominator: int = DEFAULT_DENOMINATOR) -> Verdict:
    """Tanıklı NotStrictlyCopositive kararı"""
    role = roles[0] if roles else None
    for point in proof_witness_candidates(roles):
        value = eval_form3(t, point)
        if value <= 0:
            return Verdict(status=VerdictStatus.NOT_STRICTLY_COPOSITIVE, rule=rule,
                           witness=point, witness_value=value, role=role)

    value, point = grid_min(t, denominator)
    if value <= 0:
        return Verdict(status=VerdictStatus.NOT_STRICTLY_COPOSITIVE, rule=rule,
                       witness=point, witness_value=value, role=role, note="witness from oracle grid")

    logger.warning(f"{rule}: no witness found for {t.entries()}")
    return Verdict(status=VerdictStatus.NOT_STRICTLY_COPOSITIVE, rule=rule, role=role,
                   note=f"no witness found at denominator {denominator}")


def _check_pm1_theorem(
    t: SymTensor3,
    rule: str,
    hypothesis_a123: Tuple[int, ...],
    remaining: Callable[[SymTensor3, RoleAssignment], bool],
    unit_valued: bool = False,
) -> Verdict:
    """
    Ortak akış: hipotez → ortak koşullar (köşegen 1, çift toplamları) →
    teoreme özgü kalan koşul (herhangi bir rol için).
    """
    entries_ok = t.is_unit_valued() if unit_valued else t.is_pm1()
    if not entries_ok:
        return _inapplicable(rule, "entries outside the hypothesis alphabet")
    if t.a123 not in hypothesis_a123:
        return _inapplicable(rule, f"a123 = {t.a123}")

    roles = _roles_with_unit_rss_rtt(t)
    if not roles:
        return _inapplicable(rule, "no role assignment with a_rss = a_rtt = 1")

    if _diagonal_ones(t) and _pair_sums_nonnegative(t):
        for role in roles:
            if remaining(t, role):
                return Verdict(status=VerdictStatus.STRICTLY_COPOSITIVE, rule=rule, role=role)

    return _failure(t, rule, roles)


def _thm31_remaining(t: SymTensor3, role: RoleAssignment) -> bool:
    rrs, rrt = t.entry(*role.index("rrs")), t.entry(*role.index("rrt"))
    if rrs + rrt >= 0:
        return True
    return (t.entry(*role.index("stt")) == 1 and t.entry(*role.index("sst")) == 1
            and (rrs, rrt) in ((0, -1), (-1, 0)))


def _thm32_remaining(t: SymTensor3, role: RoleAssignment) -> bool:
    return t.entry(*role.index("rrs")) + t.entry(*role.index("rrt")) >= -1


def _thm33_remaining(t: SymTensor3, role: RoleAssignment) -> bool:
    return True


def _cor34_remaining(t: SymTensor3, role: RoleAssignment) -> bool:
    if t.a123 == 1:
        return True
    rrs, rrt = t.entry(*role.index("rrs")), t.entry(*role.index("rrt"))
    return (rrs == 1 and rrt == 1) or rrs * rrt == -1


def check_thm31(t: SymTensor3) -> Verdict:
    """a_rss = a_rtt = -a123 = 1"""
    return _check_pm1_theorem(t, RULE_THM31, (-1,), _thm31_remaining)


def check_thm32(t: SymTensor3) -> Verdict:
    """a_rss = a_rtt = 1, a123 = 0"""
    return _check_pm1_theorem(t, RULE_THM32, (0,), _thm32_remaining)


def check_thm33(t: SymTensor3) -> Verdict:
    """a_rss = a_rtt = a123 = 1"""
    return _check_pm1_theorem(t, RULE_THM33, (1,), _thm33_remaining)


def check_cor34(t: SymTensor3) -> Verdict:
    """|a_ijk| = 1, a_rss = a_rtt = 1"""
    return _check_pm1_theorem(t, RULE_COR34, (-1, 1), _cor34_remaining, unit_valued=True)


PM1_CHECKS: Tuple[Tuple[str, Callable[[SymTensor3], Verdict]], ...] = (
    (RULE_THM31, check_thm31),
    (RULE_THM32, check_thm32),
    (RULE_THM33, check_thm33),
    (RULE_COR34, check_cor34),
)


# === General tensors: sufficient conditions ===

@dataclass(frozen=True)
class SufficientRule:
    """
    Normalize edilmiş katsayılar için alt sınırlar. Küp kök eşikleri
    b uzayında ±1 veya 0 olur: a_rss >= (a_rrr a_sss²)^(1/3) ⇔ b_rss >= 1.
    """
    name: str
    a123_bound: int
    bounds: Tuple[Tuple[str, int], ...]

    def holds(self, n: NormalizedTensor, role: RoleAssignment, epsilon: float = DEFAULT_EPSILON) -> bool:
        if n.b123 < self.a123_bound - epsilon:
            return False
        return all(n.entry(*role.index(pattern)) >= bound - epsilon for pattern, bound in self.bounds)

    def threshold_instance(self, role: RoleAssignment = ALL_ROLES[0]) -> SymTensor3:
        """Köşegeni 1, tüm eşiklerde eşitlik: kuralın indirgendiği {-1,0,1} tensörü"""
        mapping = {(i, i, i): 1 for i in (1, 2, 3)}
        mapping[(1, 2, 3)] = self.a123_bound
        for pattern, bound in self.bounds:
            mapping[tuple(sorted(role.index(pattern)))] = bound
        return SymTensor3.from_mapping(mapping)


_RSS_RTT = (("rss", 1), ("rtt", 1))

SUFFICIENT_RULES: Tuple[SufficientRule, ...] = (
    SufficientRule("Corollary 3.6", 1, _RSS_RTT + (("rrs", -1), ("rrt", -1), ("sst", -1), ("stt", 1))),
    SufficientRule("Corollary 3.7", 1, _RSS_RTT + (("rrs", -1), ("rrt", -1), ("sst", 0), ("stt", 0))),
    SufficientRule("Corollary 3.8(i)", -1, _RSS_RTT + (("rrs", 1), ("rrt", -1), ("sst", -1), ("stt", 1))),
    # a_sst, a_stt >= eşik: (a_rrs, a_rrt) = (-1, 0) ancak a_sst = a_stt = 1 ile pozitif kalır
    SufficientRule("Corollary 3.8(ii)", -1, _RSS_RTT + (("rrs", -1), ("rrt", 0), ("sst", 1), ("stt", 1))),
    SufficientRule("Corollary 3.8(iii)", -1, _RSS_RTT + (("rrs", 0), ("rrt", 0), ("sst", 1), ("stt", -1))),
    SufficientRule("Corollary 3.8(iv)", -1, _RSS_RTT + (("rrs", 1), ("rrt", -1), ("sst", 0), ("stt", 0))),
    SufficientRule("Corollary 3.8(v)", -1, _RSS_RTT + (("rrs", 0), ("rrt", 0), ("sst", 0), ("stt", 0))),
    SufficientRule("Corollary 3.9(i)", 0, _RSS_RTT + (("rrs", 0), ("rrt", -1), ("sst", 0), ("stt", 0))),
    SufficientRule("Corollary 3.9(ii)", 0, _RSS_RTT + (("rrs", -1), ("rrt", 0), ("sst", -1), ("stt", 1))),
)

# Basılı hali; eşikte x_r=2, x_s=x_t=1 noktasında -2 verir. Sadece raporlanır.
PRINTED_COR38_II = SufficientRule(
    "Corollary 3.8(ii) as printed", -1, _RSS_RTT + (("rrs", -1), ("rrt", 0), ("sst", 1), ("stt", -1)),
)

COROLLARY_FAMILIES: Tuple[Tuple[str, Tuple[SufficientRule, ...]], ...] = tuple(
    (family, tuple(rule for rule in SUFFICIENT_RULES if rule.name.startswith(family)))
    for family in ("Corollary 3.6", "Corollary 3.7", "Corollary 3.8", "Corollary 3.9")
)


def check_sufficient_general(t: SymTensor3, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    """
    Yeter koşulları sırayla dene (tek yönlü: Inapplicable kopozitif olmadığı
    anlamına gelmez).
    """
    if any(d <= 0 for d in t.diagonal()):
        raise DomainError(f"Sufficient conditions need a positive diagonal, got {[str(d) for d in t.diagonal()]}")

    n = normalize(t)
    for rule in SUFFICIENT_RULES:
        for role in ALL_ROLES:
            if rule.holds(n, role, epsilon):
                return Verdict(status=VerdictStatus.SUFFICIENT_CONDITION_HOLDS, rule=rule.name, role=role)
    return _inapplicable(RULE_SUFFICIENT, "no corollary hypothesis holds")


def classify(t: SymTensor3, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    """
    {-1,0,1} teoremleri sırayla (3.1, 3.2, 3.3, 3.4), sonra köşegen pozitifse
    yeter koşullar. Hiçbiri uymazsa Inapplicable (çağıran oracle'a düşebilir).
    """
    if t.is_pm1():
        for rule, check in PM1_CHECKS:
            verdict = check(t)
            if verdict.status != VerdictStatus.INAPPLICABLE:
                logger.debug(f"classify: {rule} applies")
                return verdict

    if all(d > 0 for d in t.diagonal()):
        verdict = check_sufficient_general(t, epsilon)
        if verdict.status != VerdictStatus.INAPPLICABLE:
            return verdict

    return _inapplicable(RULE_CLASSIFY, "no hypothesis matches")
