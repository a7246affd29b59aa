"""
Harness - Analitik kriterlerin oracle'a karşı doğrulanması
{-1,0,1} taraması, kübik eşitsizlik seti, yeter koşul örneklemesi,
ikili form kapanışı ve 3x3 matris kriteri karşılaştırması
"""

import asyncio
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import partial
from itertools import permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from .criteria import (
    ALL_ROLES, COROLLARY_FAMILIES, DEFAULT_EPSILON, PM1_CHECKS, PRINTED_COR38_II,
    RULE_THM31, RULE_THM32, RULE_THM33, SUFFICIENT_RULES,
    RoleAssignment, SufficientRule, Verdict, VerdictStatus,
    check_dim2, check_dim2_pm1, check_matrix3, check_sufficient_general,
)
from .oracle import (
    DEFAULT_DENOMINATOR, DEFAULT_GRID_DENOMINATORS, DEFAULT_MAX_DEPTH,
    OracleResult, OracleStatus, oracle_verdict, oracle_verdict2,
    quadratic_grid_min, quadratic_simplex_min,
)
from .tensors import (
    TENSOR3_INDICES, DomainError, EvalPoint, SymMatrix3, SymTensor2, SymTensor3,
    eval_form3, index_from_exponent, multiplicity, principal_face,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEFAULT_SAMPLES = 1000
DEFAULT_CHUNK_SIZE = 2187
DEFAULT_BAND = 1e-9

PM1_VALUES = (-1, 0, 1)
PM10_COUNT = 3 ** len(TENSOR3_INDICES)

Report = TypeVar("Report")


def _resolve_workers(workers: int) -> int:
    """0 → işlemci sayısı"""
    return workers if workers > 0 else (os.cpu_count() or 1)


async def _run_chunks(
    func: Callable[[Sequence], Report],
    chunks: List[Sequence],
    workers: int,
    empty: Report,
    label: str,
) -> Report:
    """
    Parçaları işleyip kısmi raporları birleştir.
    workers <= 1 ise aynı süreçte sırayla çalışır.
    """
    report = empty
    total = len(chunks)

    if workers <= 1:
        for done, chunk in enumerate(chunks, start=1):
            report = report.merge(func(chunk))
            logger.info(f"{label}: chunk {done}/{total} done")
        return report

    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, func, chunk) for chunk in chunks]
        for done, future in enumerate(asyncio.as_completed(futures), start=1):
            report = report.merge(await future)
            logger.info(f"{label}: chunk {done}/{total} done")
    return report


def _chunked(items: Sequence, size: int) -> List[Sequence]:
    if size < 1:
        raise DomainError(f"Chunk size must be positive, got {size}")
    return [items[i:i + size] for i in range(0, len(items), size)]


# === {-1,0,1} enumeration ===

def pm1_tensor(index: int) -> SymTensor3:
    """
    index ∈ [0, 3^10): girdi sırasına göre sözlük sıralı taban-3 açılım,
    rakam 0/1/2 → -1/0/1. 0 → tüm girdiler -1, 3^10-1 → tüm girdiler 1.
    """
    if not 0 <= index < PM10_COUNT:
        raise DomainError(f"Enumeration index out of range: {index}")
    digits = []
    for _ in TENSOR3_INDICES:
        index, digit = divmod(index, 3)
        digits.append(PM1_VALUES[digit])
    return SymTensor3.from_entries(reversed(digits))


def pm1_index(t: SymTensor3) -> int:
    """pm1_tensor'un tersi"""
    if not t.is_pm1():
        raise DomainError("Tensor entries are not in {-1, 0, 1}")
    index = 0
    for value in t.entries():
        index = index * 3 + PM1_VALUES.index(value)
    return index


@dataclass(frozen=True)
class TheoremCounters:
    applicable: int = 0
    strict: int = 0
    non_strict: int = 0
    disagreements: int = 0
    inconclusive: int = 0

    def merge(self, other: "TheoremCounters") -> "TheoremCounters":
        return TheoremCounters(
            applicable=self.applicable + other.applicable,
            strict=self.strict + other.strict,
            non_strict=self.non_strict + other.non_strict,
            disagreements=self.disagreements + other.disagreements,
            inconclusive=self.inconclusive + other.inconclusive,
        )


@dataclass(frozen=True)
class Disagreement:
    """
    kind: "oracle" (analitik ≠ oracle), "inconclusive", "overlap" (iki teorem
    çelişiyor), "partition", "witness", "face", "orbit"
    """
    kind: str
    index: int
    tensor: SymTensor3
    rule: str
    verdict: Optional[VerdictStatus] = None
    oracle: Optional[OracleStatus] = None
    detail: str = ""

    def sort_key(self) -> Tuple[int, str, str]:
        return (self.index, self.rule, self.kind)


RULES = tuple(rule for rule, _ in PM1_CHECKS)


@dataclass(frozen=True)
class EnumerationReport:
    total: int = 0
    counters: Dict[str, TheoremCounters] = field(
        default_factory=lambda: {rule: TheoremCounters() for rule in RULES}
    )
    disagreements: Tuple[Disagreement, ...] = ()
    wall_time: float = 0.0

    def merge(self, other: "EnumerationReport") -> "EnumerationReport":
        """Birleşme ve sıra bağımsız (bulgular indekse göre sıralı)"""
        return EnumerationReport(
            total=self.total + other.total,
            counters={rule: self.counters[rule].merge(other.counters[rule]) for rule in RULES},
            disagreements=tuple(sorted(self.disagreements + other.disagreements, key=Disagreement.sort_key)),
            wall_time=self.wall_time + other.wall_time,
        )

    @property
    def disagreement_count(self) -> int:
        return sum(1 for d in self.disagreements if d.kind != "inconclusive")

    @property
    def inconclusive_count(self) -> int:
        return sum(1 for d in self.disagreements if d.kind == "inconclusive")

    @property
    def passed(self) -> bool:
        return not self.disagreements


def _witness_problem(t: SymTensor3, verdict: Verdict) -> Optional[str]:
    if verdict.witness is None:
        return "missing witness"
    point = verdict.witness
    if not point.is_nonnegative() or point.is_zero():
        return f"witness {point} is not a nonzero nonnegative point"
    value = eval_form3(t, point)
    if value != verdict.witness_value or value > 0:
        return f"witness {point} evaluates to {value}"
    return None


def _examine(index: int, denominator: int, max_depth: int,
             grid_denominators: Sequence[int]) -> Tuple[Dict[str, TheoremCounters], List[Disagreement]]:
    """Tek tensör: analitik kararlar, oracle ve yapısal kontroller"""
    t = pm1_tensor(index)
    counters: Dict[str, TheoremCounters] = {}
    findings: List[Disagreement] = []

    verdicts = {rule: check(t) for rule, check in PM1_CHECKS}
    applicable = {rule: v for rule, v in verdicts.items() if v.status != VerdictStatus.INAPPLICABLE}
    if not applicable:
        return counters, findings

    def finding(kind: str, rule: str, verdict: Optional[Verdict] = None,
                oracle: Optional[OracleStatus] = None, detail: str = "") -> None:
        findings.append(Disagreement(
            kind=kind, index=index, tensor=t, rule=rule,
            verdict=verdict.status if verdict else None, oracle=oracle, detail=detail,
        ))

    # 3.1/3.2/3.3 hipotezleri a123 değeriyle ayrık
    exclusive = [rule for rule in (RULE_THM31, RULE_THM32, RULE_THM33) if rule in applicable]
    if len(exclusive) > 1:
        finding("partition", exclusive[0], detail=f"also applicable: {', '.join(exclusive[1:])}")

    statuses = {v.status for v in applicable.values()}
    if len(statuses) > 1:
        first = next(iter(applicable))
        finding("overlap", first, detail=", ".join(f"{r}: {v.status.value}" for r, v in applicable.items()))

    result = oracle_verdict(t, denominator, max_depth, grid_denominators)

    for rule, verdict in applicable.items():
        strict = verdict.is_strict
        disagreement = inconclusive = 0

        if result.status == OracleStatus.INCONCLUSIVE:
            inconclusive = 1
            finding("inconclusive", rule, verdict, result.status)
        elif strict != result.is_positive:
            disagreement = 1
            finding("oracle", rule, verdict, result.status,
                    detail=f"oracle witness {result.witness}" if result.witness else "")

        if not strict:
            problem = _witness_problem(t, verdict)
            if problem:
                finding("witness", rule, verdict, detail=problem)

        check = dict(PM1_CHECKS)[rule]
        for perm in permutations((1, 2, 3)):
            relabeled = check(t.permuted(perm))
            if relabeled.status != verdict.status:
                finding("orbit", rule, verdict,
                        detail=f"permutation {perm} gives {relabeled.status.value}")
                break

        counters[rule] = TheoremCounters(
            applicable=1,
            strict=int(strict),
            non_strict=int(not strict),
            disagreements=disagreement,
            inconclusive=inconclusive,
        )

    if VerdictStatus.STRICTLY_COPOSITIVE in statuses:
        rule = next(r for r, v in applicable.items() if v.is_strict)
        for drop in (1, 2, 3):
            face = check_dim2(principal_face(t, drop), strict=True, denominator=denominator)
            if not face.is_strict:
                finding("face", rule, applicable[rule], detail=f"face without x{drop} is not strict")

    return counters, findings


def _process_indices(indices: Sequence[int], denominator: int, max_depth: int,
                     grid_denominators: Sequence[int]) -> EnumerationReport:
    counters = {rule: TheoremCounters() for rule in RULES}
    findings: List[Disagreement] = []
    for index in indices:
        partial_counters, partial_findings = _examine(index, denominator, max_depth, grid_denominators)
        for rule, c in partial_counters.items():
            counters[rule] = counters[rule].merge(c)
        findings.extend(partial_findings)
    return EnumerationReport(total=len(indices), counters=counters, disagreements=tuple(findings))


class EnumerationRunner:
    """{-1,0,1} tensörlerini parçalara bölüp paralel doğrula"""

    def __init__(
        self,
        denominator: int = DEFAULT_DENOMINATOR,
        max_depth: int = DEFAULT_MAX_DEPTH,
        grid_denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
        workers: int = 0,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
        indices: Optional[Sequence[int]] = None,
    ):
        self.denominator = denominator
        self.max_depth = max_depth
        self.grid_denominators = tuple(grid_denominators)
        self.workers = _resolve_workers(workers)
        self.chunk_size = chunk_size
        self.indices = range(PM10_COUNT) if indices is None else indices

    async def run(self) -> EnumerationReport:
        logger.info(
            f"Enumeration started: {len(self.indices)} tensors, denominator {self.denominator}, "
            f"max depth {self.max_depth}, {self.workers} worker(s)"
        )
        started = time.perf_counter()

        func = partial(
            _process_indices,
            denominator=self.denominator,
            max_depth=self.max_depth,
            grid_denominators=self.grid_denominators,
        )
        report = await _run_chunks(
            func, _chunked(self.indices, self.chunk_size), self.workers, EnumerationReport(), "enumerate"
        )
        report = replace(report, wall_time=time.perf_counter() - started)

        logger.info(
            f"Enumeration finished in {report.wall_time:.1f}s: {report.disagreement_count} disagreement(s), "
            f"{report.inconclusive_count} inconclusive"
        )
        return report


def enumerate_pm10(
    denominator: int = DEFAULT_DENOMINATOR,
    max_depth: int = DEFAULT_MAX_DEPTH,
    grid_denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
    workers: int = 0,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    indices: Optional[Sequence[int]] = None,
) -> EnumerationReport:
    """Tüm 3^10 tensör (veya verilen indeks alt kümesi)"""
    runner = EnumerationRunner(denominator, max_depth, grid_denominators, workers, chunk_size, indices)
    return asyncio.run(runner.run())


# === Cubic inequality suite ===

READING_PRINTED = "printed"
READING_CORRECTED = "corrected"
READING_ALTERNATE = "alternate"

# (katsayı, (x1, x2, x3) üsleri)
Term = Tuple[int, Tuple[int, int, int]]

X123 = (1, 1, 1)
X1X1X2 = (2, 1, 0)
X1X1X3 = (2, 0, 1)
X1X3X3 = (1, 0, 2)
X2X2X3 = (0, 2, 1)
X2X3X3 = (0, 1, 2)

# (x1+x2+x3)³ > terimlerin toplamı; okumalar satır sırasıyla
INEQUALITY_LINES: Tuple[Tuple[int, Tuple[Tuple[str, Tuple[Term, ...]], ...]], ...] = (
    (1, (
        (READING_PRINTED, ((12, X123), (6, X1X1X2), (6, X2X2X3))),
        (READING_CORRECTED, ((12, X123), (6, X1X1X2), (6, X2X2X3))),
    )),
    (2, (
        (READING_PRINTED, ((12, X123), (6, X1X1X3), (6, X2X2X3))),
        (READING_CORRECTED, ((12, X123), (6, X1X1X3), (6, X2X2X3))),
    )),
    (3, (
        (READING_PRINTED, ((12, X123), (6, X1X1X3), (3, X1X1X2))),
        (READING_CORRECTED, ((12, X123), (6, X1X1X3), (3, X1X1X2))),
    )),
    (4, (
        (READING_PRINTED, ((6, X123), (3, X1X1X3), (6, X1X1X3), (6, X2X2X3))),
        (READING_CORRECTED, ((6, X123), (3, X1X1X2), (6, X1X1X3), (6, X2X2X3))),
    )),
    (5, (
        (READING_PRINTED, ((6, X1X1X3), (6, X1X1X3), (6, X2X2X3))),
        (READING_CORRECTED, ((6, X1X1X3), (6, X1X1X2), (6, X2X2X3))),
        (READING_ALTERNATE, ((6, X1X1X3), (6, X1X3X3), (6, X2X2X3))),
    )),
)

# Tek satırlık kontrol noktası
PROBE_POINT = EvalPoint.of("4/7", "1/7", "2/7")


def terms_tensor(terms: Sequence[Term]) -> SymTensor3:
    """Σ c·x^α'yı tekil girdilere çevir: a_index = c / çokluk"""
    mapping: Dict[Tuple[int, ...], Fraction] = {}
    for coefficient, exp in terms:
        index = index_from_exponent(exp)
        if len(index) != 3:
            raise DomainError(f"Monomial {exp} is not cubic")
        mapping[index] = mapping.get(index, Fraction(0)) + Fraction(coefficient, multiplicity(index))
    return SymTensor3.from_mapping(mapping)


def _cube_minus(subtracted: SymTensor3) -> SymTensor3:
    # (x1+x2+x3)³'ün tüm tekil girdileri 1
    return SymTensor3.from_entries(1 - value for value in subtracted.entries())


def _swap_x2_x3_pair(terms: Sequence[Term]) -> Tuple[Term, ...]:
    swap = {X2X2X3: X2X3X3, X2X3X3: X2X2X3}
    return tuple((c, swap.get(exp, exp)) for c, exp in terms)


def _cycle(terms: Sequence[Term], shift: int) -> Tuple[Term, ...]:
    """x1 → x2 → x3 → x1, `shift` kez"""
    shifted = []
    for c, exp in terms:
        new = [0, 0, 0]
        for i, e in enumerate(exp):
            new[(i + shift) % 3] = e
        shifted.append((c, tuple(new)))
    return tuple(shifted)


def inequality_variants(terms: Sequence[Term]) -> List[Tuple[str, Tuple[Term, ...]]]:
    """x2²x3 ↔ x2x3² değişimi (terim varsa) × üç döngüsel kaydırma"""
    bases = [("identity", tuple(terms))]
    if any(exp in (X2X2X3, X2X3X3) for _, exp in terms):
        bases.append(("swap", _swap_x2_x3_pair(terms)))
    return [
        (name if shift == 0 else f"{name}+cycle{shift}", _cycle(base, shift))
        for name, base in bases
        for shift in range(3)
    ]


@dataclass(frozen=True)
class InequalityCase:
    line: int
    reading: str
    variant: str
    terms: Tuple[Term, ...]
    subtracted: SymTensor3
    verified: bool
    result: OracleResult
    probe_value: Fraction

    @property
    def label(self) -> str:
        return f"line {self.line} {self.reading} {self.variant}"

    @property
    def difference(self) -> SymTensor3:
        return _cube_minus(self.subtracted)

    @property
    def gating(self) -> bool:
        return self.reading == READING_CORRECTED


def verify_inequalities(
    denominator: int = DEFAULT_DENOMINATOR,
    max_depth: int = DEFAULT_MAX_DEPTH,
    grid_denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
) -> List[InequalityCase]:
    """
    Her satır × okuma × varyant için fark formu üzerinde oracle_verdict.
    Vaka ancak PositiveCertified ise doğrulanmış sayılır.
    """
    cases: List[InequalityCase] = []
    for line, readings in INEQUALITY_LINES:
        for reading, terms in readings:
            for variant, variant_terms in inequality_variants(terms):
                subtracted = terms_tensor(variant_terms)
                difference = _cube_minus(subtracted)
                result = oracle_verdict(difference, denominator, max_depth, grid_denominators)
                case = InequalityCase(
                    line=line,
                    reading=reading,
                    variant=variant,
                    terms=variant_terms,
                    subtracted=subtracted,
                    verified=result.is_positive,
                    result=result,
                    probe_value=eval_form3(difference, PROBE_POINT),
                )
                logger.debug(f"Inequality {case.label}: {result.status.value}")
                cases.append(case)

    failed = [c.label for c in cases if not c.verified]
    logger.info(f"Inequality suite: {len(cases) - len(failed)}/{len(cases)} verified")
    for label in failed:
        logger.info(f"  not verified: {label}")
    return cases


def inequalities_passed(cases: Sequence[InequalityCase]) -> bool:
    """Sadece düzeltilmiş okumalar çıkış kodunu belirler"""
    return all(case.verified for case in cases if case.gating)


# === Sufficient condition sampling ===

PRINTED_FAMILY = PRINTED_COR38_II.name
_RULES_BY_NAME: Dict[str, SufficientRule] = {rule.name: rule for rule in SUFFICIENT_RULES + (PRINTED_COR38_II,)}

# Köşegen = c³, c ∈ [0.80, 1.58] → köşegen ∈ [0.512, 3.94]; küp kök eşikleri tam rasyonel
_SCALE_RANGE = (80, 159)
_MARGIN_STEPS = 100


def threshold_instance(rule: Union[SufficientRule, str], role: RoleAssignment = ALL_ROLES[0]) -> SymTensor3:
    """Kuralın tüm eşiklerinde eşitlik, köşegen 1"""
    if isinstance(rule, str):
        if rule not in _RULES_BY_NAME:
            raise DomainError(f"Unknown sufficient rule: {rule}")
        rule = _RULES_BY_NAME[rule]
    return rule.threshold_instance(role)


@dataclass(frozen=True)
class SufficiencySample:
    index: int
    family: str
    rule: str
    role: RoleAssignment
    tensor: SymTensor3


@dataclass(frozen=True)
class FamilyCounters:
    samples: int = 0
    hypothesis_held: int = 0
    positive: int = 0
    nonpositive: int = 0
    inconclusive: int = 0

    def merge(self, other: "FamilyCounters") -> "FamilyCounters":
        return FamilyCounters(
            samples=self.samples + other.samples,
            hypothesis_held=self.hypothesis_held + other.hypothesis_held,
            positive=self.positive + other.positive,
            nonpositive=self.nonpositive + other.nonpositive,
            inconclusive=self.inconclusive + other.inconclusive,
        )


@dataclass(frozen=True)
class SampleFailure:
    sample: SufficiencySample
    oracle: OracleStatus
    witness: Optional[EvalPoint] = None
    witness_value: Optional[Fraction] = None
    hypothesis_held: bool = True


@dataclass(frozen=True)
class ThresholdCheck:
    rule: str
    tensor: SymTensor3
    result: OracleResult

    @property
    def gating(self) -> bool:
        return self.rule != PRINTED_FAMILY


FAMILY_NAMES = tuple(name for name, _ in COROLLARY_FAMILIES) + (PRINTED_FAMILY,)


@dataclass(frozen=True)
class SufficiencyReport:
    seed: int = DEFAULT_SEED
    families: Dict[str, FamilyCounters] = field(
        default_factory=lambda: {name: FamilyCounters() for name in FAMILY_NAMES}
    )
    failures: Tuple[SampleFailure, ...] = ()
    thresholds: Tuple[ThresholdCheck, ...] = ()

    def merge(self, other: "SufficiencyReport") -> "SufficiencyReport":
        return SufficiencyReport(
            seed=self.seed,
            families={name: self.families[name].merge(other.families[name]) for name in FAMILY_NAMES},
            failures=tuple(sorted(self.failures + other.failures, key=lambda f: f.sample.index)),
            thresholds=self.thresholds + other.thresholds,
        )

    @property
    def passed(self) -> bool:
        """Basılı 3.8(ii) hariç: tanık yok, belirsiz yok, hipotez her örnekte geçerli"""
        for name, counters in self.families.items():
            if name == PRINTED_FAMILY:
                continue
            if counters.nonpositive or counters.inconclusive or counters.hypothesis_held != counters.samples:
                return False
        return all(check.result.is_positive for check in self.thresholds if check.gating)


def _draw_sample(rng: np.random.Generator, index: int, family: str,
                 rules: Sequence[SufficientRule]) -> SufficiencySample:
    rule = rules[int(rng.integers(len(rules)))]
    role = ALL_ROLES[int(rng.integers(len(ALL_ROLES)))]
    scales = [Fraction(int(n), 100) for n in rng.integers(*_SCALE_RANGE, size=3)]

    def margin() -> Fraction:
        # 1/4 olasılıkla tam eşik
        if rng.integers(4) == 0:
            return Fraction(0)
        return Fraction(int(rng.integers(1, _MARGIN_STEPS + 1)), 100)

    def at_least(bound: int, entry: Tuple[int, int, int]) -> Fraction:
        return bound * scales[entry[0] - 1] * scales[entry[1] - 1] * scales[entry[2] - 1] + margin()

    mapping = {(i, i, i): scales[i - 1] ** 3 for i in (1, 2, 3)}
    mapping[(1, 2, 3)] = at_least(rule.a123_bound, (1, 2, 3))
    for pattern, bound in rule.bounds:
        entry = role.index(pattern)
        mapping[tuple(sorted(entry))] = at_least(bound, entry)

    return SufficiencySample(
        index=index, family=family, rule=rule.name, role=role, tensor=SymTensor3.from_mapping(mapping),
    )


def draw_sufficiency_samples(count: int, seed: int = DEFAULT_SEED) -> List[SufficiencySample]:
    """Aile başına `count` örnek; aynı tohum → aynı örnekler"""
    if count < 1:
        raise DomainError(f"Sample count must be at least 1, got {count}")
    rng = np.random.Generator(np.random.PCG64(seed))
    families = COROLLARY_FAMILIES + ((PRINTED_FAMILY, (PRINTED_COR38_II,)),)
    pairs = [(family, rules) for family, rules in families for _ in range(count)]
    return [_draw_sample(rng, index, family, rules) for index, (family, rules) in enumerate(pairs)]


def _check_samples(samples: Sequence[SufficiencySample], denominator: int, max_depth: int,
                   grid_denominators: Sequence[int], epsilon: float) -> SufficiencyReport:
    families = {name: FamilyCounters() for name in FAMILY_NAMES}
    failures: List[SampleFailure] = []

    for sample in samples:
        held = check_sufficient_general(sample.tensor, epsilon).status == VerdictStatus.SUFFICIENT_CONDITION_HOLDS
        result = oracle_verdict(sample.tensor, denominator, max_depth, grid_denominators)
        families[sample.family] = families[sample.family].merge(FamilyCounters(
            samples=1,
            hypothesis_held=int(held),
            positive=int(result.is_positive),
            nonpositive=int(result.is_nonpositive),
            inconclusive=int(result.status == OracleStatus.INCONCLUSIVE),
        ))
        if not result.is_positive or (not held and sample.family != PRINTED_FAMILY):
            failures.append(SampleFailure(
                sample=sample,
                oracle=result.status,
                witness=result.witness,
                witness_value=result.witness_value,
                hypothesis_held=held,
            ))

    return SufficiencyReport(families=families, failures=tuple(failures))


async def _sample_sufficiency(samples: List[SufficiencySample], func: Callable, workers: int,
                              chunk_size: int) -> SufficiencyReport:
    return await _run_chunks(func, _chunked(samples, chunk_size), workers, SufficiencyReport(), "sufficiency")


def sample_sufficiency(
    count: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    denominator: int = DEFAULT_DENOMINATOR,
    max_depth: int = DEFAULT_MAX_DEPTH,
    grid_denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
    epsilon: float = DEFAULT_EPSILON,
    workers: int = 0,
    chunk_size: int = 250,
) -> SufficiencyReport:
    """
    Yeter koşulların sağlamlık örneklemesi.

    Her aile (3.6, 3.7, 3.8, 3.9 ve raporlanan basılı 3.8(ii)) için `count`
    örnek çekilir; köşegenler c³ olduğundan eşikler tam olarak kurulur.
    Eşik örnekleri ayrıca oracle ile kontrol edilir.
    """
    logger.info(f"Sufficiency sampling started: {count} sample(s) per family, seed {seed}")
    samples = draw_sufficiency_samples(count, seed)

    func = partial(
        _check_samples,
        denominator=denominator,
        max_depth=max_depth,
        grid_denominators=tuple(grid_denominators),
        epsilon=epsilon,
    )
    report = asyncio.run(_sample_sufficiency(samples, func, _resolve_workers(workers), chunk_size))

    thresholds = []
    for name in _RULES_BY_NAME:
        tensor = threshold_instance(name)
        result = oracle_verdict(tensor, denominator, max_depth, grid_denominators)
        thresholds.append(ThresholdCheck(rule=name, tensor=tensor, result=result))
    report = replace(report, seed=seed, thresholds=tuple(thresholds))

    logger.info(f"Sufficiency sampling finished: {len(report.failures)} finding(s), passed={report.passed}")
    return report


# === Binary cubic closure ===

@dataclass(frozen=True)
class ClosureCase:
    tensor: SymTensor2
    pm1: Verdict
    discriminant: Verdict
    oracle: OracleResult

    @property
    def agrees(self) -> bool:
        if self.oracle.status == OracleStatus.INCONCLUSIVE:
            return False
        return self.pm1.is_strict == self.discriminant.is_strict == self.oracle.is_positive


@dataclass(frozen=True)
class ClosureReport:
    total: int
    strict: int
    disagreements: Tuple[ClosureCase, ...]

    @property
    def passed(self) -> bool:
        return not self.disagreements


def check_lemma23_closure(
    denominator: int = DEFAULT_DENOMINATOR,
    max_depth: int = DEFAULT_MAX_DEPTH,
    grid_denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
) -> ClosureReport:
    """81 {-1,0,1} ikili kübik form: check_dim2_pm1 / check_dim2 / oracle_verdict2"""
    cases = []
    for values in product(PM1_VALUES, repeat=4):
        t = SymTensor2.from_entries(values)
        cases.append(ClosureCase(
            tensor=t,
            pm1=check_dim2_pm1(t),
            discriminant=check_dim2(t, strict=True, denominator=denominator),
            oracle=oracle_verdict2(t, denominator, max_depth, grid_denominators),
        ))

    report = ClosureReport(
        total=len(cases),
        strict=sum(1 for c in cases if c.pm1.is_strict),
        disagreements=tuple(c for c in cases if not c.agrees),
    )
    logger.info(f"Binary closure: {report.strict}/{report.total} strict, {len(report.disagreements)} disagreement(s)")
    return report


# === 3x3 matrix criterion ===

@dataclass(frozen=True)
class MatrixSample:
    index: int
    matrix: SymMatrix3
    minimum: Fraction
    minimizer: EvalPoint
    grid_minimum: Fraction
    copositive: bool
    strict: bool


@dataclass(frozen=True)
class MatrixAgreementReport:
    seed: int
    count: int
    band: float
    banded: int
    strict: int
    disagreements: Tuple[MatrixSample, ...]

    @property
    def passed(self) -> bool:
        return not self.disagreements


def random_matrix(rng: np.random.Generator) -> SymMatrix3:
    """Girdiler [-3, 3] içinde, ortak payda q ∈ 1..6"""
    q = int(rng.integers(1, 7))
    return SymMatrix3.from_entries(Fraction(int(v), q) for v in rng.integers(-3 * q, 3 * q + 1, size=6))


def compare_matrix_criterion(
    count: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    epsilon: float = DEFAULT_EPSILON,
    band: float = DEFAULT_BAND,
    denominator: int = DEFAULT_DENOMINATOR,
) -> MatrixAgreementReport:
    """
    check_matrix3 ile simpleks üzerindeki tam minimumu karşılaştır.
    |min| <= band olan matrisler sayılır ama karşılaştırılmaz.
    """
    if count < 1:
        raise DomainError(f"Sample count must be at least 1, got {count}")
    rng = np.random.Generator(np.random.PCG64(seed))
    banded = strict = 0
    disagreements: List[MatrixSample] = []

    for index in range(count):
        m = random_matrix(rng)
        minimum, minimizer = quadratic_simplex_min(m)
        report = check_matrix3(m, strict=True, epsilon=epsilon)

        if abs(minimum) <= band:
            banded += 1
            continue
        strict += int(minimum > 0)

        if report.strict != (minimum > 0) or report.copositive != (minimum >= 0):
            grid_minimum, _ = quadratic_grid_min(m, denominator)
            disagreements.append(MatrixSample(
                index=index, matrix=m, minimum=minimum, minimizer=minimizer,
                grid_minimum=grid_minimum, copositive=report.copositive, strict=report.strict,
            ))

    result = MatrixAgreementReport(
        seed=seed, count=count, band=band, banded=banded, strict=strict, disagreements=tuple(disagreements),
    )
    logger.info(
        f"Matrix criterion: {count} matrices, {banded} in band, {len(disagreements)} disagreement(s)"
    )
    return result
