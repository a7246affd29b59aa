"""
Report Renderer
Sonuç nesneleri → metin tablo veya satır satır JSON kayıtları
"""

import json
import logging
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Optional, Sequence

from .criteria import Verdict
from .documents import TensorDocument
from .harness import (
    ClosureReport, EnumerationReport, InequalityCase, MatrixAgreementReport,
    SufficiencyReport, inequalities_passed,
)
from .oracle import OracleResult
from .tensors import EvalPoint, format_rational

if TYPE_CHECKING:
    from .main import CheckReport

logger = logging.getLogger(__name__)

FORMAT_TEXT = "text"
FORMAT_RECORDS = "records"
FORMATS = (FORMAT_TEXT, FORMAT_RECORDS)


def _rational(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_rational(value)


def _point(point: Optional[EvalPoint]) -> Optional[List[str]]:
    return None if point is None else point.as_strings()


def _entries(tensor: Any) -> Dict[str, str]:
    return TensorDocument.from_tensor(tensor).to_json()["entries"]


def _compact(tensor: Any) -> str:
    return "[" + " ".join(format_rational(v) for v in tensor.entries()) + "]"


def _oracle_fields(result: OracleResult) -> Dict[str, Any]:
    certificate = result.certificate
    return {
        "status": result.status.value,
        "witness": _point(result.witness),
        "witness_value": _rational(result.witness_value),
        "min_estimate": _rational(result.min_estimate),
        "leaf_count": certificate.leaf_count if certificate else None,
        "max_depth": certificate.max_depth if certificate else None,
        "node_count": certificate.node_count if certificate else None,
    }


def _verdict_fields(verdict: Verdict) -> Dict[str, Any]:
    return {
        "status": verdict.status.value,
        "rule": verdict.rule,
        "role": [verdict.role.r, verdict.role.s, verdict.role.t] if verdict.role else None,
        "witness": _point(verdict.witness),
        "witness_value": _rational(verdict.witness_value),
        "note": verdict.note,
    }


class ReportRenderer:
    """Rapor türüne göre metin veya kayıt üret"""

    def __init__(self, output_format: str = FORMAT_TEXT):
        if output_format not in FORMATS:
            raise ValueError(f"Unknown output format: {output_format}")
        self.output_format = output_format

    def render(self, kind: str, report: Any) -> str:
        """
        Raporu tek bir metne çevir

        Args:
            kind: "check", "enumeration", "inequalities", "sufficiency", "matrices", "closure"
            report: İlgili sonuç nesnesi

        Returns:
            Sonunda yeni satır olan metin
        """
        records_method = getattr(self, f"_records_{kind}", None)
        text_method = getattr(self, f"_text_{kind}", None)
        if records_method is None or text_method is None:
            logger.warning(f"Unknown report kind: {kind}")
            return ""

        if self.output_format == FORMAT_RECORDS:
            lines = [json.dumps(record, sort_keys=True, ensure_ascii=False) for record in records_method(report)]
        else:
            lines = list(text_method(report))
        return "\n".join(lines) + "\n"

    # === check ===

    def _records_check(self, report: "CheckReport") -> Iterable[Dict[str, Any]]:
        base = {"dim": report.tensor.DIM, "entries": _entries(report.tensor), "method": report.method}
        if report.verdict is not None:
            yield {"record": "verdict", **base, **_verdict_fields(report.verdict), "exit_code": report.exit_code}
        if report.oracle is not None:
            yield {"record": "oracle", **base, **_oracle_fields(report.oracle), "exit_code": report.exit_code}

    def _text_check(self, report: "CheckReport") -> Iterable[str]:
        yield f"Tensor (dim {report.tensor.DIM}): " + ", ".join(
            f"a{key}={value}" for key, value in _entries(report.tensor).items()
        )
        yield f"Method: {report.method}"
        if report.verdict is not None:
            v = report.verdict
            yield f"Verdict: {v.status.value} ({v.rule})"
            if v.role is not None:
                yield f"  Role: {v.role}"
            if v.witness is not None:
                yield f"  Witness: {v.witness} -> {v.witness_value}"
            if v.note:
                yield f"  Note: {v.note}"
        if report.oracle is not None:
            yield from self._oracle_lines(report.oracle)
        yield f"Exit code: {report.exit_code}"

    def _oracle_lines(self, result: OracleResult) -> Iterable[str]:
        yield f"Oracle: {result.status.value}"
        if result.witness is not None:
            yield f"  Witness: {result.witness} -> {result.witness_value}"
        if result.certificate is not None:
            c = result.certificate
            yield f"  Subdivision: {c.leaf_count} leaves, {c.node_count} nodes, depth {c.max_depth}"
        if result.min_estimate is not None:
            yield f"  Min estimate: {result.min_estimate}"

    # === enumeration ===

    def _records_enumeration(self, report: EnumerationReport) -> Iterable[Dict[str, Any]]:
        yield {
            "record": "enumeration",
            "total": report.total,
            "disagreements": report.disagreement_count,
            "inconclusive": report.inconclusive_count,
            "passed": report.passed,
        }
        for rule, c in report.counters.items():
            yield {
                "record": "theorem",
                "rule": rule,
                "applicable": c.applicable,
                "strict": c.strict,
                "non_strict": c.non_strict,
                "disagreements": c.disagreements,
                "inconclusive": c.inconclusive,
            }
        for d in report.disagreements:
            yield {
                "record": "disagreement",
                "kind": d.kind,
                "index": d.index,
                "entries": _entries(d.tensor),
                "rule": d.rule,
                "verdict": d.verdict.value if d.verdict else None,
                "oracle": d.oracle.value if d.oracle else None,
                "detail": d.detail,
            }

    def _text_enumeration(self, report: EnumerationReport) -> Iterable[str]:
        yield f"Enumerated tensors: {report.total}"
        yield f"{'rule':<16}{'applicable':>11}{'strict':>8}{'non-strict':>11}{'disagree':>9}{'inconcl.':>9}"
        for rule, c in report.counters.items():
            yield (f"{rule:<16}{c.applicable:>11}{c.strict:>8}{c.non_strict:>11}"
                   f"{c.disagreements:>9}{c.inconclusive:>9}")
        for d in report.disagreements:
            yield f"  [{d.kind}] #{d.index} {d.rule}: {_compact(d.tensor)} {d.detail}".rstrip()
        yield f"Disagreements: {report.disagreement_count}, inconclusive: {report.inconclusive_count}"
        yield f"Wall time: {report.wall_time:.1f}s"

    # === inequalities ===

    def _records_inequalities(self, cases: Sequence[InequalityCase]) -> Iterable[Dict[str, Any]]:
        for case in cases:
            yield {
                "record": "inequality",
                "line": case.line,
                "reading": case.reading,
                "variant": case.variant,
                "terms": [[c, list(exp)] for c, exp in case.terms],
                "verified": case.verified,
                "gating": case.gating,
                "probe_value": _rational(case.probe_value),
                **_oracle_fields(case.result),
            }

    def _text_inequalities(self, cases: Sequence[InequalityCase]) -> Iterable[str]:
        yield f"{'line':<6}{'reading':<11}{'variant':<16}{'verified':<10}min estimate"
        for case in cases:
            estimate = _rational(case.result.min_estimate) or "-"
            yield f"{case.line:<6}{case.reading:<11}{case.variant:<16}{str(case.verified):<10}{estimate}"
        verified = sum(1 for c in cases if c.verified)
        yield f"Verified: {verified}/{len(cases)}; corrected readings all verified: {inequalities_passed(cases)}"

    # === sufficiency ===

    def _records_sufficiency(self, report: SufficiencyReport) -> Iterable[Dict[str, Any]]:
        for family, c in report.families.items():
            yield {
                "record": "sufficiency",
                "family": family,
                "seed": report.seed,
                "samples": c.samples,
                "hypothesis_held": c.hypothesis_held,
                "positive": c.positive,
                "nonpositive": c.nonpositive,
                "inconclusive": c.inconclusive,
            }
        for check in report.thresholds:
            yield {
                "record": "threshold",
                "rule": check.rule,
                "gating": check.gating,
                "entries": _entries(check.tensor),
                **_oracle_fields(check.result),
            }
        for failure in report.failures:
            yield {
                "record": "sample_failure",
                "sample": failure.sample.index,
                "family": failure.sample.family,
                "rule": failure.sample.rule,
                "role": [failure.sample.role.r, failure.sample.role.s, failure.sample.role.t],
                "entries": _entries(failure.sample.tensor),
                "oracle": failure.oracle.value,
                "witness": _point(failure.witness),
                "witness_value": _rational(failure.witness_value),
                "hypothesis_held": failure.hypothesis_held,
            }

    def _text_sufficiency(self, report: SufficiencyReport) -> Iterable[str]:
        yield f"Seed: {report.seed}"
        yield f"{'family':<32}{'samples':>8}{'held':>7}{'positive':>9}{'nonpos.':>8}{'inconcl.':>9}"
        for family, c in report.families.items():
            yield (f"{family:<32}{c.samples:>8}{c.hypothesis_held:>7}{c.positive:>9}"
                   f"{c.nonpositive:>8}{c.inconclusive:>9}")
        yield "Threshold instances:"
        for check in report.thresholds:
            yield f"  {check.rule:<32}{check.result.status.value}"
        for failure in report.failures[:20]:
            yield (f"  [{failure.sample.family}] {failure.sample.rule} {failure.sample.role}: "
                   f"{failure.oracle.value} at {failure.witness}")
        if len(report.failures) > 20:
            yield f"  ... {len(report.failures) - 20} more"
        yield f"Passed: {report.passed}"

    # === matrices ===

    def _records_matrices(self, report: MatrixAgreementReport) -> Iterable[Dict[str, Any]]:
        yield {
            "record": "matrix_agreement",
            "seed": report.seed,
            "count": report.count,
            "band": report.band,
            "banded": report.banded,
            "strict": report.strict,
            "disagreements": len(report.disagreements),
        }
        for sample in report.disagreements:
            yield {
                "record": "matrix_disagreement",
                "index": sample.index,
                "entries": {f"{i}{j}": format_rational(v) for (i, j), v in sample.matrix.items()},
                "minimum": format_rational(sample.minimum),
                "minimizer": _point(sample.minimizer),
                "grid_minimum": format_rational(sample.grid_minimum),
                "copositive": sample.copositive,
                "strict": sample.strict,
            }

    def _text_matrices(self, report: MatrixAgreementReport) -> Iterable[str]:
        yield f"Matrices: {report.count} (seed {report.seed})"
        yield f"Strictly copositive: {report.strict}, in band |min| <= {report.band}: {report.banded}"
        for sample in report.disagreements:
            yield (f"  #{sample.index} {_compact(sample.matrix)}: min {sample.minimum} at {sample.minimizer}, "
                   f"grid {sample.grid_minimum}, criterion strict={sample.strict} copositive={sample.copositive}")
        yield f"Disagreements: {len(report.disagreements)}"

    # === closure ===

    def _records_closure(self, report: ClosureReport) -> Iterable[Dict[str, Any]]:
        yield {
            "record": "closure",
            "total": report.total,
            "strict": report.strict,
            "disagreements": len(report.disagreements),
        }
        for case in report.disagreements:
            yield {
                "record": "closure_disagreement",
                "entries": _entries(case.tensor),
                "pm1": case.pm1.status.value,
                "discriminant": case.discriminant.status.value,
                "oracle": case.oracle.status.value,
            }

    def _text_closure(self, report: ClosureReport) -> Iterable[str]:
        yield f"Binary forms: {report.total}, strictly copositive: {report.strict}"
        for case in report.disagreements:
            yield (f"  {_compact(case.tensor)}: pm1 {case.pm1.status.value}, "
                   f"discriminant {case.discriminant.status.value}, oracle {case.oracle.status.value}")
        yield f"Disagreements: {len(report.disagreements)}"

