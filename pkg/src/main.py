#!/usr/bin/env python3
"""
Copositivity Toolkit
Main entry point

Version: 1.0.0
"""

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, TextIO, Union

from . import __version__
from .config_manager import ConfigManager
from .criteria import (
    Verdict, VerdictStatus, check_dim2, check_dim2_pm1, classify,
)
from .documents import DocumentError, load_document
from .harness import (
    check_lemma23_closure, compare_matrix_criterion, enumerate_pm10,
    inequalities_passed, sample_sufficiency, verify_inequalities,
)
from .oracle import OracleResult, OracleStatus, grid_min, grid_min2, oracle_verdict, oracle_verdict2
from .report_renderer import FORMATS, ReportRenderer
from .tensors import CopositivityError, SymTensor2, SymTensor3

logger = logging.getLogger(__name__)

# Çıkış kodları
EXIT_STRICT = 0
EXIT_NOT_STRICT = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 64
EXIT_SOFTWARE = 70
EXIT_CANT_CREATE = 74

METHODS = ("auto", "analytic", "oracle")


def setup_logging(verbose: bool = False) -> None:
    """stderr + logs/copositivity.log; stdout raporlara ayrılmış"""
    log_dir = Path(__file__).parent.parent / "logs"
    log_dir.mkdir(exist_ok=True)

    # Log level from environment variable
    log_level = "DEBUG" if verbose else os.environ.get("COPOSITIVITY_LOG_LEVEL", "INFO").upper()

    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler(log_dir / 'copositivity.log', mode='a', encoding='utf-8')
        ],
        force=True,
    )

    logging.getLogger("asyncio").setLevel(logging.WARNING)


class UsageError(Exception):
    """Komut satırı hatası (çıkış 64)"""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


@dataclass(frozen=True)
class CheckReport:
    tensor: Union[SymTensor2, SymTensor3]
    method: str
    verdict: Optional[Verdict]
    oracle: Optional[OracleResult]
    exit_code: int


# === Helpers ===

def _pick(value: Any, default: Any) -> Any:
    return default if value is None else value


@contextmanager
def _open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Çıktı dosyası iş başlamadan açılır; yazılamıyorsa OSError → 74"""
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8") as f:
        yield f


def _oracle_params(args: argparse.Namespace, config: ConfigManager) -> Dict[str, Any]:
    return {
        "denominator": _pick(args.denominator, config.oracle.denominator),
        "max_depth": _pick(args.max_depth, config.oracle.max_depth),
        "grid_denominators": tuple(config.oracle.grid_denominators),
    }


def _renderer(args: argparse.Namespace, config: ConfigManager) -> ReportRenderer:
    return ReportRenderer(_pick(args.format, config.output.format))


def _output_path(args: argparse.Namespace, config: ConfigManager) -> Optional[str]:
    return _pick(args.output, config.output.path)


def _verdict_exit(verdict: Verdict) -> int:
    if verdict.status in (VerdictStatus.STRICTLY_COPOSITIVE, VerdictStatus.SUFFICIENT_CONDITION_HOLDS):
        return EXIT_STRICT
    if verdict.status == VerdictStatus.NOT_STRICTLY_COPOSITIVE:
        return EXIT_NOT_STRICT
    return EXIT_INDETERMINATE


def _oracle_exit(result: OracleResult) -> int:
    return {
        OracleStatus.POSITIVE_CERTIFIED: EXIT_STRICT,
        OracleStatus.NONPOSITIVE_WITNESS: EXIT_NOT_STRICT,
    }.get(result.status, EXIT_INDETERMINATE)


def _with_note(verdict: Verdict, note: str) -> Verdict:
    return replace(verdict, note=f"{verdict.note}; {note}" if verdict.note else note)


# === Commands ===

def analyze(t: Union[SymTensor2, SymTensor3], method: str, denominator: int, max_depth: int,
            grid_denominators: tuple = (7, 12), epsilon: float = 1e-12) -> CheckReport:
    """
    Tek tensör kararı.

    auto: classify, Inapplicable ise oracle; analytic: sadece classify;
    oracle: sadece oracle_verdict. Kesin pozitif analitik kararlara grid
    minimumu not olarak eklenir.
    """
    if method not in METHODS:
        raise UsageError(f"Unknown method: {method}")
    dim3 = isinstance(t, SymTensor3)
    run_oracle = oracle_verdict if dim3 else oracle_verdict2

    if method == "oracle":
        result = run_oracle(t, denominator, max_depth, grid_denominators)
        return CheckReport(tensor=t, method=method, verdict=None, oracle=result, exit_code=_oracle_exit(result))

    if dim3:
        verdict = classify(t, epsilon)
    else:
        verdict = check_dim2(t, strict=True, denominator=denominator)
        if t.is_pm1():
            verdict = _with_note(verdict, f"Lemma 2.3: {check_dim2_pm1(t).status.value}")

    if verdict.is_strict or verdict.status == VerdictStatus.SUFFICIENT_CONDITION_HOLDS:
        value, point = (grid_min if dim3 else grid_min2)(t, denominator)
        verdict = _with_note(verdict, f"simplex min {value} on grid 1/{denominator} at {point}")

    if method == "auto" and verdict.status == VerdictStatus.INAPPLICABLE:
        logger.info("No analytic criterion applies, falling back to the oracle")
        result = run_oracle(t, denominator, max_depth, grid_denominators)
        return CheckReport(tensor=t, method=method, verdict=verdict, oracle=result, exit_code=_oracle_exit(result))

    return CheckReport(tensor=t, method=method, verdict=verdict, oracle=None, exit_code=_verdict_exit(verdict))


def cmd_check(args: argparse.Namespace, config: ConfigManager) -> int:
    document = load_document(args.input)
    params = _oracle_params(args, config)
    with _open_output(_output_path(args, config)) as out:
        report = analyze(
            document.to_tensor(),
            args.method,
            epsilon=_pick(args.epsilon, config.criteria.epsilon),
            **params,
        )
        out.write(_renderer(args, config).render("check", report))
    return report.exit_code


def cmd_enumerate(args: argparse.Namespace, config: ConfigManager) -> int:
    with _open_output(_output_path(args, config)) as out:
        report = enumerate_pm10(
            workers=_pick(args.workers, config.harness.workers),
            chunk_size=config.harness.chunk_size,
            **_oracle_params(args, config),
        )
        out.write(_renderer(args, config).render("enumeration", report))
    return EXIT_STRICT if report.passed else EXIT_NOT_STRICT


def cmd_inequalities(args: argparse.Namespace, config: ConfigManager) -> int:
    with _open_output(_output_path(args, config)) as out:
        cases = verify_inequalities(**_oracle_params(args, config))
        out.write(_renderer(args, config).render("inequalities", cases))
    return EXIT_STRICT if inequalities_passed(cases) else EXIT_NOT_STRICT


def cmd_sufficiency(args: argparse.Namespace, config: ConfigManager) -> int:
    with _open_output(_output_path(args, config)) as out:
        report = sample_sufficiency(
            count=_pick(args.samples, config.harness.samples),
            seed=_pick(args.seed, config.harness.seed),
            epsilon=_pick(args.epsilon, config.criteria.epsilon),
            workers=_pick(args.workers, config.harness.workers),
            **_oracle_params(args, config),
        )
        out.write(_renderer(args, config).render("sufficiency", report))
    return EXIT_STRICT if report.passed else EXIT_NOT_STRICT


def cmd_matrices(args: argparse.Namespace, config: ConfigManager) -> int:
    with _open_output(_output_path(args, config)) as out:
        report = compare_matrix_criterion(
            count=_pick(args.samples, config.harness.matrix_samples),
            seed=_pick(args.seed, config.harness.seed),
            epsilon=_pick(args.epsilon, config.criteria.epsilon),
            band=args.band,
            denominator=_pick(args.denominator, config.oracle.denominator),
        )
        out.write(_renderer(args, config).render("matrices", report))
    return EXIT_STRICT if report.passed else EXIT_NOT_STRICT


def cmd_closure(args: argparse.Namespace, config: ConfigManager) -> int:
    with _open_output(_output_path(args, config)) as out:
        report = check_lemma23_closure(**_oracle_params(args, config))
        out.write(_renderer(args, config).render("closure", report))
    return EXIT_STRICT if report.passed else EXIT_NOT_STRICT


def _parse_config_value(raw: str) -> Any:
    """JSON olarak dene, olmazsa düz metin"""
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def cmd_config(args: argparse.Namespace, config: ConfigManager) -> int:
    if args.action == "show":
        print(json.dumps(config.as_dict(), indent=2, ensure_ascii=False))
        return EXIT_STRICT

    section, _, key = args.key.partition(".")
    try:
        config.update(section, key, _parse_config_value(args.value))
    except KeyError as e:
        raise UsageError(e.args[0])
    return EXIT_STRICT


COMMANDS: Dict[str, Callable[[argparse.Namespace, ConfigManager], int]] = {
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "inequalities": cmd_inequalities,
    "sufficiency": cmd_sufficiency,
    "matrices": cmd_matrices,
    "closure": cmd_closure,
    "config": cmd_config,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--denominator", type=int, help="Grid paydası (varsayılan 84)")
    common.add_argument("--max-depth", type=int, help="Alt bölme derinlik sınırı (varsayılan 30)")
    common.add_argument("--epsilon", type=float, help="Kayan nokta eşik toleransı (varsayılan 1e-12)")
    common.add_argument("--seed", type=int, help="Rastgele örnekleme tohumu")
    common.add_argument("--output", help="Rapor dosyası (varsayılan stdout)")
    common.add_argument("--format", choices=FORMATS, help="text veya records")
    common.add_argument("--workers", type=int, help="Süreç sayısı (0 = işlemci sayısı)")
    common.add_argument("--verbose", action="store_true", help="DEBUG log")
    common.add_argument("--config", help="Config dosyası yolu")

    parser = _Parser(prog="copositivity", description="Strict copositivity toolkit for small symmetric tensors")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="Tek tensör kontrolü")
    check.add_argument("input", nargs="?", default="-", help="Tensör belgesi (JSON) veya '-' (stdin)")
    check.add_argument("--method", choices=METHODS, default="auto")

    commands.add_parser("enumerate", parents=[common], help="Tüm {-1,0,1} tensörleri")
    commands.add_parser("inequalities", parents=[common], help="Kübik eşitsizlik seti")

    sufficiency = commands.add_parser("sufficiency", parents=[common], help="Yeter koşul örneklemesi")
    sufficiency.add_argument("--samples", type=int, help="Aile başına örnek sayısı")

    matrices = commands.add_parser("matrices", parents=[common], help="3x3 matris kriteri karşılaştırması")
    matrices.add_argument("--samples", type=int, help="Matris sayısı")
    matrices.add_argument("--band", type=float, default=1e-9, help="Karşılaştırma dışı |min| bandı")

    commands.add_parser("closure", parents=[common], help="81 ikili {-1,0,1} form")

    config = commands.add_parser("config", parents=[common], help="Config göster / değiştir")
    config_actions = config.add_subparsers(dest="action", required=True)
    config_actions.add_parser("show")
    config_set = config_actions.add_parser("set")
    config_set.add_argument("key", help="bölüm.anahtar, örn. oracle.denominator")
    config_set.add_argument("value")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(args.verbose)
    logger.debug(f"Copositivity toolkit v{__version__}: {args.command}")

    try:
        config = ConfigManager(args.config)
        return COMMANDS[args.command](args, config)
    except DocumentError as e:
        logger.error(f"Invalid document ({e.field}): {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, CopositivityError) as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CANT_CREATE
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
