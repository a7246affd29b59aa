"""
Documents - Tensör JSON belgeleri
{"order": 3, "dim": 3, "entries": {"112": "-1/2", ...}} okuma/yazma
"""

import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any, Dict, Union

from .tensors import (
    CopositivityError, SymTensor2, SymTensor3,
    format_rational, to_rational,
)

logger = logging.getLogger(__name__)

ORDER = 3
STDIN = "-"


class DocumentError(CopositivityError):
    """Hatalı belge; `field` hatalı alanı gösterir"""
    def __init__(self, message: str, field: str):
        self.field = field
        super().__init__(f"{field}: {message}", "document")


class _FloatLiteral(str):
    """JSON float'u; girdi olarak kabul edilmez"""


@dataclass(frozen=True)
class TensorDocument:
    """Tekil girdiler "112" gibi azalmayan indeks dizeleriyle"""
    dim: int
    entries: Dict[str, Fraction]
    order: int = ORDER

    @classmethod
    def from_tensor(cls, t: Union[SymTensor2, SymTensor3]) -> "TensorDocument":
        return cls(
            dim=t.DIM,
            entries={"".join(str(i) for i in index): value for index, value in t.items()},
        )

    def to_tensor(self) -> Union[SymTensor2, SymTensor3]:
        cls = SymTensor3 if self.dim == 3 else SymTensor2
        return cls.from_mapping({tuple(int(c) for c in key): value for key, value in self.entries.items()})

    def to_json(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "dim": self.dim,
            "entries": {key: format_rational(value) for key, value in sorted(self.entries.items())},
        }


def _integer_field(data: dict, name: str, allowed: tuple) -> int:
    if name not in data:
        raise DocumentError("missing", name)
    value = data[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"must be an integer, got {value!r}", name)
    if value not in allowed:
        raise DocumentError(f"must be one of {', '.join(map(str, allowed))}, got {value}", name)
    return value


def _entry_value(raw: Any, field: str) -> Fraction:
    if isinstance(raw, _FloatLiteral):
        raise DocumentError(f"floating-point value {raw} is not accepted, use a 'p/q' string", field)
    try:
        return to_rational(raw)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise DocumentError(f"not a rational value: {raw!r} ({e})", field)


def _full_array_entries(entries: Any, dim: int) -> Dict[str, Fraction]:
    """İç içe liste veya dim³ anahtarlı harita → simetri doğrulanmış tekil girdiler"""
    if isinstance(entries, dict):
        array: Any = [[[None] * dim for _ in range(dim)] for _ in range(dim)]
        for position in product(range(1, dim + 1), repeat=ORDER):
            key = "".join(map(str, position))
            if key not in entries:
                raise DocumentError("full-array input needs every index", f"entries.{key}")
            i, j, k = position
            array[i - 1][j - 1][k - 1] = _entry_value(entries[key], f"entries.{key}")
    else:
        array = entries

    def convert(node: Any, path: str) -> Any:
        if isinstance(node, list):
            return [convert(child, f"{path}[{n}]") for n, child in enumerate(node)]
        return _entry_value(node, path)

    cls = SymTensor3 if dim == 3 else SymTensor2
    try:
        tensor = cls.from_full_array(convert(array, "entries"))
    except CopositivityError as e:
        raise DocumentError(e.message, "entries")
    return TensorDocument.from_tensor(tensor).entries


def document_from_json(data: Any) -> TensorDocument:
    """Ayrıştırılmış JSON nesnesinden belge"""
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object", "document")

    _integer_field(data, "order", (ORDER,))
    dim = _integer_field(data, "dim", (2, 3))

    entries = data.get("entries", {})
    if isinstance(entries, list):
        return TensorDocument(dim=dim, entries=_full_array_entries(entries, dim))
    if not isinstance(entries, dict):
        raise DocumentError("must be an object keyed by index strings", "entries")

    digits = {str(d) for d in range(1, dim + 1)}
    for key in entries:
        if len(key) != ORDER or not set(key) <= digits:
            raise DocumentError(f"index must be {ORDER} digits in 1..{dim}", f"entries.{key}")

    # Sırasız anahtar varsa tam dizi girişi
    if any(list(key) != sorted(key) for key in entries):
        return TensorDocument(dim=dim, entries=_full_array_entries(entries, dim))

    values = {key: _entry_value(raw, f"entries.{key}") for key, raw in entries.items()}
    document = TensorDocument.from_tensor(TensorDocument(dim=dim, entries=values).to_tensor())
    return document


def parse_document(text: str) -> TensorDocument:
    try:
        data = json.loads(text, parse_float=_FloatLiteral)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON ({e.msg} at line {e.lineno} column {e.colno})", "document")
    return document_from_json(data)


def load_document(source: str) -> TensorDocument:
    """Dosya yolu veya standart girdi ("-")"""
    try:
        if source == STDIN:
            text = sys.stdin.read()
        else:
            text = Path(source).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DocumentError(f"cannot decode {source} as UTF-8 (byte {e.start})", "input")
    except OSError as e:
        raise DocumentError(f"cannot read {source}: {e.strerror}", "input")
    logger.debug(f"Loaded document from {source}")
    return parse_document(text)


def serialize_document(t: Union[SymTensor2, SymTensor3]) -> str:
    return json.dumps(TensorDocument.from_tensor(t).to_json(), indent=2, sort_keys=True)
