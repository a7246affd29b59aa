import io
import json
from fractions import Fraction

import pytest

from src.documents import DocumentError, TensorDocument, load_document, parse_document, serialize_document
from src.tensors import SymTensor2, SymTensor3


def _doc(entries, dim=3, order=3) -> str:
    return json.dumps({"order": order, "dim": dim, "entries": entries})


def test_unique_entries_default_to_zero():
    document = parse_document(_doc({"111": 1, "222": "2", "333": "3/4", "123": "-1/2"}))
    t = document.to_tensor()
    assert t == SymTensor3(a111=1, a222=2, a333=Fraction(3, 4), a123=Fraction(-1, 2))
    assert document.entries["112"] == 0


def test_binary_document():
    t = parse_document(_doc({"111": 1, "112": -1, "122": 1, "222": 1}, dim=2)).to_tensor()
    assert t == SymTensor2(1, -1, 1, 1)


def test_serialized_form():
    text = serialize_document(SymTensor3(a111=1, a123=Fraction(-1, 2)))
    data = json.loads(text)
    assert data["order"] == 3 and data["dim"] == 3
    assert data["entries"]["123"] == "-1/2"
    assert data["entries"]["111"] == "1"
    assert list(data["entries"]) == sorted(data["entries"])


def test_serialize_then_parse(minimum_tensor):
    assert parse_document(serialize_document(minimum_tensor)).to_tensor() == minimum_tensor


@pytest.mark.parametrize("text, field", [
    (_doc({"123": 0.5}), "entries.123"),
    (_doc({"123": "x"}), "entries.123"),
    (_doc({"123": "1/0"}), "entries.123"),
    (_doc({"124": 1}), "entries.124"),
    (_doc({"12": 1}), "entries.12"),
    (_doc({"112": 1}, dim=2, order=2), "order"),
    (_doc({"111": 1}, dim=4), "dim"),
    (json.dumps({"order": 3, "dim": "3", "entries": {}}), "dim"),
    (json.dumps({"dim": 3, "entries": {}}), "order"),
    (_doc("111"), "entries"),
    ("[1, 2, 3]", "document"),
    ("{not json", "document"),
])
def test_invalid_documents(text, field):
    with pytest.raises(DocumentError) as info:
        parse_document(text)
    assert info.value.field == field
    assert str(info.value).startswith(f"{field}: ")
    assert info.value.error_code == "document"


def test_full_nested_array(minimum_tensor):
    nested = [[[int(v) for v in row] for row in plane] for plane in minimum_tensor.to_full_array()]
    assert parse_document(_doc(nested)).to_tensor() == minimum_tensor


def test_full_nested_array_must_be_symmetric():
    nested = [[[1] * 3 for _ in range(3)] for _ in range(3)]
    nested[2][1][0] = 5
    with pytest.raises(DocumentError) as info:
        parse_document(_doc(nested))
    assert info.value.field == "entries"


def test_full_keyed_array(ones_tensor):
    keys = [f"{i}{j}{k}" for i in "123" for j in "123" for k in "123"]
    assert parse_document(_doc({key: 1 for key in keys})).to_tensor() == ones_tensor

    partial = {key: 1 for key in keys if key != "321"}
    with pytest.raises(DocumentError) as info:
        parse_document(_doc(partial))
    assert info.value.field == "entries.321"


def test_from_tensor_keys():
    document = TensorDocument.from_tensor(SymTensor2(1, 2, 3, 4))
    assert document.dim == 2
    assert sorted(document.entries) == ["111", "112", "122", "222"]


def test_load_document_from_file(tmp_path, minimum_tensor):
    path = tmp_path / "tensor.json"
    path.write_text(serialize_document(minimum_tensor), encoding="utf-8")
    assert load_document(str(path)).to_tensor() == minimum_tensor


def test_load_document_from_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(_doc({"111": 1, "222": 1, "333": 1})))
    assert load_document("-").to_tensor() == SymTensor3(a111=1, a222=1, a333=1)


def test_load_document_missing_file(tmp_path):
    with pytest.raises(DocumentError) as info:
        load_document(str(tmp_path / "missing.json"))
    assert info.value.field == "input"


INVALID_UTF8 = b'{"order": 3, "dim": 3, "entries": {"111": "\xff"}}'


def test_load_document_rejects_invalid_utf8(tmp_path):
    path = tmp_path / "tensor.json"
    path.write_bytes(INVALID_UTF8)
    with pytest.raises(DocumentError) as info:
        load_document(str(path))
    assert info.value.field == "input"


def test_load_document_rejects_invalid_utf8_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(INVALID_UTF8), encoding="utf-8"))
    with pytest.raises(DocumentError) as info:
        load_document("-")
    assert info.value.field == "input"
