import json

import pytest

from entinv.documents import DocumentError, document_dict, emit_document, parse_document
from entinv.fields import GF, QQ, QQI
from entinv.tensors import Shape, from_terms, random_tensor


def test_dense_round_trip():
    v = random_tensor(Shape((2, 3, 4)), 5, seed=3)
    assert parse_document(emit_document(v)) == v


def test_sparse_round_trip():
    v = from_terms(Shape((2, 2, 2)), [(1, 1, 1), (2, 2, 2)])
    text = emit_document(v, sparse=True)
    data = json.loads(text)
    assert len(data["entries"]) == 2
    assert parse_document(text) == v


def test_round_trip_preserves_scalar_strings():
    doc = {
        "field": "rational",
        "dims": [2, 2],
        "entries": ["1/3", "-7/2", "0", "5"],
    }
    v = parse_document(json.dumps(doc))
    assert document_dict(v)["entries"] == ["1/3", "-7/2", "0", "5"]


def test_gaussian_round_trip():
    doc = {
        "field": "gaussian-rational",
        "dims": [2, 2],
        "entries": ["1/2+3/4i", "-2i", "0", "1-1i"],
    }
    v = parse_document(json.dumps(doc))
    assert v.field == QQI
    assert parse_document(emit_document(v)) == v


def test_gf_document():
    doc = {"field": "gf(7)", "dims": [2, 2], "entries": ["3", "10", "0", "-1"]}
    v = parse_document(json.dumps(doc))
    assert v.field == GF(7)
    assert [c.value for c in v.coeffs] == [3, 3, 0, 6]


def test_sparse_defaults_to_zero():
    doc = {
        "field": "rational",
        "dims": [2, 2, 2],
        "entries": [{"index": [1, 1, 1], "value": "4"}],
    }
    v = parse_document(json.dumps(doc))
    assert v.coeffs[7] == QQ.parse("4")
    assert sum(1 for c in v.coeffs if c) == 1


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.update(extra=1), "unknown field"),
        (lambda d: d.pop("dims"), "missing field"),
        (lambda d: d.update(field="float64"), "unknown field descriptor"),
        (lambda d: d.update(dims=[2]), "2 or 3 factors"),
        (lambda d: d.update(dims=[2, 2.5]), "list of integers"),
        (lambda d: d.update(entries=["1", "0"]), "dense entries need 4"),
        (lambda d: d.update(entries=["1", "0", "1.5", "0"]), "entries[2]"),
        (lambda d: d.update(entries="10"), "must be a list"),
    ],
)
def test_dense_document_errors(mutate, fragment):
    doc = {"field": "rational", "dims": [2, 2], "entries": ["1", "0", "0", "1"]}
    mutate(doc)
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(doc))
    assert fragment in str(err.value)


@pytest.mark.parametrize(
    "entries,fragment",
    [
        ([{"index": [0, 0], "value": "1", "x": 1}], "unknown field"),
        ([{"index": [0, 0]}], "need exactly"),
        ([{"index": [0], "value": "1"}], "list of 2 integers"),
        ([{"index": [0, 5], "value": "1"}], "out of range"),
        ([{"index": [0, 0], "value": "1"}, {"index": [0, 0], "value": "2"}], "duplicate index"),
        ([{"index": [0, 0], "value": 1}], "scalar string"),
        ([{"index": [0, 0], "value": "1"}, "3"], "all scalar strings"),
    ],
)
def test_sparse_document_errors(entries, fragment):
    doc = {"field": "rational", "dims": [2, 2], "entries": entries}
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(doc))
    assert fragment in str(err.value)


def test_invalid_json_reports_source():
    with pytest.raises(DocumentError) as err:
        parse_document("{not json", source="states/x.json")
    assert "states/x.json" in str(err.value)


def test_floats_rejected_everywhere():
    doc = {"field": "rational", "dims": [2, 2], "entries": ["1", "0", "0", "1e-3"]}
    with pytest.raises(DocumentError):
        parse_document(json.dumps(doc))
