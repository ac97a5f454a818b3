import json

import numpy as np
import pytest

from hyperlap import parse, serialize
from hyperlap.document import from_document, to_document
from hyperlap.errors import DocumentSyntaxError, SchemaError
from hyperlap.generate import random_hypergraph

from conftest import small_pair

SMALL = """{"format_version": 1, "vertices": ["v1", "v2"], "hyperedges": [
  {"id": "h1", "coefficients": {"v1": 1, "v2": 1}},
  {"id": "h2", "coefficients": {"v1": 1, "v2": 2}}]}"""


def test_parse_small():
    H = parse(SMALL)
    assert H == small_pair()
    assert parse(SMALL.encode()) == H


def test_round_trip(rng):
    for _ in range(100):
        H = random_hypergraph(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        text = serialize(H)
        assert parse(text) == H
        assert serialize(parse(text)) == text
        np.testing.assert_array_equal(parse(text).incidence, H.incidence)


def test_integers_written_plain():
    text = serialize(small_pair())
    assert '"v2": 2\n' in text or '"v2": 2,' in text or '"v2": 2}' in text
    assert text.endswith("\n")


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d["hyperedges"][1]["coefficients"].update(v2=0), "hyperedges[1].coefficients.v2"),
        (lambda d: d["hyperedges"][0]["coefficients"].update(v9=1), "hyperedges[0].coefficients.v9"),
        (lambda d: d["hyperedges"][1].update(id="h1"), "hyperedges[1].id"),
        (lambda d: d["vertices"].append("v3"), "vertices[2]"),
        (lambda d: d["vertices"].append("v1"), "vertices[2]"),
        (lambda d: d["hyperedges"][0]["coefficients"].update(v1="x"), "hyperedges[0].coefficients.v1"),
        (lambda d: d.update(format_version=2), "format_version"),
        (lambda d: d.update(extra=1), "$"),
    ],
)
def test_schema_errors(mutate, where):
    doc = json.loads(SMALL)
    mutate(doc)
    with pytest.raises(SchemaError) as err:
        from_document(doc)
    assert err.value.location == where


def test_syntax_error_location():
    with pytest.raises(DocumentSyntaxError) as err:
        parse('{"vertices": [\n  "v1",\n  ]\n}')
    assert "line 3" in str(err.value)


def test_to_document_shape():
    doc = to_document(small_pair())
    assert doc["format_version"] == 1
    assert doc["hyperedges"][1] == {"id": "h2", "coefficients": {"v1": 1, "v2": 2}}
