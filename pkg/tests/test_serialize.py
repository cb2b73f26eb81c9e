from fractions import Fraction

import pytest
from hypothesis import given, settings

from netctrl import serialize
from netctrl.controllability import controllability_report
from netctrl.destructive import all_dcd_pairs, all_tcd_triples, qcd_quads_5
from netctrl.designer import build_design, example_spec, spec_to_dict
from netctrl.exactalg import IntegerPolynomial, NumberField

from conftest import graph_and_leaders


def test_scalar_round_trip():
    assert serialize.scalar_to_text(Fraction(-3, 2)) == "-3/2"
    assert serialize.scalar_to_text(5) == "5"
    assert serialize.scalar_from_text("-3/2") == Fraction(-3, 2)
    f = IntegerPolynomial((1, -3, 1))
    a = NumberField(f).generator
    x = 2 * a - 1
    text = serialize.scalar_to_text(x)
    assert serialize.scalar_from_text(text, f) == x
    assert serialize.modulus_from_text(serialize.modulus_text(f)) == f


def test_headers():
    doc = serialize.document("detection", {"n": 3})
    assert list(doc)[:3] == ["format", "version", "kind"]
    assert serialize.load(serialize.dump(doc), "detection") == doc
    with pytest.raises(serialize.FormatError):
        serialize.load("a: [1, 2")


def test_certificate_documents(two_hub):
    body = {
        "dcd": [serialize.dcd_to_dict(c) for c in all_dcd_pairs(two_hub)],
        "tcd": [serialize.tcd_to_dict(c) for c in all_tcd_triples(two_hub)],
        "qcd": [serialize.qcd_to_dict(c) for c in qcd_quads_5(two_hub)],
    }
    doc = serialize.load(serialize.dump(serialize.document("detection", body)), "detection")
    assert doc["tcd"] == [{"triple": [3, 4, 5], "class": "IV", "eigenvalue": "2", "vector": ["0", "0", "1", "1", "-2"]}]
    assert doc["qcd"][0]["vector"] == ["0", "-3", "1", "1", "1"]
    assert doc["dcd"][0]["pair"] == [1, 2]


def test_design_document():
    spec = example_spec(2)
    out = build_design(spec)
    doc = serialize.load(serialize.dump(serialize.design_to_dict(out, spec_to_dict(spec))), "design")
    assert doc["eigenvalue"] == 6 and doc["eta"] == [0, 1, 0, 1, -1, -1, 0, 0, 0]
    assert doc["verified"] is True


@given(graph_and_leaders(2, 6))
@settings(max_examples=60, deadline=None)
def test_report_round_trip_property(case):
    g, leaders = case
    rep = controllability_report(g, leaders)
    text = serialize.dump(serialize.report_to_dict(rep))
    back = serialize.report_from_dict(serialize.load(text, "controllability"))
    assert back == rep
    assert serialize.dump(serialize.report_to_dict(back)) == text
