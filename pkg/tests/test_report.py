import json

from polyhom import io
from polyhom.decide import has_sdc_up_to, is_cbullet_polhom_up_to
from polyhom.report import Report, SCHEMA_VERSION, render_witness, verdict_to_dict


def test_verdict_to_dict_fields():
    v = has_sdc_up_to(io.chain_semilattice(2), max_arity=2)
    d = verdict_to_dict(v)
    assert d["value"] == "exact-true"
    assert "witness" not in d
    assert "max_arity" in d["bounds"]


def test_witness_serialization_is_json_safe():
    v = is_cbullet_polhom_up_to(io.chain_semilattice(2), max_power=3, max_arity=3)
    d = verdict_to_dict(v)
    text = json.dumps(d)
    back = json.loads(text)
    assert back["witness"]["kind"] == "qfpp-gap-relation"


def test_report_round_trip_and_determinism():
    alg = io.chain_semilattice(2)
    rep = Report(algebra=alg.name, size=alg.size, variety="semilattice")
    rep.add("sdc", has_sdc_up_to(alg, max_arity=2), 0.01)
    a = rep.to_json()
    b = rep.to_json()
    assert a == b
    data = json.loads(a)
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["algebra"] == alg.name
    assert "sdc" in data["properties"]


def test_text_rendering_mentions_values():
    alg = io.chain_semilattice(2)
    rep = Report(algebra=alg.name, size=alg.size, variety="semilattice")
    rep.add("sdc", has_sdc_up_to(alg, max_arity=2), 0.01)
    text = rep.to_text()
    assert "sdc" in text and "exact-true" in text


def test_render_witness_readable():
    v = is_cbullet_polhom_up_to(io.chain_semilattice(2), max_power=3, max_arity=3)
    out = "\n".join(render_witness(v.witness))
    assert "qfpp-gap-relation" in out
