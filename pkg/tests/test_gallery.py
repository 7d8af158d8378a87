import math

import pytest

from paraslant.errors import InputError
from paraslant.frame import Sampling
from paraslant.gallery import (
    GALLERY_IDS,
    Claim,
    entry_document,
    entry_from_document,
    expected_claims,
    load_example,
    parse_condition,
    split_label,
    verify_entry,
)

S = Sampling(16, 0)


def _by(exps, subject, kind):
    return next(e for e in exps if e.claim.subject == subject and e.claim.kind == kind and e.applies)


def test_every_entry_loads_and_round_trips():
    for i in GALLERY_IDS:
        e = load_example(i)
        again = entry_from_document(entry_document(i))
        assert e.id == i and again.claims == e.claims and e.cases == again.cases


def test_unknown_entry():
    with pytest.raises(InputError, match="valid ids"):
        entry_document("aw2")


def test_expected_values_for_aw1_row_examples():
    e = load_example("aw1")
    exps = expected_claims(e, {"a": 1, "b": 2, "c": 1.5, "d": 1.5})
    assert _by(exps, "D1", "lambda-formula").value == 0.25
    assert math.isclose(_by(exps, "D2", "lambda-formula").value, 2.25 / 3.5)
    labels = [x.label for x in exps if x.claim.kind == "type-label" and x.claim.rows]
    assert labels == ["slant-2", "slant-2"]
    exps = expected_claims(e, {"a": 0.5, "b": 0.5, "c": 0.8, "d": 0.8})
    assert [x.label for x in exps if x.claim.kind == "type-label" and x.claim.rows] == ["time-like slant-3", "slant-1"]


def test_boundary_assignment_is_unspecified():
    e = load_example("aw1")
    exps = expected_claims(e, {"a": 2, "b": 1, "c": 1, "d": 2})
    assert _by(exps, "D1", "type-label").label == "unspecified"


def test_inadmissible_case_is_skipped():
    e = load_example("aw1")
    assert e.violations({"a": 1, "b": 0, "c": 1, "d": 0}) == ["a^2+b^2 != 1", "c^2+d^2 != 1"]
    doc = entry_document("aw1")
    doc["gallery"]["cases"] = [{"a": 1, "b": 0, "c": 1, "d": 0}]
    out = verify_entry(entry_from_document(doc), S)
    assert [o.outcome for o in out] == ["SKIPPED"]


def test_final_half_half_passes():
    out = verify_entry(load_example("final-half-half"), S)
    assert out and all(o.outcome == "PASS" for o in out)


def test_strict_mismatch_fails_and_relaxed_mismatch_is_discrepancy():
    doc = entry_document("final-half-half")
    doc["gallery"]["claims"] = [
        {"kind": "lambda-formula", "subject": "D1", "formula": "1/3", "source": "test"},
        {"kind": "lambda-formula", "subject": "D2", "formula": "1/3", "strict": False, "source": "test"},
    ]
    a, b = verify_entry(entry_from_document(doc), S)
    assert a.outcome == "FAIL" and b.outcome == "DISCREPANCY"
    assert len(b.detail["per_point"]) == 16


def test_diecisiete_lambda_varies_with_the_point():
    out = verify_entry(load_example("diecisiete"), S)
    lam = [o for o in out if o.kind == "lambda-formula"]
    assert {o.outcome for o in lam} == {"DISCREPANCY"}
    d = lam[0].detail
    assert d["lambda_max"] - d["lambda_min"] > 0.01 and d["type"] == "non-slant"


def test_conditions_and_labels():
    c = parse_condition("a^2 + b^2 > 1", ("a", "b"))
    assert c.holds({"a": 1, "b": 0.5}) and not c.holds({"a": 0.5, "b": 0.5})
    assert parse_condition("a == 0", ("a",)).holds({"a": 1e-14})
    with pytest.raises(InputError):
        parse_condition("a ~ 1", ("a",))
    assert split_label("time-like slant-3") == ("time-like", "slant-3")
    assert split_label("bi-slant" if False else "para-complex") == (None, "para-complex")
    with pytest.raises(InputError):
        split_label("slant-4")
    with pytest.raises(InputError):
        Claim("guess", "D1", "")
