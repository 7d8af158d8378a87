import copy
import json

import pytest

from paraslant.manifest import ManifestError, load_manifest, parse_manifest

BASE = {
    "name": "plane",
    "ambient": {"gallery": "J-g-R4"},
    "chart": {"params": ["u", "v"], "domain": {"u": [-1, 1], "v": [-1, 1]}, "components": ["u", "v", "u^2", "0"]},
    "distributions": {"D1": {"basis": [["1", "0"]]}, "D2": {"basis": [["0", "1"]]}},
    "fields": {"X": ["1", "0"], "Y": ["u", "v"]},
    "analysis": {"classify": ["D1", "TM"], "decompose": ["D1", "D2"], "identities": [["X", "Y"]]},
}


def doc(**changes):
    d = copy.deepcopy(BASE)
    for path, value in changes.items():
        node = d
        keys = path.split("__")
        for k in keys[:-1]:
            node = node[k]
        if value is None:
            node.pop(keys[-1])
        else:
            node[keys[-1]] = value
    return d


def test_valid_manifest_defaults():
    m = parse_manifest(BASE)
    assert m.sampling.count == 64 and m.sampling.seed == 0
    assert m.output == {"format": "json", "path": None}
    assert m.distribution("TM", "x").k == 2
    assert m.fields["Y"] == ("u", "v")


def test_overrides_take_precedence():
    m = parse_manifest(doc(sampling={"count": 8, "seed": 3}), {"samples": 4, "seed": 9, "format": "csv",
                                                                   "tol_slant": 1e-6, "out": None})
    assert (m.sampling.count, m.sampling.seed) == (4, 9)
    assert m.output["format"] == "csv" and m.tolerances.slant == 1e-6


def test_digest_is_stable_and_tracks_sampling():
    a, b = parse_manifest(BASE), parse_manifest(copy.deepcopy(BASE))
    assert a.digest() == b.digest()
    assert parse_manifest(BASE, {"seed": 1}).digest() != a.digest()


@pytest.mark.parametrize("changes,pointer", [
    ({"extra": 1}, "extra"),
    ({"ambient": None}, ""),
    ({"ambient": {"gallery": "nope"}}, "ambient.gallery"),
    ({"ambient": {"gallery": "J-g-R4", "J": [[1]]}}, "ambient"),
    ({"chart__components": ["u", "v", "0"]}, "chart"),
    ({"chart__components": ["u", "v", "w", "0"]}, "chart.components[2]"),
    ({"chart__domain": {"u": [-1, 1]}}, "chart.domain.v"),
    ({"distributions__D1": {"basis": [["1"]]}}, "distributions.D1.basis"),
    ({"distributions__TM": {"basis": [["1", "0"]]}}, "distributions.TM"),
    ({"analysis__classify": ["D9"]}, "analysis.classify[0]"),
    ({"analysis__decompose": ["D1"]}, "analysis.decompose"),
    ({"analysis__identities": [["X", "Z"]]}, "analysis.identities[0][1]"),
    ({"analysis__bogus": True}, "analysis.bogus"),
    ({"analysis__cr_check": {"c": "four"}}, "analysis.cr_check"),
    ({"sampling": {"count": 0}}, "sampling.count"),
    ({"output": {"format": "xml"}}, "output.format"),
])
def test_errors_carry_pointers(changes, pointer):
    with pytest.raises(ManifestError) as err:
        parse_manifest(doc(**changes))
    assert err.value.pointer == pointer


def test_integrability_requires_decompose():
    d = doc(analysis={"integrability": True})
    with pytest.raises(ManifestError, match="requires analysis.decompose"):
        parse_manifest(d)


def test_identity_J_is_rejected_with_axiom_name():
    d = doc(ambient={"J": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                     "g": [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]})
    with pytest.raises(ManifestError, match="Jᵀg\\+gJ ≠ 0") as err:
        parse_manifest(d)
    assert err.value.code == "manifest-error"


def test_parse_errors_mention_offsets():
    with pytest.raises(ManifestError, match="offset 3") as err:
        parse_manifest(doc(chart__components=["u", "v", "u *", "0"]))
    assert err.value.pointer == "chart.components[2]"


def test_load_manifest(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(BASE))
    assert load_manifest(p).name == "plane"
    p.write_text("{not json")
    with pytest.raises(ManifestError, match="not valid JSON"):
        load_manifest(p)
    with pytest.raises(ManifestError, match="not found"):
        load_manifest(tmp_path / "missing.json")
