import json
import math
from pathlib import Path

import pytest

import renormlab as rl

SCHEMAS = Path(__file__).resolve().parents[2] / "docs" / "schemas"


def test_fixed_point_certificate():
    c = rl.solve_fixed_point(1e-12)
    assert c["residual"] < 1e-12
    assert c["identity_defect"] < 1e-10
    assert c["dRdc"] > 2
    assert abs(c["sigma0"] ** 2 - c["sigma1"]) < 1e-10
    assert abs(c["domain"][1] - 0.35) <= 0.01


def test_quadratic_map_and_errors():
    q = rl.quadratic(0.3)
    assert q(0.3) == 1.0
    assert q(1.0) == 0.0
    assert q.critical_point == pytest.approx(0.3)
    d1, d2 = q.derivative(0.3)
    assert d1 == pytest.approx(0.0, abs=1e-15)
    assert d2 == pytest.approx(-2 / 0.49)
    with pytest.raises(rl.Error) as e:
        rl.quadratic(0.0)
    assert e.value.kind == "Domain"
    with pytest.raises(rl.Error) as e:
        rl.renormalize(rl.quadratic(0.1))
    assert e.value.kind == "NotRenormalizable"


def test_tower_worked_values():
    levels = rl.interval_tower(1 / 3, 1 / 3, 2)
    assert levels[0]["I0"] == pytest.approx((0.0, 1 / 3))
    assert levels[0]["I1"] == pytest.approx((2 / 3, 1.0))
    assert levels[1]["I0"] == pytest.approx((2 / 9, 1 / 3))


def test_renormalization_converges():
    f = rl.feigenbaum()
    assert abs(f["delta"][7] - 4.669) / 4.669 < 0.01
    q = rl.quadratic(f["c_F"])
    ref = rl.reference_map()
    d0 = rl.distance(q, ref)["value"]
    d6 = rl.distance(rl.renormalize_n(q, 6), ref)["value"]
    assert d6 < d0 * 1e-3


def test_extension_is_fixed():
    g, lip = rl.extension(30)
    assert rl.distance(rl.renormalize(g), g)["value"] < 1e-10
    assert all(b <= a * (1 + 1e-15) for a, b in zip(lip, lip[1:]))


def test_horseshoe_coding():
    h = rl.horseshoe()
    assert h["c0_star"] < h["c1_star"]
    p = rl.code_point([0, 1] * 15)
    assert p["residual"] < p["bound"]


def test_regularity_and_sequences():
    r = rl.regularity(rl.quadratic(0.3), 65)
    assert max(abs(e) for e in r["eps"]) < 1e-12
    assert rl.d_sequence("geometric:0.5", 3) == [0.5, 0.25, 0.125]
    assert rl.max_amplitude() > 0
    assert rl.resolve_map("piecewise(fixed)", {"depth.piecewise": 12}).kind == "piecewise-affine"
    with pytest.raises(rl.Error):
        rl.resolve_map("cubic(1)")


def test_cli_outputs_match_schemas(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    code, out, err = rl.run_cli(["--set", f"outdir={tmp_path}", "fixed-point"])
    assert code == 0, err
    assert json.loads(out)["schema_version"] == rl.schema_version
    for name in ("certificate", "tower"):
        doc = json.loads((tmp_path / f"{name}.json").read_text())
        jsonschema.validate(doc, json.loads((SCHEMAS / f"{name}.schema.json").read_text()))
    code, out, err = rl.run_cli(["--set", f"outdir={tmp_path}", "extend"])
    assert code == 0
    jsonschema.validate(json.loads((tmp_path / "extend.json").read_text()),
                        json.loads((SCHEMAS / "extend.schema.json").read_text()))
    code, out, err = rl.run_cli(["slow", "--d", "harmonic"])
    assert code == 1
    rec = json.loads(err)
    jsonschema.validate(rec, json.loads((SCHEMAS / "error.schema.json").read_text()))
    assert rec["error"]["kind"] == "TooLarge"
    assert math.isfinite(rl.max_amplitude())
