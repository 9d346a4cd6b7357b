import json

import pytest

from orthobranch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_regions_worked_example(capsys):
    code, obj = run_json(capsys, "regions", "--n", "4",
                         "--xi", "9/2,5/2", "--nu", "1,0")
    assert code == 0
    assert obj["away_from_fences"] is True
    assert obj["base"] == ["9/2", "5/2"]
    assert len(obj["support"]) == 8


def test_regions_empty_support(capsys):
    code, obj = run_json(capsys, "regions", "--n", "3",
                         "--xi", "5/2,3/2", "--nu", "1/3")
    assert code == 0
    assert obj["support"] == []


def test_scalar_worked_example(capsys):
    code, obj = run_json(capsys, "scalar", "--n", "4", "--i", "1",
                         "--eps", "+", "--lam", "3/2,1/2", "--nu", "1,0")
    assert code == 0
    assert obj["h"] == "3" and obj["phi"] == "12" and obj["g"] == "12"
    assert obj["C"] == {"defined": True, "denominator": "12",
                        "numerator": "12", "value": "1"}
    assert obj["nonvanishing"] is True


def test_scalar_without_nu(capsys):
    code, obj = run_json(capsys, "scalar", "--n", "4", "--i", "1",
                         "--eps", "-", "--lam", "3/2,1/2")
    assert code == 0
    assert obj["g"] is None and obj["C"] is None and obj["nonvanishing"] is None
    assert obj["h"] == "3"


def test_scalar_rejects_floats(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scalar", "--n", "4", "--i", "1", "--eps", "+",
              "--lam", "1.5,0.5"])
    assert exc.value.code == 2


def test_branch_examples(capsys):
    code, obj = run_json(capsys, "branch", "--n", "4",
                         "--big", "1,0", "--big-eps", "+", "--sub", "0,0")
    assert code == 0
    assert obj["multiplicity"] == 1 and obj["interlace"] == 1
    code, obj = run_json(capsys, "branch", "--n", "4",
                         "--big", "3,3", "--big-eps", "+", "--sub", "1,0")
    assert code == 0
    assert obj["multiplicity"] == 0 and obj["interlace"] == 0


def test_stability_json_and_csv(capsys, tmp_path):
    csv_path = tmp_path / "table.csv"
    code, obj = run_json(capsys, "stability", "--n", "4",
                         "--xi", "13/2,5/2", "--pi", "3,1",
                         "--bound", "2", "--csv", str(csv_path))
    assert code == 0
    assert obj["constant"] is True
    assert all(m == 1 for _, m in obj["samples"])
    assert obj["fence_crossings"]
    assert [["9/2", "5/2"], ["7/2", "5/2"], -1] in obj["fence_crossings"]
    data = csv_path.read_bytes()
    assert b"\r\n" in data
    header = data.decode().splitlines()[0]
    assert header == "lam_1,lam_2,multiplicity"


def test_stability_fence_base_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["stability", "--n", "4", "--xi", "9/2,5/2", "--pi", "3,1",
              "--bound", "1"])
    assert exc.value.code == 2


def test_verify_ue(capsys):
    code, obj = run_json(capsys, "verify-ue", "--n", "2", "--max-degree", "3")
    assert code == 0
    assert obj["ok"] is True
    assert obj["checks_run"] > 10


def test_verify_scalar_small(capsys):
    code, obj = run_json(capsys, "verify-scalar", "--n", "3",
                         "--big", "1,0", "--sub", "0",
                         "--i", "1", "--eps", "+")
    assert code == 0
    assert obj["ok"] is True
    assert obj["multiplicity"] == 1
    scalar_checks = [c for c in obj["checks"] if "i" in c]
    assert scalar_checks and scalar_checks[0]["value"] == "3/4"
    power_checks = {c["power"]: c for c in obj["checks"] if "power" in c}
    assert power_checks[1]["measured"] == power_checks[1]["closed"] == "0"


def test_verify_scalar_zero_multiplicity(capsys):
    code, obj = run_json(capsys, "verify-scalar", "--n", "3",
                         "--big", "0,0", "--sub", "1",
                         "--i", "1", "--eps", "+")
    assert code == 0
    assert obj["multiplicity"] == 0


def test_verma_demo_table(capsys):
    code, out = run(capsys, "verma-demo", "--a-min", "-2", "--a-max", "0",
                    "--k-max", "2")
    assert code == 0
    lines = out.split("\r\n")
    assert lines[0] == "a,b,c,multiplicity,oracle"
    assert len([l for l in lines if l]) == 1 + 3 * 3 * 3
    for line in lines[1:]:
        if not line:
            continue
        a, b, c, m, o = line.split(",")
        assert m == o


def test_render_svg(capsys, tmp_path):
    svg_path = tmp_path / "slice.svg"
    code, _ = run(capsys, "render", "--n", "4", "--nu", "4,1",
                  "--axes", "1,2", "--range", "0,10", "--out", str(svg_path))
    assert code == 0
    text = svg_path.read_text()
    assert text.startswith("<svg")
    assert text.count("<line") >= 8  # fence lines at both axes


def test_render_bad_range(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["render", "--n", "4", "--nu", "4,1", "--axes", "1,2",
              "--range", "5,5"])
    assert exc.value.code == 2


def test_byte_determinism(capsys):
    _, first = run(capsys, "scalar", "--n", "4", "--i", "2", "--eps", "-",
                   "--lam", "7/2,3/2", "--nu", "2,1")
    _, second = run(capsys, "scalar", "--n", "4", "--i", "2", "--eps", "-",
                    "--lam", "7/2,3/2", "--nu", "2,1")
    assert first == second
    _, r1 = run(capsys, "regions", "--n", "4", "--xi", "13/2,5/2", "--nu", "4,1")
    _, r2 = run(capsys, "regions", "--n", "4", "--xi", "13/2,5/2", "--nu", "4,1")
    assert r1 == r2
