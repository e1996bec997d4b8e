import json
import subprocess
import sys

import pytest

from newtonids.cli import main
from newtonids.reports import parse_report, rational, render, render_json

from conftest import GERMS, GOLDEN, ROOT

GOLDEN_RUNS = {
    "mult_lambda11.json": ["mult", "--input", "germs/lambda11.germ"],
    "mult_cusp_A.json": ["mult", "--input", "germs/cusp_A.germ"],
    "mult_cusp_B.json": ["mult", "--input", "germs/cusp_B.germ"],
    "eu_polar_2_1.json": ["eu-polar", "[2,1]"],
    "eu_hypersurface.json": ["eu", "--input", "germs/hypersurface.germ", "--breakdown"],
    "eu_hypersurface.txt": ["eu", "--input", "germs/hypersurface.germ", "--breakdown", "--format", "text"],
    "eu_simplex_4_2_3.json": ["eu-simplex", "4", "2", "3"],
    "eu_lambda11_normalized.json": ["eu", "--input", "germs/lambda11_normalized.germ"],
    "eu_omega2.json": ["eu", "--input", "germs/omega2.germ"],
    "probe_lambda11.json": ["position-probe", "--input", "germs/lambda11.germ"],
    "probe_lambda11_normalized.json": ["position-probe", "--input", "germs/lambda11_normalized.germ"],
    "probe_e6l_good.json": ["position-probe", "--input", "germs/e6l.germ", "--mode", "good"],
    "family_check.json": ["family-check", "--input", "germs/family.germ", "--assert", "strong-position"],
    "family_bad_check.json": ["family-check", "--input", "germs/family_bad.germ", "--assert", "strong-position"],
    "newton_lambda11.json": ["newton", "--input", "germs/lambda11.germ"],
    "mixed_volume_sentinel.json": ["mixed-volume", "--input", "germs/sentinel.germ", "--slots", "L,D"],
}


def run(args, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_byte_identical(name, capsys, monkeypatch):
    code, out, _ = run(GOLDEN_RUNS[name], capsys, monkeypatch)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("name", sorted(n for n in GOLDEN_RUNS if n.endswith(".json")))
def test_render_parse_identity(name):
    text = (GOLDEN / name).read_text()
    assert render_json(parse_report(text)) == text


def test_values(capsys, monkeypatch):
    cases = [
        (["mult", "--input", "germs/lambda11.germ"], "multiplicity", 3),
        (["mult", "--input", "germs/cusp_A.germ"], "multiplicity", 2),
        (["mult", "--input", "germs/cusp_B.germ"], "multiplicity", 1),
        (["eu-polar", "2", "1"], "euler_obstruction", 1),
        (["eu-simplex", "4", "2", "3"], "euler_obstruction", -1),
        (["eu", "--input", "germs/hypersurface.germ"], "euler_obstruction", 0),
        (["chi", "--input", "germs/omega2.germ", "--assert", "function-position"], "chi_milnor", -8),
    ]
    for args, key, value in cases:
        code, out, _ = run(args, capsys, monkeypatch)
        assert code == 0, args
        assert rational(json.loads(out)["values"][key]) == value


def test_breakdown_sums_to_total(capsys, monkeypatch):
    _, out, _ = run(["eu", "--input", "germs/hypersurface.germ", "--breakdown"], capsys, monkeypatch)
    d = json.loads(out)
    terms = d["breakdown"]["euler_obstruction"]
    assert [rational(t["term"]) for t in terms] == [2, 2, 2, -4, -2]
    assert all(rational(t["coefficient"]) * rational(t["mixed_volume"]) == rational(t["term"]) for t in terms)
    assert sum(rational(t["term"]) for t in terms) == rational(d["values"]["euler_obstruction"])


def test_nreg(capsys, monkeypatch):
    code, out, _ = run(
        ["nreg", "--input", "germs/smooth.germ", "--fiber-input", "germs/smooth_fiber.germ"], capsys, monkeypatch
    )
    assert code == 0
    assert rational(json.loads(out)["values"]["n_reg"]) == 0


def test_empty_breakdown_renders_as_list():
    text = render({"command": "x", "breakdown": {"a": []}, "values": {}})
    assert json.loads(text)["breakdown"]["a"] == []


@pytest.mark.parametrize(
    "args, code",
    [
        (["mult", "--input", "germs/nope.germ"], 2),
        (["chi", "--input", "germs/cusp_A.germ"], 2),
        (["eu-simplex", "4", "2"], 2),
        (["eu-polar", "a"], 2),
        (["mult"], 2),
        (["mult", "--input", "germs/family.germ"], 2),
        (["mixed-volume", "--input", "germs/sentinel.germ", "--slots", "L,Q"], 2),
        (["mixed-volume", "--input", "germs/sentinel.germ", "--slots", "L,D^x"], 2),
        (["mixed-volume", "--input", "germs/sentinel.germ", "--slots", "L"], 1),
        (["chi", "--input", "germs/cusp_A.germ", "--function-input", "germs/lambda11.germ"], 2),
        (["mult", "--input", "germs/lambda11.germ", "extra"], 2),
    ],
)
def test_exit_codes(args, code, capsys, monkeypatch):
    got, out, err = run(args, capsys, monkeypatch)
    assert got == code
    assert out == ""
    assert err


def test_unbounded_germ_exits_one(tmp_path, capsys, monkeypatch):
    p = tmp_path / "x1.germ"
    p.write_text("vars x1 x2 x3\nmatrix 1 1\nx1\nfunction x1 + x2 + x3\n")
    code, _, err = run(["mult", "--input", str(p)], capsys, monkeypatch)
    assert code == 1
    assert "bounded-complement" in err


def test_strong_position_refutation_blocks_eu(tmp_path, capsys, monkeypatch):
    p = tmp_path / "bad.germ"
    # both rows share their lowest-order part, so every 2-minor of a^lambda vanishes
    p.write_text("vars x y z w\nmatrix 2 3\nx | y | z + w\nx | y | z + w + w^2\n")
    code, _, err = run(["eu", "--input", str(p)], capsys, monkeypatch)
    assert code == 1 and "strong-position" in err
    code, out, _ = run(["eu", "--input", str(p), "--assert", "strong-position"], capsys, monkeypatch)
    assert code == 0
    hyp = {h["name"]: h["status"] for h in json.loads(out)["hypotheses"]}
    assert hyp["strong-position"] == "Asserted"


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["position-probe", "--mode", "weird"])
    assert info.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "newtonids", "eu-polar", "2", "1"], capture_output=True, text=True, cwd=ROOT)
    assert r.returncode == 0
    assert json.loads(r.stdout)["values"]["euler_obstruction"] == "1"
