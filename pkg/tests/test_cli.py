import json

import pytest

from charp.algebra.multipoly import PolyRing
from charp.cli.main import EXIT_OK, EXIT_USAGE, run


def run_json(capsys, *argv):
    code = run([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_tau_factor(capsys):
    code, payload = run_json(capsys, "tau", "--p", "2", "--e", "3", "--factor")
    assert code == EXIT_OK
    assert payload["tau"] == "t^6 + t^5 + t^4 + t^3 + t^2 + t + 1"
    assert payload["factorization"] == "(t^3 + t + 1)(t^3 + t^2 + 1)"
    assert [f["multiplicity"] for f in payload["factors"]] == [1, 1]


def test_member(capsys):
    code, payload = run_json(capsys, "member", "--p", "2", "x^2+y^2", "x+y")
    assert code == EXIT_OK
    assert payload == {"member": True, "normal_form": "0"}

    code, payload = run_json(capsys, "member", "--p", "3", "x", "x^2", "y")
    assert payload["member"] is False and payload["normal_form"] == "x"


def test_gb(capsys):
    code, payload = run_json(capsys, "gb", "--p", "3", "x*y - t, y^2", "x^2")
    assert code == EXIT_OK
    assert payload["order"] == "grevlex"
    ring = PolyRing(3)
    basis = [ring.parse(g) for g in payload["generators"]]
    assert ring.parse("x*y - t") in basis


def test_colon(capsys):
    code, payload = run_json(capsys, "colon", "--p", "3", "x^2, y^2", "x")
    assert code == EXIT_OK
    ring = PolyRing(3)
    assert sorted(payload["generators"]) == sorted(str(ring.parse(g)) for g in ("x", "y^2"))


def test_saturate_and_intersect(capsys):
    code, payload = run_json(capsys, "saturate", "--p", "3", "x^2, x*y", "x, y")
    assert code == EXIT_OK and payload["generators"] == ["x"]
    code, payload = run_json(capsys, "intersect", "--p", "5", "x", "y")
    assert payload["generators"] == ["x*y"]


def test_eliminate_and_bracket_power(capsys):
    code, payload = run_json(capsys, "eliminate", "--p", "3", "--drop", "x,y", "x - t", "x")
    assert code == EXIT_OK and payload["generators"] == ["t"]
    code, payload = run_json(capsys, "bracket-power", "--p", "2", "--e", "2", "x + y")
    assert payload["generators"] == ["x^4 + y^4"]


def test_frobenius_ass(capsys):
    code, payload = run_json(capsys, "frobenius-ass", "--p", "3", "--e", "1")
    assert code == EXIT_OK
    assert payload["q"] == 3 and payload["tau"] == "t + 1"
    assert payload["tau_divides"] is True
    probe = next(probe for probe in payload["probes"] if probe["prime"] == "t + 1")
    assert probe["associated"] is True and probe["witness"]


def test_frobenius_ass_other_hypersurface(capsys):
    code, payload = run_json(capsys, "frobenius-ass", "--p", "3", "--F", "x*y*(x-y)")
    assert code == EXIT_OK
    assert payload["divisors"] == [] and payload["probes"] == []


def test_order_defaults_to_environment(capsys, monkeypatch):
    monkeypatch.setenv("CHARP_ORDER", "lex")
    code, lex = run_json(capsys, "gb", "--p", "3", "x + y^2", "y^3")
    assert code == EXIT_OK
    assert lex["order"] == "lex"
    assert sorted(lex["generators"]) == ["x + y^2", "y^3"]
    code, grevlex = run_json(capsys, "gb", "--p", "3", "--order", "grevlex", "x + y^2", "y^3")
    assert grevlex["order"] == "grevlex"
    assert grevlex["generators"] != lex["generators"]


def test_frobenius_ass_recognises_respaced_flagship(capsys):
    code, payload = run_json(capsys, "frobenius-ass", "--p", "3", "--F", "y*x*(x - t*y)*(x - y)")
    assert code == EXIT_OK
    assert payload["tau_divides"] is True
    assert any(probe["associated"] for probe in payload["probes"])


def test_verify_paper(capsys):
    code, payload = run_json(capsys, "verify-paper", "--p", "3", "--e", "1")
    assert code == EXIT_OK
    assert len(payload) == 1
    assert payload[0]["theorem12"]["contraction"] == "t + 1"


@pytest.mark.slow
def test_verify_paper_is_deterministic(capsys):
    outputs = []
    for seed in ("0", "3"):
        code, payload = run_json(capsys, "verify-paper", "--p", "2,3,5", "--emax", "2", "--seed", seed)
        assert code == EXIT_OK
        outputs.append([{k: v for k, v in check.items() if k != "duration_ms"} for check in payload])
    assert outputs[0] == outputs[1]
    assert [(c["p"], c["e"]) for c in outputs[0]] == [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)]


def test_sweep(capsys, tmp_path):
    out = tmp_path / "sweep.jsonl"
    code, payload = run_json(capsys, "sweep", "--p", "2,3", "--emax", "1", "--out", str(out))
    assert code == EXIT_OK
    assert len(payload) == 2
    assert len(out.read_text(encoding="utf-8").splitlines()) == 2
    code, payload = run_json(capsys, "sweep", "--p", "2,3", "--emax", "1", "--out", str(out))
    assert code == EXIT_OK and payload == []


def test_json_polynomials_reparse(capsys):
    _, payload = run_json(capsys, "gb", "--p", "5", "x*y*(x-y)*(x-t*y)", "x^5", "y^5")
    ring = PolyRing(5)
    for text in payload["generators"]:
        assert str(ring.parse(text)) == text


@pytest.mark.parametrize(
    "argv",
    [
        ["gb", "--p", "3", "x + z"],
        ["gb", "--p", "3", "2x"],
        ["gb", "x"],
        ["gb", "--p", "4", "x"],
        ["gb", "--p", "2,3", "x"],
        ["tau", "--p", "3", "--e", "0"],
        ["frobenius-ass", "--p", "3", "--split", "x,y", "--F", "x*y*(x-y)"],
        ["no-such-command"],
        ["bracket-power", "--p", "3", "--order", "deglex", "x"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_syntax_error_prints_caret(capsys):
    assert run(["gb", "--p", "3", "x + z"]) == EXIT_USAGE
    assert "x + z\n    ^" in capsys.readouterr().err
