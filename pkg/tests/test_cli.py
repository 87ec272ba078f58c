import json
from pathlib import Path

import pytest

from hvir.algebra import format_element
from hvir.cli import SessionConfig, UsageError, read_element, run
from hvir.lattice import NonGenericSpecialization

CORPUS = Path(__file__).parent / "data" / "expressions.txt"


def call(*argv, env=None):
    code, out, err = run(list(argv), env={} if env is None else env)
    return code, (json.loads(out) if out else out), err


def test_bracket_example():
    code, rep, _ = call("bracket", "--lhs", "E[1,0]", "--rhs", "E[-1,0]")
    assert code == 0
    assert rep["status"] == "ok"
    assert rep["payload"]["result"] == "-2*m1*E[0,0] + ((m1^3-m1)/12)*C1"


def test_verma_growth_example():
    code, rep, _ = call("verma-growth", "--gamma", "[-1,0]", "--D", "2", "--K", "1,2,3")
    assert code == 0
    assert rep["payload"]["counts"] == [6, 10, 14]


def test_theta_examples():
    code, rep, _ = call("theta-check", "--which", "1", "--theta", "x^3 - x")
    assert code == 0 and rep["status"] == "ok" and rep["payload"]["defect"] == "0"
    code, rep, _ = call("theta-check", "--which", "1", "--theta", "x^2")
    assert code == 1 and rep["status"] == "fail"
    assert rep["payload"]["defect"] != "0"
    assert rep["counterexamples"]


def test_global_flags_anywhere():
    a = call("--n", "1", "bracket", "--lhs", "E[2]", "--rhs", "E[-2]")
    b = call("bracket", "--lhs", "E[2]", "--rhs", "E[-2]", "--n", "1")
    assert a == b and a[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("bracket", "--lhs", "E[1,0]", "--rhs", "H[-1,2]"),
        ("jacobi", "--samples", "50", "--seed", "3"),
        ("tmod-axioms", "--samples", "30", "--seed", "11"),
        ("tmod-submodule", "--a", "0", "--b", "1", "--F", "0", "--B", "1"),
        ("verma-weights", "--gamma", "[-1,1]", "--K", "2", "--list"),
        ("verma-act", "--x", "E[1,0]", "--monomial", '[{"kind":"H","alpha":[-1,0]}]'),
        ("genverma-level", "--level", "1", "--B", "1", "--seed", "5"),
        ("cocycle-check", "--which", "3", "--B", "1"),
    ],
)
def test_determinism(argv):
    first = run(list(argv), env={})
    assert first[0] == 0, first
    assert run(list(argv), env={}) == first


def test_exit_codes():
    assert run(["bracket", "--lhs", "E[1]", "--rhs", "E[0,0]"], env={})[0] == 2
    assert run(["bracket", "--lhs", "E[1,0] +", "--rhs", "E[0,0]"], env={})[0] == 2
    assert run(["bracket", "--lhs", "zeta*E[1,0]", "--rhs", "E[0,0]"], env={})[0] == 2
    assert run(["bracket"], env={})[0] == 2
    assert run(["no-such-command"], env={})[0] == 2
    assert run(["--n", "0", "bracket", "--lhs", "C1", "--rhs", "C1"], env={})[0] == 2
    assert run(["genverma-level", "--n", "1", "--level", "1"], env={})[0] == 2


def test_syntax_error_offset():
    code, out, err = run(["bracket", "--lhs", "E[1,0] $", "--rhs", "C1"], env={})
    assert code == 2 and out == ""
    info = json.loads(err)
    assert info["error"] == "SyntaxError" and info["offset"] == 7


def test_nonzero_defect_exits_one():
    # a cochain that is not a cocycle
    cochain = json.dumps([{"pair": ["E[1,0]", "E[-1,0]"], "value": "m1^2"}])
    code, rep, _ = call("cocycle-check", "--cochain", cochain, "--B", "1")
    assert code == 1 and rep["counterexamples"]


def test_decompose_command(tmp_path):
    entries = [{"pair": [f"E[{k},0]", f"E[{-k},0]"], "value": f"{k}*m1"} for k in (1, 2)]
    entries += [{"pair": [f"E[0,{k}]", f"E[0,{-k}]"], "value": f"{k}*m2"} for k in (1, 2)]
    entries += [{"pair": [f"E[{i},{j}]", f"E[{-i},{-j}]"], "value": f"{i}*m1+{j}*m2"} for i in (1, 2) for j in (-2, -1, 1, 2)]
    path = tmp_path / "c.json"
    path.write_text(json.dumps(entries))
    code, rep, _ = call("cocycle-decompose", "--cochain", f"@{path}")
    assert code == 0
    assert rep["payload"]["a"] == ["0", "0", "0"]
    assert rep["payload"]["b"] == [{"symbol": "E[0,0]", "value": "-1/2"}]
    assert rep["payload"]["reproduces_input"] is True


def test_genericity_guard():
    code, rep, _ = call("--mu", "2,1", "bracket", "--lhs", "E[1,-2]", "--rhs", "E[0,0]")
    assert code == 1
    assert rep["status"] == "fail"
    assert rep["payload"]["error"] == "NonGenericSpecialization"
    assert rep["counterexamples"] == [{"alpha": [1, -2]}]
    # the same alpha reached as a sum, not typed directly
    code, rep, _ = call("--mu", "2,1", "bracket", "--lhs", "E[1,-1]", "--rhs", "E[0,-1]")
    assert code == 1 and rep["payload"]["error"] == "NonGenericSpecialization"
    # generic values pass and are substituted
    code, rep, _ = call("--mu", "1/2,3", "bracket", "--lhs", "E[1,0]", "--rhs", "E[-1,0]")
    assert code == 0
    assert rep["payload"]["result"] == "-E[0,0] + (-1/32)*C1"


def test_guard_in_read_element():
    cfg = SessionConfig(mu_values=(2, 1))
    with pytest.raises(NonGenericSpecialization):
        read_element("E[1,-2]", cfg)


def test_config_file_and_env(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"n": 1, "window_B": 1}))
    argv = ["bracket", "--lhs", "E[1]", "--rhs", "E[-1]"]
    assert run(argv, env={})[0] == 2  # rank 2 by default
    via_flag = run(["--config", str(path)] + argv, env={})
    via_env = run(argv, env={"HVIR_CONFIG": str(path)})
    assert via_flag == via_env and via_flag[0] == 0
    # explicit flags win over the file
    assert run(["--n", "2"] + argv, env={"HVIR_CONFIG": str(path)})[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "blue"}))
    assert run(argv, env={"HVIR_CONFIG": str(bad)})[0] == 2


def test_session_config_validation():
    with pytest.raises(UsageError):
        SessionConfig(n=0)
    with pytest.raises(UsageError):
        SessionConfig(n=2, mu_values=(1,))
    assert SessionConfig(mu_values=("1/2", 3)).mu_values[0].denominator == 2


def test_pretty():
    code, out, _ = run(["--pretty", "verma-growth", "--gamma", "[-1,0]", "--K", "1,2"], env={})
    assert code == 0
    assert out.startswith("verma-growth: ok")
    assert "counts" in out


def test_tmod_and_verma_commands():
    code, rep, _ = call("tmod-act", "--x", "E[1,0]", "--kappa", "[0,1]")
    assert rep["payload"]["result"] == [{"kappa": [1, 1], "coeff": "m1*b+m2+a"}]
    code, rep, _ = call("verma-act", "--x", "E[1,0]", "--monomial", '[{"kind":"E","alpha":[-1,0]}]')
    assert rep["payload"]["result"] == [{"monomial": [], "coeff": "(m1^3*c1-m1*c1-24*m1*lam)/12"}]
    code, rep, _ = call("verma-act", "--mirror", "--x", "E[-1,0]", "--monomial", "[]")
    assert code == 0 and rep["payload"]["result"] == []
    code, rep, _ = call("tmod-submodule", "--a", "0", "--b", "0", "--F", "0", "--B", "1")
    assert rep["payload"]["subspaces"] == [[[0, 0]]]
    code, rep, _ = call("genverma-level", "--level", "1", "--B", "2")
    assert code == 0 and rep["payload"]["level_count"] == 10


def test_expression_corpus_round_trip():
    cfg = SessionConfig()
    lines = [l for l in CORPUS.read_text().splitlines() if l.strip()]
    assert len(lines) == 50
    for text in lines:
        x = read_element(text, cfg)
        printed = format_element(x)
        y = read_element(printed, cfg)
        assert y == x, text
        assert format_element(y) == printed, text
