import json

import pytest

from losing_contracts import fixtures
from losing_contracts.cli import main


@pytest.fixture
def game_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(fixtures.load(name).to_json()))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate_pd_exit_codes(game_file, capsys):
    assert run(capsys, "validate-pd", game_file("tables-12-13"))[0] == 0
    code, out = run(capsys, "validate-pd", game_file("tables-5-6"), "--output", "json")
    assert code == 3
    assert json.loads(out)["first_violation"] is not None
    assert run(capsys, "validate-pd", game_file("tables-5-6"), "--recursive-oracle")[0] == 3


def test_validate_pd_lemmas(game_file, capsys):
    code, out = run(capsys, "validate-pd", game_file("tables-12-13"), "--lemmas", "--output", "json")
    assert code == 0
    assert json.loads(out)["lemmas"]["lemma5"] is True


def test_check_eq(game_file, capsys):
    code, out = run(capsys, "check-eq", game_file("tables-7-8"), "--output", "json")
    data = json.loads(out)
    assert code == 3
    assert data["counterexample"]["coalition"] == [1, 2]
    assert run(capsys, "check-eq", game_file("table-2"))[0] == 0
    assert run(capsys, "check-eq", game_file("table-1"), "--profile", "2,2")[0] == 3
    assert run(capsys, "check-eq", game_file("table-1"), "--profile", "2,2", "--weak")[0] == 3


def test_make_contract_apply_verify(game_file, tmp_path, capsys):
    contract = tmp_path / "c.json"
    game = game_file("table-1")
    assert main(["make-contract", game, "--out", str(contract)]) == 0
    assert json.loads(contract.read_text())["amounts"] == [[6], [6]]
    code, out = run(capsys, "apply", game, str(contract))
    assert code == 0
    assert json.loads(out) == fixtures.load("table-2").to_json()
    assert run(capsys, "verify-theorems", game, "--contract", str(contract))[0] == 0
    assert run(capsys, "verify-theorems", game, "--theorem", "2")[0] == 0


def test_make_contract_schemes(game_file, tmp_path, capsys):
    game = game_file("tables-12-13")
    for scheme in ("lemma1", "theorem1", "theorem2-reduced", "tilde"):
        code, out = run(capsys, "make-contract", game, "--scheme", scheme)
        assert code == 0 and json.loads(out)["scheme"] == scheme
    eps = tmp_path / "eps.json"
    eps.write_text(json.dumps({"epsilons": [[3], [3], [3]]}))
    code, out = run(capsys, "make-contract", game, "--eps-ladder", str(eps))
    assert json.loads(out)["amounts"] == [[4], [4], [4]]


def test_make_contract_precondition(game_file, capsys):
    assert run(capsys, "make-contract", game_file("tables-5-6"))[0] == 3


def test_gen_and_theorem3(tmp_path, capsys):
    code, out = run(capsys, "gen", "pd", "--seed", "42", "--counts", "2,2,2", "--noise", "0")
    assert code == 0 and json.loads(out)["strategies"] == [2, 2, 2]
    sched = tmp_path / "s.json"
    sched.write_text(json.dumps({"contributions": [[2, 1, 0]] * 3, "threshold": 3, "multiplier": 2}))
    code, out = run(capsys, "gen", "pgg", "--schedule", str(sched))
    assert code == 0 and json.loads(out)["payoffs"][0][0] == 4
    assert run(capsys, "verify-theorems", str(sched), "--theorem", "3")[0] == 0


def test_format_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"players": 2, "strategies": [2, 2], "payoffs": [[1, 1, 1, 0.5], [1, 1, 1, 1]]}')
    assert run(capsys, "validate-pd", str(bad))[0] == 4
    assert run(capsys, "validate-pd", str(tmp_path / "missing.json"))[0] == 4
    sched = tmp_path / "s.json"
    sched.write_text(json.dumps({"contributions": [[2, 1, 1]] * 3, "threshold": 3, "multiplier": 2}))
    assert run(capsys, "gen", "pgg", "--schedule", str(sched))[0] == 4


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["run-suite", "nonsense"])
    assert info.value.code == 2


def test_reproduce_paper(capsys):
    code, out = run(capsys, "reproduce-paper", "--section", "4")
    assert code == 0
    assert "MATCH tables-16-17" in out
    code, out = run(capsys, "reproduce-paper", "--output", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_run_suite_small(capsys):
    code, out = run(capsys, "run-suite", "theorem1", "--trials", "3", "--output", "json")
    data = json.loads(out)
    assert code == 0
    assert data["summary"] == "3/3"
    assert all(len(t["instance"]) == 64 for t in data["trials"])
