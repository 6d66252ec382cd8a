import json

import pytest
from conftest import entangled_gl2_6

from sympcond.cli import CliConfig, build_parser, main
from sympcond.conductor import ConductorReport, OpenSubgroup, compute_conductor
from sympcond.subgroup import trivial_group
from sympcond.sympgroup import SymplecticContext


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("order", "2", "3"), (51840, 103680)),
        (("order", "1", "4"), (48, 96)),
        (("order", "1", "6"), (144, 288)),
    ],
)
def test_order(capsys, argv, expected):
    code, out = run(capsys, "--format", "json", *argv)
    data = json.loads(out.out)
    assert code == 0 and (data["sp"], data["gsp"]) == expected


def test_order_text(capsys):
    code, out = run(capsys, "order", "2", "3")
    assert "Sp  51840" in out.out and "GSp 103680" in out.out


@pytest.mark.parametrize(
    "argv,b,bound",
    [(("bound", "2", "1"), 2, 4), (("bound", "3", "10", "--bad", "2,3"), 6, 120), (("bound", "6", "5", "--ramified", "7"), 7, 70)],
)
def test_bound(capsys, argv, b, bound):
    code, out = run(capsys, *argv)
    assert code == 0 and out.out.split() == ["B", str(b), "bound", str(bound)]


@pytest.mark.parametrize("argv", [("bound", "2", "1", "--bad", "4"), ("order", "1", "1"), ("order", "x", "3"), ("frob",)])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def write_spec(tmp_path, G, name="g.json"):
    path = tmp_path / name
    path.write_text(json.dumps(G.to_json()))
    return str(path)


def test_conductor_command(capsys, tmp_path):
    cases = [
        (OpenSubgroup.full(1, 6), 1),
        (entangled_gl2_6(), 6),
        (OpenSubgroup(1, 8, trivial_group(SymplecticContext.of(1, 8))), 8),
    ]
    for G, expected in cases:
        code, out = run(capsys, "--format", "json", "conductor", write_spec(tmp_path, G))
        assert code == 0
        rep = ConductorReport.from_dict(json.loads(out.out))
        assert rep.conductor == expected
        assert rep == compute_conductor(G)
    code, out = run(capsys, "conductor", write_spec(tmp_path, entangled_gl2_6()))
    assert out.out.splitlines()[0].split() == ["conductor", "6"]
    assert "adelic index 2" in out.out


def test_conductor_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "conductor", str(bad))[0] == 2
    bad.write_text(json.dumps({"g": 1, "level": 4, "generators": [[9, 0, 0, 1]]}))
    assert run(capsys, "conductor", str(bad))[0] == 2
    assert run(capsys, "conductor", str(tmp_path / "missing.json"))[0] == 2


def test_conductor_budget(capsys, tmp_path):
    path = write_spec(tmp_path, OpenSubgroup.full(1, 6))
    assert run(capsys, "--budget", "10", "conductor", path)[0] == 3


def test_verify_commands(capsys):
    code, out = run(capsys, "verify", "orders", "--g", "2", "--ell", "2")
    assert code == 0 and "overall: pass" in out.out
    code, out = run(capsys, "verify", "normal", "--g", "1", "--ell", "5", "--format", "json")
    data = json.loads(out.out)
    assert code == 0 and data["reports"][0]["details"]["normal_orders"] == [1, 2, 4, 120, 240, 480]
    assert run(capsys, "verify", "normal", "--g", "1", "--ell", "5", "--budget", "50")[0] == 3
    assert run(capsys, "verify", "orders", "--g", "2")[0] == 2


def test_corpus_command(capsys, tmp_path):
    out = tmp_path / "c.json"
    assert run(capsys, "--seed", "1", "corpus", "--size", "5", "--out", str(out))[0] == 0
    first = out.read_text()
    assert run(capsys, "corpus", "--size", "5", "--seed", "1", "--out", str(out))[0] == 0
    assert out.read_text() == first
    assert json.loads(first)["params"]["seed"] == 1


def test_config_precedence():
    parser = build_parser()
    env = {"SYMPCOND_BUDGET": "77", "SYMPCOND_SEED": "5"}
    cfg = CliConfig.resolve(parser.parse_args(["order", "1", "2"]), env)
    assert (cfg.budget, cfg.seed, cfg.format) == (77, 5, "text")
    cfg = CliConfig.resolve(parser.parse_args(["--seed", "9", "order", "1", "2"]), env)
    assert cfg.seed == 9
    cfg = CliConfig.resolve(parser.parse_args(["order", "1", "2"]), {})
    assert (cfg.budget, cfg.seed) == (5_000_000, 0)


def test_bad_env_is_input_error(capsys, monkeypatch):
    monkeypatch.setenv("SYMPCOND_BUDGET", "lots")
    assert run(capsys, "order", "1", "2")[0] == 2
