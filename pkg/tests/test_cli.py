import json

import pytest

from lamtower.cli import ParseError, main, parse_term, parse_witness
from lamtower.gen import gen_term
from lamtower.terms import App, Lam, Var, to_text
from lamtower.witness import Comp, ReflM, ReflN, TBeta, TEta


def test_parse_named_span():
    assert parse_term("(\\z. x z) y") == App(Lam(App(Var(1), Var(0))), Var(1))


def test_parse_debruijn():
    assert parse_term("#0 #1") == App(Var(0), Var(1))
    assert parse_term("\\ . #0") == Lam(Var(0))


def test_parse_error_position():
    with pytest.raises(ParseError):
        parse_term("(\\z. z")
    with pytest.raises(ParseError):
        parse_term("#x")


def test_parse_multibinder():
    assert parse_term("\\x y. x") == Lam(Lam(Var(1)))


def test_print_parse_roundtrip(rng):
    for _ in range(50):
        t = gen_term(rng, 10)
        assert parse_term(to_text(t)) == t


def test_parse_witness_expr():
    assert parse_witness("beta") == TBeta()
    assert parse_witness("reflM . eta . reflN") == Comp(ReflM(), Comp(TEta(), ReflN()))
    with pytest.raises(ParseError):
        parse_witness("gamma")


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_cli_reduce(capsys):
    code, report = _run(capsys, ["reduce", "(\\z. x z) y", "--fuel", "10"])
    assert code == 0
    assert report["result"]["normal_form"] == "#0 #1"
    assert report["result"]["steps"] == 1


def test_cli_reduce_fuel_exhausted(capsys):
    omega = "(\\x. x x) (\\x. x x)"
    code, report = _run(capsys, ["reduce", omega, "--fuel", "5"])
    assert code == 1
    assert not report["checks"][0]["pass"]


def test_cli_pi0_span(capsys):
    code, report = _run(capsys, ["pi0", "(\\z. x z) y", "x y", "--fuel", "100"])
    assert code == 0
    assert report["result"]["verdict"] == "convertible"
    assert report["result"]["zigzag_length"] == 1  # target is already normal


def test_cli_pi0_not_convertible(capsys):
    code, report = _run(capsys, ["pi0", "x", "y", "--fuel", "10"])
    assert code == 0
    assert report["result"]["verdict"] == "not-convertible"


def test_cli_classify_and_witness(capsys):
    code, report = _run(capsys, ["classify", "reflM . beta"])
    assert code == 0 and report["result"]["tag"] == "beta"
    code, report = _run(capsys, ["witness", "eta", "--depth", "3"])
    assert code == 0
    assert report["result"]["coordinate0"] == "sL1"
    assert report["result"]["separation_vs_beta"]["points_distinct"]
    assert not report["result"]["separation_vs_eta"]["points_distinct"]


def test_cli_tower_check(capsys):
    code, report = _run(capsys, ["tower-check", "--maxdim", "6",
                                 "--samples", "20", "--seed", "1"])
    assert code == 0
    assert all(c["pass"] for c in report["checks"])


def test_cli_kinfty_check(capsys):
    code, report = _run(capsys, ["kinfty", "check", "--samples", "30",
                                 "--seed", "2"])
    assert code == 0
    assert report["result"]["stage1_size"] == 11


def test_cli_coherence(capsys):
    for which in ("assoc", "pentagon", "bridges"):
        code, report = _run(capsys, ["coherence", which, "--span"])
        assert code == 0, which
        assert all(c["pass"] for c in report["checks"])


def test_cli_determinism(capsys):
    argv = ["tower-check", "--maxdim", "5", "--samples", "10", "--seed", "42"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_cli_error_exit(capsys):
    code = main(["reduce", "(\\z. z"])
    out = capsys.readouterr().out
    assert code == 2
    assert "error" in json.loads(out)
