"""End-to-end runs of the hq command, in-process through main()."""

import json

import pytest

from hq.cli import RunConfig, UsageError, main


@pytest.fixture
def cache(tmp_path, monkeypatch):
    from hq import cache as hq_cache

    monkeypatch.delenv("HQ_CACHE", raising=False)
    monkeypatch.setattr(hq_cache, "_ACTIVE", hq_cache.active_cache())
    return str(tmp_path / "cache.json")


def test_lvalue_prints_exact_value(cache, capsys):
    assert main(["lvalue", "--disc", "5", "--x", "-2-1*w", "--k", "1", "--cache", cache]) == 0
    assert capsys.readouterr().out.strip() == "2/5"


def test_lvalue_chiprime_only_trivial(cache, capsys):
    assert main(["lvalue", "--disc", "5", "--x", "-4", "--chiprime", "other", "--cache", cache]) == 1
    assert "chiprime" in capsys.readouterr().err


def test_corollary_passes(cache, tmp_path, capsys):
    out = tmp_path / "cor.json"
    assert main(["verify", "corollary", "--disc", "5", "--prec", "50", "--out", str(out), "--cache", cache]) == 0
    d = json.loads(out.read_text())
    assert d["summary"] == {"pass": 50, "fail": 0} and len(d["rows"]) == 50


def test_idempotent_with_warm_cache(cache, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gtable", "--disc", "5", "--kappa", "2", "--prec", "6", "--out", str(a), "--cache", cache]) == 0
    assert main(["gtable", "--disc", "5", "--kappa", "2", "--prec", "6", "--out", str(b), "--cache", cache]) == 0
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert d["schema"] == 1 and set(d["rows"][0]) == {"xi", "n", "H"}


def test_no_negative_norm_unit_is_error(cache, capsys):
    assert main(["verify", "sumsq", "--disc", "12", "--prec", "10", "--cache", cache]) == 1
    assert "NoNegativeNormUnit" in capsys.readouterr().err


def test_verification_failure_exit_code(cache, monkeypatch):
    from hq import qseries
    from hq.report import RelationReport

    def broken(F, U, prec):
        rep = RelationReport("theta_restriction", {})
        rep.add(0, 1, 2)
        return rep

    monkeypatch.setattr(qseries, "verify_theta_identity", broken)
    assert main(["verify", "theta", "--disc", "5", "--prec", "5", "--cache", cache]) == 2


def test_usage_errors_exit_one(cache, capsys):
    assert main(["verify", "theta", "--prec", "5", "--cache", cache]) == 1
    assert main(["lvalue", "--disc", "6", "--x", "2", "--cache", cache]) == 1
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 1
    assert main([]) == 1


def test_tables_and_formats(cache, tmp_path, capsys):
    assert main(["hurwitz", "--max", "4", "--cache", cache]) == 0
    assert capsys.readouterr().out.splitlines() == ["N,H", "0,-1/12", "1,0", "2,0", "3,1/3", "4,1/2"]
    assert main(["cohen", "--r", "2", "--max", "3", "--format", "json", "--cache", cache]) == 0
    assert json.loads(capsys.readouterr().out)["rows"][0]["H"] == "1/120"
    assert main(["restrict", "--disc", "5", "--kappa", "1", "--prec", "6", "--out", "json", "--cache", cache]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["coefficients"][:5] == ["1/30", "0", "2/5", "32/15", "2"]
    assert d["decomposition"]["c_E"] == "-2/15"


def test_fchar(cache, capsys):
    assert main(["fchar", "--disc", "5", "--x", "-2-w", "--ideal", "[5, 2+w]", "--cache", cache]) == 0
    out = capsys.readouterr().out
    assert "disc [5, 2+1*w]" in out and "chi 0" in out


def test_classical_and_consts(cache, tmp_path):
    out = tmp_path / "classical.csv"
    assert main(["verify", "classical", "--max", "40", "--out", str(out), "--cache", cache]) == 0
    assert out.read_text().startswith("relation,n,lhs,rhs,equal")
    assert main(["verify", "consts", "--disc", "5", "--kappa", "2", "--prec", "8", "--cache", cache]) == 0


def test_cache_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("HQ_CACHE", str(tmp_path / "env.json"))
    assert str(RunConfig("hurwitz").cache_path()).endswith("env.json")
    assert str(RunConfig("hurwitz", cache="x.json").cache_path()) == "x.json"


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("gtable").validate()
    with pytest.raises(UsageError):
        RunConfig("gtable", disc=5, kappa=0).validate()
    cfg = RunConfig("restrict", disc=5, out="json").validate()
    assert (cfg.format, cfg.out) == ("json", None)


def test_cache_command(cache, capsys):
    assert main(["lvalue", "--disc", "5", "--x", "-4", "--cache", cache]) == 0
    assert main(["cache", "info", "--cache", cache]) == 0
    assert "entries" in capsys.readouterr().out
    assert main(["cache", "clear", "--cache", cache]) == 0
