import json
from fractions import Fraction

import pytest

from hq.cache import CACHE_SCHEMA, CacheConflict, ValueCache
from hq.report import RelationReport, fmt


def test_fmt():
    assert fmt(Fraction(2, 5)) == "2/5" and fmt(3) == "3" and fmt(Fraction(-1, 12)) == "-1/12"


def test_report_counts_and_serialisation():
    rep = RelationReport("demo", {"D": 5})
    rep.add(1, Fraction(1, 2), Fraction(1, 2))
    rep.add(2, 1, 2)
    assert (rep.n_pass, rep.n_fail, rep.passed) == (1, 1, False)
    d = json.loads(rep.to_json())
    assert d["schema"] == 1 and d["summary"] == {"pass": 1, "fail": 1}
    assert d["rows"][0] == {"n": 1, "lhs": "1/2", "rhs": "1/2", "equal": True}
    assert "version" in d["provenance"]
    assert rep.to_csv().splitlines() == ["n,lhs,rhs,equal", "1,1/2,1/2,true", "2,1,2,false"]


def test_verdict_note_fails_report():
    rep = RelationReport("demo", {})
    rep.add(0, 1, 1)
    rep.notes["verdict_failed"] = True
    assert not rep.passed


def test_cache_roundtrip(tmp_path):
    p = tmp_path / "c.json"
    c = ValueCache(p)
    c.put("5|a|1", Fraction(1, 30))
    c.flush()
    data = json.loads(p.read_text())
    assert data == {"schema": CACHE_SCHEMA, "values": {"5|a|1": "1/30"}}
    c2 = ValueCache(p)
    assert c2.get("5|a|1") == Fraction(1, 30) and c2.hits == 1
    assert c2.get("missing") is None and c2.misses == 1


def test_cache_merges_and_detects_conflicts(tmp_path):
    p = tmp_path / "c.json"
    a, b = ValueCache(p), ValueCache(p)
    a.put("x", 1)
    b.put("y", 2)
    a.flush()
    b.flush()
    assert set(ValueCache(p)._mem) == {"x", "y"}
    c = ValueCache(p)
    with pytest.raises(CacheConflict):
        c.put("x", 3)
    d = ValueCache(tmp_path / "c.json")
    d._mem.pop("x")
    d.put("x", 5)
    with pytest.raises(CacheConflict):
        d.flush()


def test_cache_schema_mismatch_ignored(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"schema": 999, "values": {"x": "1"}}))
    assert ValueCache(p).get("x") is None


def test_cache_clear(tmp_path):
    p = tmp_path / "c.json"
    c = ValueCache(p)
    c.put("x", 1)
    c.flush()
    c.clear()
    assert not p.exists() and len(c) == 0
