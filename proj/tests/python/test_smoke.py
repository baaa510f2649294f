"""End-to-end smoke tests for the Python bindings."""

import json

import pytest

import proofgraph as pg


def numeral(n):
    return "zero" if n == 0 else "(succ %s)" % numeral(n - 1)


def test_seed_corpus_shape():
    c = pg.seed_corpus()
    assert "add" in c.definitions
    assert "double" in c.definitions
    assert len(c.proven) == 1
    assert c.node_count > 0


def test_eval_appendix_arithmetic():
    c = pg.seed_corpus()
    nf, steps = c.eval("(add 2 2)")
    assert nf == "(succ (succ (succ (succ zero))))"
    assert steps > 0
    for m, n in [(0, 0), (3, 5), (7, 2)]:
        nf, _ = c.eval("(add %d %d)" % (m, n))
        assert nf == numeral(m + n)
    nf, _ = c.eval("(double 5)")
    assert nf == numeral(10)


def test_eval_fuel_exhaustion_raises():
    c = pg.seed_corpus()
    with pytest.raises(pg.ProofgraphError):
        c.eval("(add 2 2)", fuel=1)


def test_typecheck_and_check():
    c = pg.seed_corpus()
    assert c.typecheck("(lam x Nat (succ x))") == "(pi x0 Nat Nat)"
    assert c.check("(refl (add 1 1))", "(id Nat (add 1 1) 2)")
    assert not c.check("(refl zero)", "(id Nat zero (succ zero))")


def test_prove_by_refl_and_by_induction():
    c = pg.seed_corpus()
    easy = c.prove("(id Nat (add 2 2) 4)")
    assert easy["outcome"] == "found"
    hard = c.prove("(pi a Nat (pi b Nat (id Nat (add (succ a) b) (succ (add a b)))))")
    assert hard["outcome"] == "found"
    assert "rec" in hard["proof"]
    assert len(c.proven) == 3


def test_refutation_reports_counterexample():
    c = pg.seed_corpus()
    bad = c.prove("(pi n Nat (id Nat (succ n) n))")
    assert bad["outcome"] == "refuted"
    assert bad["counterexample"] == [0]


def test_growth_layers():
    assert pg.growth(2, 3) == [2, 4, 16, 256]
    assert pg.growth(3, 2) == [3, 9, 81]


def test_discovery_loop_is_deterministic():
    log1 = pg.seed_corpus().discover(steps=4, seed=11)
    log2 = pg.seed_corpus().discover(steps=4, seed=11)
    assert log1 == log2
    events = [json.loads(line) for line in log1.splitlines()]
    assert all(
        e["phase"] in ("conjecture", "search", "compress", "curate") for e in events
    )


def test_report_on_a_run():
    c = pg.seed_corpus()
    log = c.discover(steps=4, seed=11)
    report = json.loads(c.report(log))
    by_id = {r["id"]: r for r in report}
    assert set(by_id) == {"C%d" % i for i in range(1, 11)}
    assert by_id["C1"]["status"] == "satisfied"
    assert by_id["C2"]["status"] in ("satisfied", "unmet")
    for r in report:
        if r["status"] == "satisfied":
            assert r["events"], "satisfied without evidence: %s" % r["id"]


def test_corpus_json_round_trip(tmp_path):
    c = pg.seed_corpus()
    c.prove("(id Nat (add 2 2) 4)")
    path = str(tmp_path / "corpus.json")
    c.save(path)
    back = pg.load_corpus(path)
    assert back.proven == c.proven
    assert back.definitions == c.definitions
    assert pg.corpus_from_json(c.to_json()).node_count == c.node_count
