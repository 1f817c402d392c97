"""Reports, proof trace, corpus runs, fixture parsing, CLI."""

import json
from fractions import Fraction

import pytest

from tamecert import (
    Feasible,
    FixtureError,
    Infeasible,
    TamedTriple,
    TripleVerificationError,
    analyze,
    corpus_run,
    dumps_report,
    parse_fixture,
    proof_trace,
)
from tamecert.cli import main as cli_main
from tamecert.linalg import is_zero_vec
from tamecert.pipeline import EXIT_INPUT_ERROR, EXIT_OK

F = Fraction


# --- fixture parsing ---


def test_parse_rationals_and_labels(corpus):
    fx = corpus["inoue_s0"]
    assert fx.algebra.bracket_basis(2, 3) == (F(0), F(0), F(2), F(0))
    assert fx.algebra.basis_labels == ("e1", "e2", "e3", "e4")


def test_parse_fraction_strings(tmp_path):
    doc = {
        "name": "halves",
        "dim": 2,
        "basis": ["a", "b"],
        "brackets": [{"i": 0, "j": 1, "v": {"1": "1/2"}}],
    }
    fx = parse_fixture(doc)
    assert fx.algebra.bracket_basis(0, 1) == (F(0), F(1, 2))


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.pop("dim"), "missing required field"),
        (lambda d: d.update(dim=-1), "nonnegative"),
        (lambda d: d.update(basis=["one"]), "labels"),
        (lambda d: d["brackets"].append({"i": 1, "j": 0, "v": {}}), "i < j"),
        (lambda d: d["brackets"].append({"i": 0, "j": 1, "v": {"9": 1}}), "outside dimension"),
        (lambda d: d["brackets"].append({"i": 0, "j": 1, "v": {"1": 0.5}}), "integer or 'p/q'"),
        (lambda d: d.update(J=[[1, 0], [0, 1]]), "complex structure"),
        (lambda d: d.update(J=[[0, -1]]), "2x2"),
        (lambda d: d.update(omega=[{"i": 1, "j": 1, "v": 1}]), "i < j"),
    ],
)
def test_parse_diagnostics(mutate, fragment):
    doc = {"name": "t", "dim": 2, "basis": ["a", "b"], "brackets": []}
    mutate(doc)
    with pytest.raises(FixtureError) as err:
        parse_fixture(doc)
    assert fragment in str(err.value)


def test_jacobi_failure_reported_as_fixture_error():
    doc = {
        "name": "bad",
        "dim": 3,
        "brackets": [
            {"i": 0, "j": 1, "v": {"2": 1}},
            {"i": 0, "j": 2, "v": {"1": 1}},
            {"i": 1, "j": 2, "v": {"1": 1}},
        ],
    }
    with pytest.raises(FixtureError) as err:
        parse_fixture(doc)
    assert "Jacobi" in str(err.value)


# --- analyze ---


def test_analyze_h3(corpus):
    report = analyze(corpus["h3_r"])
    assert report.flags["nilpotent"] and report.flags["unimodular"]
    assert report.theorem_consistency.applicable
    assert isinstance(report.feasibility, Infeasible)
    assert report.theorem_consistency.consistent
    assert report.exit_code == EXIT_OK


def test_analyze_abelian(corpus):
    report = analyze(corpus["abelian_r4"])
    assert report.flags["abelian"]
    assert report.theorem_consistency.applicable
    assert isinstance(report.feasibility, Feasible)
    assert report.theorem_consistency.consistent


def test_analyze_aff_not_applicable(corpus):
    report = analyze(corpus["aff_r"])
    assert not report.theorem_consistency.applicable
    assert report.flags["unimodular_witness"] == "H"
    assert isinstance(report.feasibility, Feasible)
    assert report.theorem_consistency.consistent
    assert "not unimodular" in report.theorem_consistency.detail


def test_analyze_without_j(corpus):
    doc = {"name": "bare", "dim": 4, "brackets": [{"i": 0, "j": 1, "v": {"2": 1}}]}
    report = analyze(parse_fixture(doc))
    assert report.feasibility is None
    assert report.j_status == {"present": False, "j_squared_ok": None, "integrable": None}
    assert not report.theorem_consistency.applicable
    assert "no complex structure" in report.theorem_consistency.detail
    assert report.exit_code == EXIT_OK


def test_analyze_reduction_summary(corpus):
    report = analyze(corpus["aff_r2"])
    assert report.reduction == {
        "verified": True,
        "steps": 2,
        "terminal_dim": 0,
        "all_steps_verified": True,
        "unimodular_preserved": None,  # input is not unimodular
    }


def test_report_round_trip(corpus):
    for name in ("h3_r", "abelian_r4", "aff_r2", "inoue_s0"):
        d = analyze(corpus[name]).to_dict()
        assert json.loads(dumps_report(d)) == d


def test_report_field_names_are_stable(corpus):
    d = analyze(corpus["h3_r"]).to_dict()
    assert set(d) == {"name", "flags", "j_status", "feasibility", "theorem_consistency", "reduction"}
    assert {"solvable", "nilpotent", "completely_solvable", "unimodular", "abelian"} <= set(d["flags"])
    assert set(d["j_status"]) == {"present", "j_squared_ok", "integrable"}
    assert set(d["theorem_consistency"]) == {"applicable", "consistent", "detail"}
    assert d["feasibility"]["verdict"] == "infeasible"
    feasible = analyze(corpus["abelian_r4"]).to_dict()["feasibility"]
    assert {"verdict", "lambda_min", "exact_pd", "omega"} == set(feasible)


# --- proof trace ---


def test_proof_trace_aff_r2(corpus):
    fx = corpus["aff_r2"]
    rec = proof_trace(TamedTriple.build(fx.algebra, fx.omega, fx.J))
    assert rec.generator == (F(0), F(1), F(0), F(0))  # X1
    assert rec.h_scalar == F(1)
    assert rec.v_space.dim == 2
    for row in rec.rows:
        assert row.a == 0 and row.b == 0
        assert is_zero_vec(row.z1)
        for residual in row.residuals.values():
            assert is_zero_vec(residual)


def test_proof_trace_abelian(corpus):
    fx = corpus["abelian_r4"]
    rec = proof_trace(TamedTriple.build(fx.algebra, fx.omega, fx.J))
    assert rec.h_scalar == 0
    assert all(row.a == 0 and row.b == 0 and is_zero_vec(row.z1) for row in rec.rows)
    assert rec.trace_zero_checked
    assert rec.reduced_unimodular is True


def test_proof_trace_aff_r(corpus):
    fx = corpus["aff_r"]
    rec = proof_trace(TamedTriple.build(fx.algebra, fx.omega, fx.J))
    assert rec.v_space.dim == 0
    assert rec.rows == ()
    assert rec.h_scalar == F(1)  # [X, JX] = [X, -H] = X


def test_proof_trace_zero_residuals_everywhere(corpus):
    for name, fx in corpus.items():
        if fx.omega is None or fx.J is None:
            continue
        rec = proof_trace(TamedTriple.build(fx.algebra, fx.omega, fx.J))
        for row in rec.rows:
            assert all(is_zero_vec(r) for r in row.residuals.values()), name


def test_proof_trace_requires_verified():
    import tamecert

    g = tamecert.validate(2, {})
    bad = TamedTriple.build_unverified(
        g,
        tamecert.TwoForm.from_dict(2, {(0, 1): -1}),
        tamecert.standard_complex_structure(2),
    )
    with pytest.raises(TripleVerificationError):
        proof_trace(bad)


# --- corpus runs ---


def test_corpus_run_green(fixtures_dir):
    result = corpus_run(fixtures_dir)
    assert result.exit_code == EXIT_OK
    assert len(result.entries) == 11
    assert all(e.error is None for e in result.entries)
    names = [e.name for e in result.entries]
    assert names == sorted(names)
    d = result.to_dict()
    assert d["inconsistencies"] == 0
    assert json.loads(dumps_report(d)) == d


def test_corpus_run_empty(tmp_path):
    result = corpus_run(tmp_path)
    assert result.entries == ()
    assert result.exit_code == EXIT_OK


def test_corpus_run_collects_errors(tmp_path, fixtures_dir):
    (tmp_path / "good.json").write_text((fixtures_dir / "aff_r.json").read_text())
    (tmp_path / "bad_j.json").write_text(json.dumps({
        "name": "bad_j",
        "dim": 2,
        "brackets": [],
        "J": [[1, 0], [0, 1]],
    }))
    result = corpus_run(tmp_path)
    assert len(result.entries) == 2
    by_name = {e.name: e for e in result.entries}
    assert by_name["bad_j"].error is not None and "complex structure" in by_name["bad_j"].error
    assert by_name["aff_r"].report is not None
    assert result.exit_code == EXIT_INPUT_ERROR


def test_corpus_run_parallel_matches_serial(fixtures_dir):
    serial = corpus_run(fixtures_dir)
    parallel = corpus_run(fixtures_dir, jobs=4)
    assert [e.name for e in serial.entries] == [e.name for e in parallel.entries]
    for a, b in zip(serial.entries, parallel.entries):
        assert (a.report is None) == (b.report is None)
        if a.report is not None:
            assert a.report.to_dict() == b.report.to_dict()


def test_theorem_sweep_invariants(fixtures_dir):
    result = corpus_run(fixtures_dir)
    for e in result.entries:
        r = e.report
        assert r is not None
        if r.theorem_consistency.applicable and isinstance(r.feasibility, Feasible):
            assert r.flags["abelian"], e.name
        # converse: abelian fixtures with J are feasible
        if r.flags["abelian"] and r.j_status["present"]:
            assert isinstance(r.feasibility, Feasible), e.name


# --- CLI ---


def test_cli_validate(fixtures_dir, capsys):
    assert cli_main(["validate", str(fixtures_dir / "h3_r.json")]) == EXIT_OK
    assert "OK: h3_r" in capsys.readouterr().out


def test_cli_validate_rejects_bad(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli_main(["validate", str(bad)]) == EXIT_INPUT_ERROR
    assert "INVALID" in capsys.readouterr().out


def test_cli_analyze_json(fixtures_dir, capsys):
    code = cli_main(["analyze", str(fixtures_dir / "h3_r.json"), "--json", "--seed", "7"])
    assert code == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasibility"]["verdict"] == "infeasible"
    assert doc["feasibility"]["rank_one_direction"] == [0, 0, 1, 0]
    assert doc["theorem_consistency"]["applicable"] is True


def test_cli_analyze_human(fixtures_dir, capsys):
    assert cli_main(["analyze", str(fixtures_dir / "aff_r.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FEASIBLE" in out
    assert "lattices and solvmanifold topology are out of scope" in out


def test_cli_tame(fixtures_dir, capsys):
    assert cli_main(["tame", str(fixtures_dir / "abelian_r4.json"), "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasibility"]["verdict"] == "feasible"
    assert doc["feasibility"]["exact_pd"] is True


def test_cli_tame_needs_j(tmp_path, capsys):
    path = tmp_path / "noj.json"
    path.write_text(json.dumps({"name": "noj", "dim": 2, "brackets": []}))
    assert cli_main(["tame", str(path)]) == EXIT_INPUT_ERROR


def test_cli_reduce(fixtures_dir, capsys):
    assert cli_main(["reduce", str(fixtures_dir / "aff_r2.json"), "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["terminal_dim"] == 0
    assert len(doc["steps"]) == 2


def test_cli_corpus(fixtures_dir, capsys):
    assert cli_main(["corpus", str(fixtures_dir)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "inconsistencies: 0" in out


def test_cli_corpus_parallel(fixtures_dir, capsys):
    assert cli_main(["corpus", str(fixtures_dir), "--jobs", "3"]) == EXIT_OK
    assert "inconsistencies: 0" in capsys.readouterr().out


def test_cli_corpus_json_exit_codes(tmp_path, capsys):
    (tmp_path / "broken.json").write_text("[]")
    assert cli_main(["corpus", str(tmp_path), "--json"]) == EXIT_INPUT_ERROR
    doc = json.loads(capsys.readouterr().out)
    assert doc["exit_code"] == EXIT_INPUT_ERROR
