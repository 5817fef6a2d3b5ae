"""Workspace documents, the check runner, generators, and the CLI."""

import json
import copy

import pytest

from bistack import cli
from bistack.errors import DanglingReference, ParseError, UnknownCheck
from bistack.generate import PROFILES, generate
from bistack.runner import replay, run_all, run_check, strip_timing
from bistack.sieves import check_bitopology
from bistack.two_cat import check_two_category
from bistack.workspace import SCHEMA, corpus_names, corpus_path, load, \
    load_data, normalize, save


@pytest.fixture(scope="module")
def corpus_doc():
    return load(corpus_path("walking_arrow.site"))


# --- loading and saving -------------------------------------------------------


def test_corpus_file_loads_with_expected_counts(corpus_doc):
    assert len(corpus_doc.two_cats) == 1
    assert len(corpus_doc.bisieves) == 2
    assert "2stack:F1" in corpus_doc.checks


def test_load_save_identity_on_normalized_documents(corpus_doc, tmp_path):
    p = tmp_path / "copy.site"
    save(corpus_doc, p)
    original = open(corpus_path("walking_arrow.site"), "rb").read()
    assert p.read_bytes() == original
    assert normalize(corpus_doc.raw).encode() == original


def test_empty_workspace_is_valid():
    doc = load_data({"schema": SCHEMA})
    assert doc.checks == {}


def test_unknown_schema_rejected():
    with pytest.raises(ParseError):
        load_data({"schema": "something-else/9"})


def test_parse_error_carries_line_and_column(tmp_path):
    p = tmp_path / "broken.site"
    p.write_text('{\n  "schema": "%s",\n  oops\n}' % SCHEMA)
    with pytest.raises(ParseError) as exc:
        load(str(p))
    assert "line 3" in str(exc.value)


def test_dangling_check_reference_rejected(corpus_doc):
    raw = copy.deepcopy(corpus_doc.raw)
    raw["checks"]["bad"] = {"op": "bisieve", "bisieve": "no_such_sieve"}
    with pytest.raises(DanglingReference):
        load_data(raw)


# --- running checks -------------------------------------------------------------


def test_corpus_t1_passes(corpus_doc):
    assert run_check(corpus_doc, "T1")["verdict"] == "pass"


def test_corpus_2stack_reports_all_three_conditions(corpus_doc):
    r = run_check(corpus_doc, "2stack:F1")
    assert r["verdict"] == "pass"
    blob = " ".join(r["details"])
    for cond in ("(2C)", "(M)", "(O)"):
        assert cond in blob


def test_zero_budget_makes_nontrivial_search_inconclusive(corpus_doc):
    r = run_check(corpus_doc, "2stack:F1", limit=0)
    assert r["verdict"] == "inconclusive"


def test_unknown_check_name_raises(corpus_doc):
    with pytest.raises(UnknownCheck):
        run_check(corpus_doc, "nonexistent")


def test_reports_are_deterministic_modulo_timing(corpus_doc):
    a = run_check(corpus_doc, "2stack:F1")
    b = run_check(corpus_doc, "2stack:F1")
    assert strip_timing(a) == strip_timing(b)


def test_run_all_is_sorted_and_thread_count_invariant(corpus_doc,
                                                      monkeypatch):
    seq = run_all(corpus_doc)
    assert [r["check"] for r in seq] == sorted(corpus_doc.checks)
    monkeypatch.setenv("DKIT_THREADS", "4")
    par = run_all(corpus_doc)
    assert [strip_timing(r) for r in seq] == [strip_timing(r) for r in par]


def test_replay_reproduces_every_corpus_report(corpus_doc):
    for report in run_all(corpus_doc):
        same, _ = replay(report, corpus_doc)
        assert same, report["check"]


def test_every_bundled_corpus_document_loads():
    for name in corpus_names():
        doc = load(corpus_path(name))
        assert doc.two_cats


# --- generators ------------------------------------------------------------------


def test_generate_is_deterministic():
    for profile in PROFILES:
        assert normalize(generate(3, profile)) \
            == normalize(generate(3, profile))


def test_generate_rejects_unknown_profile():
    with pytest.raises(ValueError):
        generate(0, "no-such-profile")


@pytest.mark.parametrize("profile", ["locally-discrete-site", "tiny-2site"])
def test_generated_sites_self_validate(profile):
    for seed in range(3):
        doc = load_data(generate(seed, profile))
        for k in doc.two_cats.values():
            assert check_two_category(k).ok
        for tau in doc.bitopologies.values():
            assert check_bitopology(tau).ok
        assert "F1" in doc.trihoms


def test_mutant_fails_exactly_the_labeled_check():
    for seed in range(3):
        raw = generate(seed, "mutant")
        label = raw["mutation"]
        doc = load_data(raw)
        failing = [r["check"] for r in run_all(doc)
                   if r["verdict"] != "pass"]
        assert failing == [label["check"]], (seed, label, failing)


# --- command line ------------------------------------------------------------------


def _site(tmp_path, seed=1, profile="tiny-2site"):
    p = tmp_path / "w.site"
    assert cli.main(["generate", "--seed", str(seed),
                     "--profile", profile, "-o", str(p)]) == 0
    return str(p)


def test_cli_validate_and_run_exit_zero_on_pass(tmp_path, capsys):
    path = _site(tmp_path)
    assert cli.main(["validate", path]) == 0
    assert cli.main(["run", path, "--check", "T1"]) == 0
    out = capsys.readouterr().out
    assert "T1: pass" in out


def test_cli_json_format_is_machine_readable(tmp_path, capsys):
    path = _site(tmp_path)
    capsys.readouterr()
    assert cli.main(["run", path, "--check", "T1",
                     "--format", "json"]) == 0
    r = json.loads(capsys.readouterr().out)
    assert r["check"] == "T1" and r["verdict"] == "pass"


def test_cli_exit_codes_fail_inconclusive_input_error(tmp_path, capsys):
    mutant = tmp_path / "m.site"
    assert cli.main(["generate", "--seed", "0", "--profile", "mutant",
                     "-o", str(mutant)]) == 0
    assert cli.main(["run", str(mutant)]) == 1
    good = _site(tmp_path)
    assert cli.main(["run", good, "--check", "2stack:F1",
                     "--budget", "0"]) == 2
    assert cli.main(["run", good, "--check", "missing"]) == 3
    assert cli.main(["run", str(tmp_path / "absent.site")]) == 3


def test_cli_replay_roundtrip(tmp_path, capsys):
    path = _site(tmp_path)
    capsys.readouterr()
    assert cli.main(["run", path, "--check", "2stack:F1",
                     "--format", "json"]) == 0
    rep = tmp_path / "report.json"
    rep.write_text(capsys.readouterr().out)
    assert cli.main(["replay", str(rep), path]) == 0
    data = json.loads(rep.read_text())
    data["verdict"] = "fail"
    rep.write_text(json.dumps(data))
    assert cli.main(["replay", str(rep), path]) == 1


def test_cli_groth_exports_a_valid_two_category(tmp_path, capsys):
    path = _site(tmp_path)
    doc = load(path)
    sieve = sorted(doc.bisieves)[0]
    out = tmp_path / "g.site"
    assert cli.main(["groth", path, "--sieve", sieve,
                     "-o", str(out)]) == 0
    gd = load(str(out))
    (k,) = gd.two_cats.values()
    assert check_two_category(k).ok
