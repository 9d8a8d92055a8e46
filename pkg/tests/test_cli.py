import json

import pytest

from ucsmell.cli import run


def test_lint_clean_exit_zero(capsys, fixtures_dir):
    code = run(["lint", str(fixtures_dir / "clean.ucd")])
    out = capsys.readouterr().out
    assert code == 0
    assert "no smells detected" in out


def test_lint_atm_exit_one(capsys, fixtures_dir):
    code = run(["lint", str(fixtures_dir / "atm.ucd")])
    out = capsys.readouterr().out
    assert code == 1
    assert "[actor-actor]" in out
    assert "[pronoun]" in out


def test_lint_json_matches_golden(capsys, fixtures_dir):
    code = run(["lint", str(fixtures_dir / "atm.ucd"), "--format", "json"])
    out = capsys.readouterr().out
    assert code == 1
    golden = (fixtures_dir / "atm_findings.golden.json").read_text("utf-8")
    assert out == golden


def test_lint_output_is_stable(capsys, fixtures_dir):
    run(["lint", str(fixtures_dir / "atm.ucd"), "--format", "json"])
    first = capsys.readouterr().out
    run(["lint", str(fixtures_dir / "atm.ucd"), "--format", "json"])
    assert capsys.readouterr().out == first


def test_lint_multiple_files_json_keyed_by_path(capsys, fixtures_dir):
    atm = str(fixtures_dir / "atm.ucd")
    clean = str(fixtures_dir / "clean.ucd")
    run(["lint", atm, clean, "--format", "json"])
    obj = json.loads(capsys.readouterr().out)
    assert list(obj) == [atm, clean]
    assert obj[clean] == []
    assert len(obj[atm]) == 12


def test_lint_json_file_input(tmp_path, capsys, fixtures_dir):
    from ucsmell.parser import parse_text, serialize

    doc, _ = parse_text((fixtures_dir / "atm.ucd").read_text("utf-8"))
    p = tmp_path / "atm.json"
    p.write_text(serialize(doc))
    code = run(["lint", str(p), "--format", "json"])
    out = capsys.readouterr().out
    assert code == 1
    records = json.loads(out)
    # JSON input has no line positions, but the same smells are found.
    assert len(records) == 12


def test_lint_fail_threshold(capsys, fixtures_dir):
    assert run(["lint", str(fixtures_dir / "atm.ucd"), "--fail-threshold", "99"]) == 0
    capsys.readouterr()


def test_lint_disable_rule(capsys, fixtures_dir):
    run(["lint", str(fixtures_dir / "atm.ucd"), "--disable", "actor-actor",
         "--format", "json"])
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 4  # the 8 actor-actor findings are gone
    assert not any(r.get("word") == "Actor" for r in records)


def test_lint_parse_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.ucd"
    bad.write_text("no structure at all\n")
    assert run(["lint", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_lint_missing_file_exit_two(capsys):
    assert run(["lint", "/does/not/exist.ucd"]) == 2
    capsys.readouterr()


def test_config_file_flag(tmp_path, capsys, fixtures_dir):
    cfg = tmp_path / "ucsmell.cfg"
    cfg.write_text("enabled_smells = pronoun\n")
    run(["lint", str(fixtures_dir / "atm.ucd"), "--config", str(cfg),
         "--format", "json"])
    records = json.loads(capsys.readouterr().out)
    assert [r["metric"] for r in records] == ["NOP"]


def test_config_env_var(tmp_path, capsys, monkeypatch, fixtures_dir):
    cfg = tmp_path / "ucsmell.cfg"
    cfg.write_text("enabled_smells = missing-actor-section\n")
    monkeypatch.setenv("UCSMELL_CONFIG", str(cfg))
    run(["lint", str(fixtures_dir / "atm.ucd"), "--format", "json"])
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 1
    assert records[0]["metric"] == "ActorSectionExist?"


def test_catalogue_cell(capsys):
    assert run(["catalogue", "--cell", "C_5_2"]) == 0
    out = capsys.readouterr().out
    assert out.count("Name: ") == 7
    assert "Missing Actor Section" in out


def test_catalogue_cell_braced_form(capsys):
    run(["catalogue", "--cell", "C_{5,2}"])
    assert capsys.readouterr().out.count("Name: ") == 7


def test_catalogue_bad_cell(capsys):
    assert run(["catalogue", "--cell", "C_9_9"]) == 2
    assert run(["catalogue", "--cell", "bogus"]) == 2
    capsys.readouterr()


def test_catalogue_full_listing(capsys):
    run(["catalogue"])
    assert capsys.readouterr().out.count("Name: ") == 60


def test_catalogue_detectable_only(capsys):
    run(["catalogue", "--detectable"])
    assert capsys.readouterr().out.count("Name: ") == 24


def test_eval_subcommand(tmp_path, capsys, fixtures_dir):
    oracle = tmp_path / "oracle.json"
    oracle.write_text(
        json.dumps(
            [
                {"smell_id": "pronoun", "item_name": "Basic Flow", "line": 9},
                {"smell_id": "missing-actor-section", "item_name": "Actors",
                 "line": 0},
            ]
        )
    )
    code = run(["eval", str(fixtures_dir / "atm.ucd"), "--oracle", str(oracle)])
    out = capsys.readouterr().out
    assert code == 0
    assert "Total" in out
    assert "Precision" in out


def test_eval_bad_oracle(tmp_path, capsys, fixtures_dir):
    oracle = tmp_path / "oracle.json"
    oracle.write_text("{broken")
    code = run(["eval", str(fixtures_dir / "atm.ucd"), "--oracle", str(oracle)])
    assert code == 2
    capsys.readouterr()


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["lint", "--no-such-flag"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_custom_lexicon_flag(tmp_path, capsys, fixtures_dir):
    # A lexicon with no pronouns: the "it" finding disappears.
    lex = tmp_path / "lex.txt"
    lex.write_text("insert\tverb\nthe\tstopword\n")
    run(["lint", str(fixtures_dir / "atm.ucd"), "--lexicon", str(lex),
         "--format", "json"])
    records = json.loads(capsys.readouterr().out)
    assert not any(r["metric"] == "NOP" for r in records)
