import json

import pytest

from fnclass.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_expression_report(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--expr", "x1*x2 + x1^0*x3")
        assert code == 0
        assert "imp                 28" in out
        assert "sub                 11" in out
        assert "sep                 6" in out

    def test_table_route_matches_expression_route(self, capsys):
        code, out1, _ = run_cli(capsys, "analyze", "--expr", "x1*x2 + x1^0*x3",
                                "--format", "json")
        code2, out2, _ = run_cli(capsys, "analyze", "--table", "d8", "--k", "2",
                                 "--n", "3", "--format", "json")
        assert code == code2 == 0
        assert json.loads(out1) == json.loads(out2)

    def test_constant(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--expr", "0", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["essential"] == []
        assert payload["imp"] == 1

    def test_set_query(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--expr", "x1*x2 + x1^0*x3",
                               "--set", "2,3", "--format", "json")
        payload = json.loads(out)
        assert payload["separable"] is False
        assert payload["distributive_sets"] == [[1]]
        assert payload["s_systems"] == [[1]]

    def test_parse_error_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--expr", "x1 + + x2")
        assert code == 2
        assert "error" in err

    def test_requires_exactly_one_source(self, capsys):
        code, _, err = run_cli(capsys, "analyze")
        assert code == 2


class TestDiagram:
    def test_dot_output_and_stats(self, capsys, tmp_path):
        out_file = tmp_path / "g.dot"
        code, _, err = run_cli(capsys, "diagram", "--table", "d8",
                               "--ordering", "1,2,3", "--out", str(out_file))
        assert code == 0
        assert "depth 3" in err and "paths 4" in err
        assert "digraph" in out_file.read_text()

    def test_f_stats(self, capsys):
        code, out, err = run_cli(capsys, "diagram", "--table", "28",
                                 "--ordering", "1,2,3")
        assert code == 0
        assert "depth 4" in err and "paths 5" in err

    def test_bad_ordering(self, capsys):
        code, _, err = run_cli(capsys, "diagram", "--table", "d8",
                               "--ordering", "1,1,3")
        assert code == 2


class TestClassify:
    def test_sep_csv(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "classify", "--k", "2", "--n", "3",
                                 "--relation", "sep",
                                 "--cache-dir", str(tmp_path))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("class,")
        assert len(lines) == 6  # header + five classes
        assert "5 classes over 256 functions" in err

    def test_resume_uses_cache(self, capsys, tmp_path):
        args = ("classify", "--k", "2", "--n", "2", "--relation", "imp",
                "--cache-dir", str(tmp_path), "--resume")
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_group_relation(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "classify", "--k", "2", "--n", "2",
                                 "--relation", "ge",
                                 "--cache-dir", str(tmp_path))
        assert code == 0
        assert "4 classes" in err

    def test_budget_exit_code(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "classify", "--k", "2", "--n", "4",
                               "--relation", "sep", "--budget", "100",
                               "--cache-dir", str(tmp_path))
        assert code == 3
        assert "budget" in err.lower()


class TestTables:
    def test_table1_diff_clean(self, capsys):
        code, out, err = run_cli(capsys, "tables", "--name", "table1", "--diff")
        assert code == 0
        assert "all 4 rows match" in err

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--name", "table1",
                               "--format", "json")
        payload = json.loads(out)
        assert payload["ok"] is True


class TestVerify:
    def test_default_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "3", "--samples", "0")
        assert code == 0
        assert "FAIL" not in out

    def test_mutant_negative_control(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "2",
                               "--n-exhaustive", "2", "--samples", "0",
                               "--mutant", "no-remove-rule")
        assert code == 1
        assert any("FAIL" in line and "label-lemma" in line
                   for line in out.splitlines())

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "2",
                               "--n-exhaustive", "2", "--samples", "0",
                               "--format", "json")
        payload = json.loads(out)
        assert payload["ok"] is True


class TestParse:
    def test_round_trip_fields(self, capsys):
        code, out, _ = run_cli(capsys, "parse", "--expr", "x1 + x2 + x3",
                               "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["table"] == "96"
        assert payload["essential"] == [1, 2, 3]

    def test_syntax_error(self, capsys):
        code, _, err = run_cli(capsys, "parse", "--expr", "5", "--k", "2")
        assert code == 2
        assert "position" in err
