"""End-to-end runs of the command line, in process via cli.main."""

import io
import json

from sheetsmith.cli import main

REFERENCE = (
    '=IF(MIN(C5:D5)<40,"Fail",IF(AVERAGE(C5:D5)>=70,"Dist",'
    'IF(AVERAGE(C5:D5)>=55,"Merit",IF(AVERAGE(C5:D5)>=40,"Pass"))))'
)

GRADES_CSV = (
    "exam,coursework,label\n"
    "20,30,Fail\n39,80,Fail\n80,39,Fail\n"
    "40,40,Pass\n54,55,Pass\n40,58,Pass\n"
    "40,70,Merit\n69,70,Merit\n55,57,Merit\n"
    "70,70,Dist\n41,99,Dist\n100,100,Dist\n"
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_analyze_table(capsys):
    assert main(["analyze", "=A1+A2"]) == 0
    out = capsys.readouterr().out
    assert "complexity" in out and "0.5" in out
    assert "miller_concepts" in out and "3" in out


def test_analyze_json(capsys):
    assert main(["analyze", "=SUM(A1:A9)", "--format", "json"]) == 0
    row = json.loads(capsys.readouterr().out)
    assert row["complexity"] == 2.0
    assert row["n1"] == row["n2"] == row["N1"] == row["N2"] == 1
    assert row["parse_error"] is None


def test_analyze_csv(capsys):
    assert main(["analyze", "=A1+A2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("source_id,formula,n1,n2,N1,N2,complexity")
    assert lines[1].startswith("-,=A1+A2,1,2,1,2,0.5,false")


def test_analyze_syntax_error_exits_one(capsys):
    assert main(["analyze", "=SUM("]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: SyntaxError:")


def test_analyze_unknown_function_names_its_code(capsys):
    assert main(["analyze", "=VLOOKUP(A1,B1:B9,1)"]) == 1
    assert capsys.readouterr().err.startswith("error: UnknownFunction:")


def test_scan_tolerates_parse_errors(tmp_path, capsys):
    path = write(
        tmp_path, "f.csv",
        'source_id,formula\nok,=A1+A2\nbad,=SUM(\n'
    )
    assert main(["scan", path]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("ok,")
    assert "SyntaxError" in lines[2]


def test_scan_writes_a_file(tmp_path, capsys):
    src = write(tmp_path, "f.csv", "source_id,formula\nr1,=A1+A2\n")
    out = str(tmp_path / "report.csv")
    assert main(["scan", src, "--output", out]) == 0
    text = open(out).read()
    assert text.splitlines()[1].startswith("r1,")


def test_scan_json(tmp_path, capsys):
    src = write(tmp_path, "f.csv", "source_id,formula\nr1,=A1+A2\n")
    assert main(["scan", src, "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["source_id"] == "r1"


def test_scan_fail_on_miller(tmp_path, capsys):
    quoted = REFERENCE.replace('"', '""')
    src = write(
        tmp_path, "f.csv",
        f'source_id,formula\nplain,=A1+A2\nbig,"{quoted}"\n',
    )
    assert main(["scan", src]) == 0
    capsys.readouterr()
    assert main(["scan", src, "--fail-on-miller"]) == 1
    captured = capsys.readouterr()
    assert "error: MillerLimit: 1 of 2" in captured.err


def test_scan_missing_file_exits_two(tmp_path, capsys):
    assert main(["scan", str(tmp_path / "absent.csv")]) == 2
    assert capsys.readouterr().err.startswith("error: InputFile:")


def test_synthesize_grades(tmp_path, capsys):
    path = write(tmp_path, "grades.csv", GRADES_CSV)
    assert main(["synthesize", "--examples", path]) == 0
    out = capsys.readouterr().out
    assert (
        'formula: =IF(MIN(C5:D5)<39.5,"Fail",IF(AVERAGE(C5:D5)<54.75,"Pass",'
        'IF(AVERAGE(C5:D5)<69.75,"Merit","Dist")))' in out
    )
    assert "training: 12/12 pass" in out


def test_synthesize_contradiction_exits_one(tmp_path, capsys):
    path = write(tmp_path, "bad.csv", "x,label\n1,a\n1,b\n")
    assert main(["synthesize", "--examples", path]) == 1
    assert capsys.readouterr().err.startswith("error: InconsistentExamples:")


def test_synthesize_depth_cap_exits_one(tmp_path, capsys):
    path = write(tmp_path, "grades.csv", GRADES_CSV)
    assert main(["synthesize", "--examples", path, "--max-depth", "2"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: HypothesisSpaceExhausted:")
    assert "%" in err


def test_synthesize_budget_env(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "grades.csv", GRADES_CSV)
    monkeypatch.setenv("SHEETSMITH_SEARCH_BUDGET", "5")
    assert main(["synthesize", "--examples", path]) == 1
    assert capsys.readouterr().err.startswith("error: SearchBudgetExceeded:")


def test_synthesize_budget_env_must_be_integer(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "grades.csv", GRADES_CSV)
    monkeypatch.setenv("SHEETSMITH_SEARCH_BUDGET", "lots")
    assert main(["synthesize", "--examples", path]) == 2
    assert capsys.readouterr().err.startswith("error: Usage:")


def test_synthesize_interactive_counter_example(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "ex.csv", "score,label\n35,Fail\n45,Pass\n")
    monkeypatch.setattr("sys.stdin", io.StringIO("85,Fail\n\n"))
    assert main(["synthesize", "--examples", path, "--interactive"]) == 0
    out = capsys.readouterr().out
    assert out.count("formula:") == 2
    assert '=IF(MIN(C5)<40,"Fail","Pass")' in out
    assert "training: 3/3 pass" in out


def test_synthesize_interactive_rejects_garbage_rows(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "ex.csv", "score,label\n35,Fail\n45,Pass\n")
    monkeypatch.setattr("sys.stdin", io.StringIO("too,many,fields\nnope,Fail\n"))
    assert main(["synthesize", "--examples", path, "--interactive"]) == 0
    captured = capsys.readouterr()
    assert "fields" in captured.err
    assert "numbers" in captured.err
    assert captured.out.count("formula:") == 1


def test_validate_all_pass(tmp_path, capsys):
    path = write(tmp_path, "grades.csv", GRADES_CSV)
    assert main(["validate", "--formula", REFERENCE, "--examples", path]) == 0
    out = capsys.readouterr().out
    assert "12/12 pass" in out
    assert out.count(": pass") == 12


def test_validate_reports_failures_but_exits_zero(tmp_path, capsys):
    path = write(tmp_path, "ex.csv", "exam,coursework,label\n35,80,Pass\n")
    assert main(["validate", "--formula", REFERENCE, "--examples", path]) == 0
    out = capsys.readouterr().out
    assert 'FAIL expected "Pass" got "Fail"' in out
    assert "0/1 pass" in out


def fixture(name):
    import importlib.resources

    return str(importlib.resources.files("sheetsmith") / "data" / name)


def test_confidence_writes_plot_data(tmp_path, capsys):
    out_dir = str(tmp_path / "out")
    code = main([
        "confidence",
        "--results", fixture("experiment_results.csv"),
        "--complexities", fixture("question_complexities.csv"),
        "--out-dir", out_dir,
    ])
    assert code == 0
    for name in (
        "outcomes.csv",
        "summary_questions.csv",
        "summary_approaches.csv",
        "accuracy_vs_complexity_traditional.csv",
        "accuracy_vs_complexity_edm.csv",
        "confidence_ratio_traditional.csv",
        "confidence_ratio_edm.csv",
    ):
        assert (tmp_path / "out" / name).exists(), name
    stdout = capsys.readouterr().out
    assert "traditional" in stdout and "edm" in stdout
    approaches = (tmp_path / "out" / "summary_approaches.csv").read_text()
    assert "traditional,10,80.0,46.0,4.0" in approaches
    assert "edm,10,10.0,98.0,0.3" in approaches


def test_confidence_plot_data_feeds_fit_directly(tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main([
        "confidence",
        "--results", fixture("experiment_results.csv"),
        "--complexities", fixture("question_complexities.csv"),
        "--out-dir", str(out_dir),
    ]) == 0
    capsys.readouterr()
    points = out_dir / "accuracy_vs_complexity_traditional.csv"
    assert points.read_text().splitlines()[0] == "complexity,accuracy_pct"
    assert main(["fit", "--points", str(points)]) == 0
    out = capsys.readouterr().out
    assert "r_squared" in out


def test_confidence_outputs_are_byte_stable(tmp_path):
    args = [
        "confidence",
        "--results", fixture("experiment_results.csv"),
        "--complexities", fixture("question_complexities.csv"),
    ]
    assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
    assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
    for path in sorted((tmp_path / "a").iterdir()):
        twin = tmp_path / "b" / path.name
        assert path.read_bytes() == twin.read_bytes(), path.name


def test_confidence_stamp_is_opt_in(tmp_path):
    args = [
        "confidence",
        "--results", fixture("experiment_results.csv"),
        "--complexities", fixture("question_complexities.csv"),
    ]
    assert main(args + ["--out-dir", str(tmp_path / "plain")]) == 0
    assert main(args + ["--out-dir", str(tmp_path / "stamped"), "--stamp"]) == 0
    plain = (tmp_path / "plain" / "outcomes.csv").read_text()
    stamped = (tmp_path / "stamped" / "outcomes.csv").read_text()
    assert not plain.startswith("#")
    assert stamped.startswith("# generated ")
    assert stamped.splitlines()[1:] == plain.splitlines()


def test_fit_table_and_formats(tmp_path, capsys):
    path = write(tmp_path, "pts.csv", "complexity,accuracy_pct\n1.0,50.0\n2.0,25.0\n")
    assert main(["fit", "--points", path]) == 0
    out = capsys.readouterr().out
    assert "a: 100.0" in out
    assert "b: -0.693147" in out
    assert main(["fit", "--points", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["points_used"] == 2
    assert payload["ceiling_exceeded"] is False


def test_fit_ceiling_note(tmp_path, capsys):
    # nearly flat accuracy above 95 at the easiest observed question
    path = write(
        tmp_path, "pts.csv",
        "complexity,accuracy_pct\n0.5,97.0\n1.0,96.0\n2.0,94.0\n",
    )
    assert main(["fit", "--points", path]) == 0
    out = capsys.readouterr().out
    assert "ceiling_exceeded: true" in out
    assert "note:" in out


def test_fit_insufficient_points_exits_one(tmp_path, capsys):
    path = write(tmp_path, "pts.csv", "complexity,accuracy_pct\n1.0,50.0\n")
    assert main(["fit", "--points", path]) == 1
    assert capsys.readouterr().err.startswith("error: InsufficientPoints:")


def test_usage_errors_exit_two(capsys):
    assert main([]) == 2
    assert main(["analyze"]) == 2
    assert main(["fit", "--points"]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "analyze" in capsys.readouterr().out
