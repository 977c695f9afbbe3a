"""CLI contract: exit codes, output formats, reproducibility, config files."""

import json

import pytest

from cflab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- measure

def test_measure_text(capsys):
    code, out, _ = run(capsys, "measure", "1,1")
    assert code == 0
    assert out == "log2(10/9) ≈ 0.152003\n"


def test_measure_interval(capsys):
    code, out, _ = run(capsys, "measure", "1", "--interval")
    assert code == 0
    assert out.splitlines() == ["log2(4/3) ≈ 0.415037", "(1/2, 1)"]


def test_measure_json_schema(capsys):
    code, out, _ = run(capsys, "measure", "1,1", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report == {"word": "1,1", "log2_arg": "10/9", "float": 0.152003}


def test_measure_csv(capsys):
    code, out, _ = run(capsys, "measure", "1,1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["word,log2_arg,float", '"1,1",10/9,0.152003']


def test_measure_empty_word_is_usage_error(capsys):
    code, _, err = run(capsys, "measure", "")
    assert code == 2
    assert "error" in err


# ----------------------------------------------------------------- expand

def test_expand_dumps_digits(capsys):
    code, out, err = run(capsys, "expand", "rational:7/16", "--n", "100")
    assert code == 0
    assert out.splitlines() == ["2", "3", "2"]
    assert "source ended after 3" in err


def test_expand_decimal_flags_precision(capsys):
    code, out, err = run(capsys, "expand", "decimal:0.5:e-30", "--n", "5")
    assert code == 0
    assert out == ""
    assert "precision exhausted after 0" in err


def test_expand_bad_spec(capsys):
    code, _, err = run(capsys, "expand", "martian:1", "--n", "5")
    assert code == 2


# ----------------------------------------------------------------- verify

@pytest.mark.parametrize(
    "suite,flags",
    [
        ("reversal", ["--max-digit", "3", "--max-len", "3"]),
        ("dominance", ["--max-digit", "3", "--max-len", "3"]),
        ("pairwise", ["--max-digit", "3", "--max-len", "2"]),
        ("joint-k2", ["--cap", "50"]),
    ],
)
def test_verify_suites_pass(capsys, suite, flags):
    code, out, _ = run(capsys, "verify", suite, *flags)
    assert code == 0
    assert "pass" in out


def test_verify_writes_report(capsys, tmp_path):
    out_path = tmp_path / "joint.json"
    code, _, _ = run(capsys, "verify", "joint-k2", "--cap", "20", "--out", str(out_path))
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["passed"] is True
    assert "tail_log2_arg" in report and "bracket" in report
    lo, hi = report["bracket"]
    assert lo < hi


# ----------------------------------------------------------------- pillai

def test_pillai_periodic_flags_non_normal(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, _, _ = run(
        capsys,
        "pillai",
        "--source",
        "periodic:,2",
        "--n",
        "1000",
        "--pattern",
        "2,2",
        "--expect",
        "non-normal",
        "--out",
        str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["verdict"] == "NON_NORMAL"
    row = report["summary"][0]
    assert row["overlap_freq"] == pytest.approx(0.999, abs=1e-3)


def test_pillai_exit_1_when_expectation_contradicted(capsys):
    code, _, _ = run(
        capsys,
        "pillai",
        "--source",
        "periodic:,2",
        "--n",
        "1000",
        "--pattern",
        "2,2",
    )
    assert code == 1  # expected consistent by default, observed non-normal


def test_pillai_truncated_source(capsys):
    code, out, _ = run(
        capsys,
        "pillai",
        "--source",
        "rational:7/16",
        "--n",
        "100",
        "--pattern",
        "2",
        "--expect",
        "non-normal",
    )
    report = json.loads(out)
    assert report["truncated"] is True
    assert report["n"] == 3


def test_pillai_csv_schema(capsys):
    code, out, _ = run(
        capsys,
        "pillai",
        "--source",
        "periodic:,1",
        "--n",
        "100",
        "--pattern",
        "1",
        "--expect",
        "non-normal",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.splitlines()
    header = [line for line in lines if not line.startswith("#")][0]
    assert header == "n,pattern,mode,count,freq_num,freq_den,freq_float,gamma_float,abs_err"
    assert any(line.startswith("# source=periodic:,1") for line in lines)


# ------------------------------------------------------------- subsequence

def test_subsequence_periodic_ones_trivially_non_normal(capsys):
    code, out, _ = run(
        capsys,
        "subsequence",
        "--source",
        "periodic:,1",
        "--n",
        "2000",
        "--k",
        "2",
        "--cap",
        "50",
    )
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "NON_NORMAL"
    assert report["summary"]["selected_freq"] == pytest.approx(0.999, abs=1e-2)


def test_subsequence_reports_selected_length(capsys):
    code, out, _ = run(
        capsys,
        "subsequence",
        "--source",
        "random:seed=11",
        "--n",
        "20000",
        "--b",
        "3",
        "--k",
        "2",
        "--cap",
        "100",
    )
    assert code == 0
    report = json.loads(out)
    assert report["selected_n"] == (20000 - 3) // 2 + 1
    assert report["config"]["b"] == 3 and report["config"]["k"] == 2


# --------------------------------------------------------- reproducibility

def test_reports_are_byte_identical_across_runs_and_jobs(tmp_path, capsys):
    args = [
        "pillai",
        "--source",
        "random:seed=9",
        "--n",
        "30000",
        "--pattern",
        "1",
        "--pattern",
        "1,1",
        "--expect",
        "consistent",
        "--tolerance",
        "0.05",
    ]
    paths = [tmp_path / name for name in ("a.json", "b.json", "c.json")]
    assert run(capsys, *args, "--out", str(paths[0]))[0] == 0
    assert run(capsys, *args, "--out", str(paths[1]))[0] == 0
    assert run(capsys, *args, "--jobs", "8", "--out", str(paths[2]))[0] == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]


# ------------------------------------------------------------- config file

def test_config_file_defaults_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "source=periodic:,2\n"
        "n=500\n"
        "patterns=2;2,2\n"
        "expect=non-normal\n"
        "# comment line\n"
        "tolerance=0.01\n"
    )
    code, out, _ = run(capsys, "pillai", "--config", str(cfg))
    assert code == 0
    report = json.loads(out)
    assert report["config"]["n"] == 500
    assert report["config"]["patterns"] == ["2", "2,2"]

    # explicit flag beats the file
    code, out, _ = run(capsys, "pillai", "--config", str(cfg), "--n", "600")
    assert code == 0
    assert json.loads(out)["config"]["n"] == 600


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("sauce=periodic:,2\n")
    code, _, err = run(capsys, "pillai", "--config", str(cfg))
    assert code == 2
    assert "unknown config keys" in err
