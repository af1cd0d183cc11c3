import json

import pytest

from cuntzquant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_of(out: str) -> dict:
    return json.loads(out)


def test_quantize_mode(capsys):
    code, out, _ = run(capsys, "--mode", "quantize", "--n", "1", "--N", "15",
                       "--f", "q1^2 + p1^2")
    assert code == 0
    rep = report_of(out)
    assert rep["mode"] == "quantize"
    names = {op["operator"] for op in rep["operators"]}
    assert names == {"Q", "R", "Qhat"}


def test_verify_lemma_green(capsys):
    code, out, _ = run(capsys, "--mode", "verify-lemma", "--n", "1", "--N", "28",
                       "--f", "q1^2", "--g", "p1")
    assert code == 0
    rep = report_of(out)
    assert rep["passed"] is True
    assert all(c["passed"] for c in rep["checks"])


def test_verify_theorem_exits_three(capsys):
    # the claimed constant fails while its corrected twin passes, so the
    # suite reports a true negative
    code, out, _ = run(capsys, "--mode", "verify-theorem", "--n", "1",
                       "--N", "45", "--f", "q1", "--g", "p1")
    assert code == 3
    rep = report_of(out)
    assert rep["passed"] is False
    by_name = {c["identity"]: c for c in rep["checks"]}
    claimed = [c for name, c in by_name.items() if "claimed" in name]
    corrected = [c for name, c in by_name.items() if "corrected" in name]
    assert claimed and any(not c["passed"] for c in claimed)
    assert corrected and all(c["passed"] for c in corrected)


def test_ccr_mode_with_words(capsys):
    code, out, _ = run(capsys, "--mode", "ccr", "--n", "1", "--N", "21",
                       "--f", "q1*p1")
    assert code == 0
    rep = report_of(out)
    assert rep["params"]["weight"] == "exp(-|x|^2/2)"
    assert "words" in rep and rep["words"]["Q"]


def test_cuntz_check_mode(capsys):
    code, out, _ = run(capsys, "--mode", "cuntz-check", "--d", "8", "--M", "500")
    assert code == 0
    rep = report_of(out)
    assert rep["cuntz"]["passed"] is True
    assert rep["cuntz"]["params"] == {"d": 8, "M": 500}


def test_bound_check_mode(capsys):
    code, out, _ = run(capsys, "--mode", "bound-check", "--n", "1", "--N", "21",
                       "--h", "q1^2 + p1^2", "--k", "2", "--d", "21",
                       "--M", "600", "--seed", "3")
    assert code == 0
    rep = report_of(out)
    assert rep["bound"]["passed"] is True
    assert rep["bound"]["bound"] == "4"


def test_wn_bracket_mode(capsys):
    code, out, _ = run(capsys, "--mode", "wn-bracket", "--K", "2", "--C", "3",
                       "--f", ":q1:", "--g", ":p1:",
                       "--lambda", "1,1/2")
    assert code == 0
    rep = report_of(out)
    assert rep["bracket"] == "1"
    assert rep["params"]["lambda"] == ["1", "1/2"]


def test_wn_quantize_mode(capsys):
    code, out, _ = run(capsys, "--mode", "wn-quantize", "--K", "2", "--C", "2",
                       "--f", ":q1 p2:", "--N", "15")
    assert code == 0
    rep = report_of(out)
    assert len(rep["operators"]) == 3
    assert all(op["window"] == 15 for op in rep["operators"])


def test_export_mode_writes_matrix_market(tmp_path, capsys):
    target = tmp_path / "qhat.mtx"
    code, out, _ = run(capsys, "--mode", "export", "--n", "1", "--N", "15",
                       "--f", "q1", "--kind", "Qhat", "--out", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("%%MatrixMarket matrix coordinate complex")
    assert report_of(out)["params"]["kind"] == "Qhat"


def test_missing_mode_flag(capsys):
    code, _, _ = run(capsys, "--n", "1")
    assert code == 1


def test_missing_required_flag(capsys):
    code, _, err = run(capsys, "--mode", "verify-lemma", "--n", "1", "--N", "15",
                       "--f", "q1")
    assert code == 1
    assert "--g is required" in err


def test_malformed_observable(capsys):
    code, _, _ = run(capsys, "--mode", "quantize", "--n", "1", "--N", "15",
                     "--f", "q1 +")
    assert code == 1


def test_lambda_validation(capsys):
    code, _, err = run(capsys, "--mode", "wn-bracket", "--K", "2", "--C", "3",
                       "--f", ":q1:", "--g", ":p1:", "--lambda", "1")
    assert code == 1 and "--lambda needs 2 entries" in err
    code, _, err = run(capsys, "--mode", "wn-bracket", "--K", "2", "--C", "3",
                       "--f", ":q1:", "--g", ":p1:", "--lambda", "1,zebra")
    assert code == 1 and "malformed --lambda" in err


def test_truncation_errors_exit_two(capsys):
    # a degree-3 observable at N=3 leaves no certified product window
    code, _, err = run(capsys, "--mode", "verify-lemma", "--n", "1", "--N", "3",
                       "--f", "q1^3", "--g", "p1")
    assert code == 2
    assert "truncation too small" in err
    code, _, err = run(capsys, "--mode", "wn-quantize", "--K", "1", "--C", "2",
                       "--f", ":q1^3:", "--N", "5")
    assert code == 2


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('mode = "verify-lemma"\nn = 1\nN = 28\nf = "q1^2"\ng = "p1"\n')
    code, out, _ = run(capsys, "--config", str(cfg))
    assert code == 0
    assert report_of(out)["mode"] == "verify-lemma"
    # explicit flags win over config values
    code, out, _ = run(capsys, "--config", str(cfg), "--g", "q1")
    assert code == 0
    assert report_of(out)["params"]["g"] == "q1"


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text('mode = "quantize"\nfrobnicate = 3\n')
    code, _, err = run(capsys, "--config", str(cfg))
    assert code == 1 and "unknown config key" in err


def test_config_cannot_smuggle_bogus_mode(tmp_path, capsys):
    cfg = tmp_path / "odd.toml"
    cfg.write_text('mode = "frobnicate"\n')
    code, _, err = run(capsys, "--config", str(cfg))
    assert code == 1 and "unknown mode" in err


def test_config_missing_file(capsys):
    code, _, err = run(capsys, "--config", "/nonexistent/x.toml",
                       "--mode", "quantize")
    assert code == 1 and "cannot read config" in err


def test_json_reports_are_byte_stable(capsys):
    argv = ("--mode", "verify-lemma", "--n", "1", "--N", "21",
            "--f", "q1*p1", "--g", "q1")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_out_flag_duplicates_report(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "--mode", "verify-lemma", "--n", "1", "--N", "21",
                       "--f", "q1", "--g", "p1", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text()) == report_of(out)
