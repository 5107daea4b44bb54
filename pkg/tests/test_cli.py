import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qent.cli import fmt, main
from qent.config import RunConfig, parse_config, read_config_file
from qent.core import OscillatorParams
from qent.errors import ConfigParseError, ConstraintViolation

HEADER = "t,S_x,S_p,S_joint_numeric,S_joint_closed,deficit_x,deficit_p,caustic"


def test_empty_input_gives_defaults():
    cfg = parse_config([])
    assert cfg == RunConfig()
    assert cfg.params == OscillatorParams()
    assert (cfg.L, cfg.n, cfg.delta, cfg.t_start, cfg.t_stop, cfg.t_step) == (12.0, 2048, 1e-6, 0.0, 10.0, 0.01)


def test_flag_overrides_file(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# comment\ngamma = 0.5\nomega0=2  # trailing\n")
    cfg = parse_config(["dho", "--config", str(f), "--gamma", "0.1"])
    assert cfg.params.gamma == 0.1 and cfg.params.omega0 == 2.0


def test_config_file_errors_carry_line(tmp_path):
    f = tmp_path / "bad.cfg"
    f.write_text("m=1\n\nbogus=3\n")
    with pytest.raises(ConfigParseError) as ei:
        read_config_file(f)
    assert ei.value.line == 3 and ei.value.key == "bogus"
    f.write_text("gamma=abc\n")
    with pytest.raises(ConfigParseError) as ei:
        parse_config(["sho", "--config", str(f)])
    assert ei.value.line == 1


def test_bad_flag_value():
    with pytest.raises(ConfigParseError) as ei:
        parse_config(["sho", "--n", "1.5"])
    assert ei.value.key == "n"


def test_overdamped_is_constraint_violation():
    with pytest.raises(ConstraintViolation) as ei:
        parse_config(["sho", "--gamma", "3", "--omega0", "1"])
    assert "gamma" in str(ei.value)


@pytest.mark.parametrize("argv", [
    ["sho", "--t-step", "0"], ["sho", "--t-stop", "0"], ["sho", "--n", "100"],
    ["sweep"], ["sweep", "--sweep", "gamma", "--sweep-range", "1:0:0.1"], ["sho", "--delta", "0"],
])
def test_constraint_violations(argv):
    with pytest.raises(ConstraintViolation):
        parse_config(argv)


def test_times_inclusive():
    cfg = parse_config(["sho", "--t-start", "0", "--t-stop", "1", "--t-step", "0.1"])
    t = cfg.times()
    assert len(t) == 11 and t[-1] == pytest.approx(1.0)


def test_fmt():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(float("nan")) == ""


def _run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_exit_code_config_error(capsys):
    code, out = _run(["sho", "--gamma", "3"], capsys)
    assert code == 2 and "configuration error" in out.err
    assert main([]) == 2
    assert main(["nonsense"]) == 2


def test_sho_csv(capsys):
    code, out = _run(["sho", "--xbar", "1", "--t-stop", "3.2", "--t-step", "0.05"], capsys)
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0] == HEADER
    rows = [r for r in csv.reader(io.StringIO(out.out)) if r and not r[0].startswith("#")][1:]
    assert rows[0][7] == "1" and rows[0][3] == ""  # t=0 is a caustic gap
    for r in rows:
        assert float(r[4]) == pytest.approx(1 - math.log(2) + 4 * math.sin(float(r[0])) ** 2, abs=1e-14)
    numeric = [float(r[3]) for r in rows if r[3]]
    assert max(numeric) - min(numeric) < 2e-6
    assert any(line.startswith("# envelope S_joint_closed") for line in lines)


def test_dho_csv_gaps_and_envelope(tmp_path):
    w0 = math.sqrt(math.pi**2 + 0.0625)  # omega = pi, caustics at integer t
    out = tmp_path / "d.csv"
    code = main(["dho", "--gamma", "0.5", "--omega0", repr(w0), "--t-stop", "3", "--t-step", "0.05", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")][1:]
    gaps = [float(r[0]) for r in rows if r[7] == "1"]
    assert gaps == pytest.approx([0.0, 1.0, 2.0, 3.0])
    for r in rows:
        if r[7] == "1":
            assert r[1:7] == [""] * 6
    assert "# envelope S_joint_closed" in text


def test_sweep_csv(capsys):
    code, out = _run(["sweep", "--sweep", "omega", "--sweep-range", "0.5:1.5:0.5", "--xbar", "1",
                      "--t-stop", "1", "--t-step", "0.25"], capsys)
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0] == "sweep_value,t,S_joint_closed,S_joint_numeric"
    assert len(lines) == 1 + 3 * 5
    # closed amplitude 4 m xbar^2 omega sin^2(omega t) / hbar
    for line in lines[1:]:
        w, t, closed, _ = line.split(",")
        w, t = float(w), float(t)
        assert float(closed) == pytest.approx(1 - math.log(2) + 4 * w * math.sin(w * t) ** 2, abs=1e-12)


def test_single_value_sweep_matches_trace_shape(capsys):
    _, a = _run(["sweep", "--sweep", "gamma", "--sweep-range", "0.2:0.2:0.1", "--t-stop", "1", "--t-step", "0.1"], capsys)
    _, b = _run(["dho", "--gamma", "0.2", "--t-stop", "1", "--t-step", "0.1"], capsys)
    sweep_rows = a.out.splitlines()[1:]
    trace_rows = [r for r in b.out.splitlines()[1:] if not r.startswith("#")]
    assert len(sweep_rows) == len(trace_rows) == 11
    for s, t in zip(sweep_rows, trace_rows):
        s, t = s.split(","), t.split(",")
        assert s[1] == t[0] and s[2] == t[4] and s[3] == t[3]


def test_validate_report_and_exit_codes(tmp_path):
    out = tmp_path / "v.json"
    code = main(["validate", "--xbar", "1", "--t-stop", "3.2", "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == 0 and rep["passed"] and rep["failures"] == []
    assert rep["eq23_discrepancy"]["max_abs"] == pytest.approx(4.0, abs=1e-4)
    for key in ("mehler_convergence", "van_vleck", "kernel_composition_sho", "kernel_composition_dho",
                "parseval", "momentum_fourier", "kernel_assembly", "dho_propagation", "gamma_zero_continuity",
                "leipnik_bound", "grid_adequacy", "normalization_deficit", "config"):
        assert key in rep


def test_validate_bad_grid(tmp_path):
    out = tmp_path / "v.json"
    code = main(["validate", "--L", "2", "--t-stop", "1", "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == 1 and not rep["passed"]
    assert any("GridTooSmall" in f for f in rep["failures"])


def test_unwritable_output_is_runtime_error(tmp_path):
    assert main(["sho", "--t-stop", "0.1", "--out", str(tmp_path / "missing" / "x.csv")]) == 3


def test_console_script(tmp_path):
    out = tmp_path / "s.csv"
    r = subprocess.run([sys.executable, "-m", "qent.cli", "sho", "--t-stop", "0.2", "--out", str(out)],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert out.read_text().startswith(HEADER + "\n")
