import io
import json
import subprocess
import sys

import pytest

from k3isogeny.cli import run

GENERIC = ["--a", "t^4-1", "--b", "t^4", "--c", "t^4-16"]
SAMPLE = ["--alpha", "t^2+1", "--beta", "t^2+t+3", "--gamma", "t^2+2"]


def call(argv):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()


def _all_strings(obj):
    if isinstance(obj, dict):
        return all(_all_strings(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_all_strings(v) for v in obj)
    return isinstance(obj, (str, bool)) or obj is None


def test_classify():
    code, out = call(["classify", *GENERIC])
    assert code == 0
    data = json.loads(out)
    assert data["summary"] == "8I2 + 8I1"
    assert _all_strings(data)


def test_classify_expect_mismatch():
    code, _ = call(["classify", *GENERIC, "--expect", "4I0*"])
    assert code != 0


def test_deterministic():
    assert call(["classify", *GENERIC])[1] == call(["classify", *GENERIC])[1]
    assert call(["chl", "report", *SAMPLE])[1] == call(["chl", "report", *SAMPLE])[1]


def test_round_trip():
    _, out = call(["chl", "dualize", *SAMPLE])
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) == out.rstrip("\n")


def test_text_output_either_side():
    c1, o1 = call(["--text", "classify", *GENERIC])
    c2, o2 = call(["classify", *GENERIC, "--text"])
    assert c1 == c2 == 0 and o1 == o2
    assert not o1.lstrip().startswith("{")


def test_isogeny_verify():
    code, out = call(["isogeny-verify", "--curve", "1", "0", "4"])
    assert code == 0


def test_family():
    code, out = call(["family", "FourI4", "a=t*(t-1)*(t-2)*(t-3)", "b=t^4+1"])
    assert code == 0


def test_chl_subcommands():
    for sub in ("dualize", "equiv", "report"):
        code, _ = call(["chl", sub, *SAMPLE])
        assert code == 0, sub


def test_normalize_error():
    code, out = call(["chl", "normalize", "--moduli", "0", "1", "1", "1", "1", "1", "1", "1", "1"])
    assert code == 2
    data = json.loads(out)
    assert "normalization undefined" in data["error"]


@pytest.mark.parametrize("argv", [
    ["classify", "--a", "0.5*t^4", "--b", "t^4", "--c", "t^4-16"],
    ["classify", "--a", "t^4-1", "--b", "t^4+", "--c", "t^4-16"],
    ["classify", "--a", "t^4-1", "--b", "x^4", "--c", "t^4-16"],
    ["kummer", "mu", "--mu", "1", "2", "3"],
])
def test_input_errors_exit_2(argv):
    code, out = call(argv)
    assert code == 2
    assert "error" in json.loads(out)


def test_kummer():
    code, out = call(["kummer", "mu", "--lambdas", "2", "3", "6", "--L", "12"])
    assert code == 0
    code, out = call(["kummer", "dual", "--mu", "37/12", "17/8", "5/4"])
    assert code == 0


def test_output_file(tmp_path):
    p = tmp_path / "out.json"
    code, out = call(["classify", *GENERIC, "-o", str(p)])
    assert code == 0
    assert json.loads(p.read_text())["summary"] == "8I2 + 8I1"


def test_module_entry_point_verify_all():
    res = subprocess.run([sys.executable, "-m", "k3isogeny", "verify-all"],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stdout[-2000:]


def test_family_missing_params_named():
    code, out = call(["family", "SixLinesParams", "a=2", "b=3"])
    assert code == 2
    assert "missing c, d" in json.loads(out)["error"]


def test_family_degenerate_needs_flag():
    argv = ["family", "CHL14", "alpha=t^2+1", "beta=t^2+t+3", "gamma=t^2+2"]
    assert call(argv)[0] == 2
    assert call(argv + ["--allow-degenerate"])[0] in (0, 1)
