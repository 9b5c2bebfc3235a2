import json
import subprocess
import sys

import pytest

from equistream.cli import main
from equistream.pairing import pairing_from_json
from equistream.streams import stream_from_json


def dump(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "five": dump(tmp_path / "five.json", {"finite": ["0", "1", "2", "3", "4"], "chains": []}),
        "x": dump(tmp_path / "x.json", {"kind": "ep", "pre": [], "per": ["1", "0"]}),
        "y": dump(tmp_path / "y.json", {"kind": "ep", "pre": [], "per": ["0", "1"]}),
        "s3x": dump(tmp_path / "s3x.json", {"kind": "ep", "pre": [], "per": ["1", "2", "4"]}),
        "s3y": dump(tmp_path / "s3y.json", {"kind": "ep", "pre": [], "per": ["0", "3", "4"]}),
        "short": dump(tmp_path / "short.json", {"kind": "trunc", "values": ["1", "2"]}),
        "dir": tmp_path,
    }


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval(files, capsys):
    code, out, _ = run(["eval", "--swf", "prop1", "--domain", files["five"], "--stream", files["x"], "--compact"], capsys)
    assert code == 0
    assert json.loads(out) == {"schema": 1, "swf": "prop1", "value": "-17/24", "approx": -0.7083}


def test_eval_missing_domain_is_usage_error(files, capsys):
    code, _, err = run(["eval", "--swf", "prop1", "--stream", files["x"]], capsys)
    assert code == 2 and "--domain" in err


def test_eval_truncated_is_limit(files, capsys):
    assert run(["eval", "--swf", "min", "--stream", files["short"]], capsys)[0] == 3


def test_compare(files, capsys):
    code, out, _ = run(["compare", files["y"], files["x"]], capsys)
    assert code == 0 and json.loads(out)["relation"] == "StrictlyLess"


def test_witness_search_and_validate(files, capsys):
    code, out, _ = run(["witness", "--axiom", "GE", "--x", files["s3x"], "--y", files["s3y"]], capsys)
    body = json.loads(out)
    assert code == 0 and body["preferred"] == "x"
    p = dump(files["dir"] / "p.json", body["pairing"])
    assert pairing_from_json(json.loads(open(p).read())).to_json() == body["pairing"]
    code, out, _ = run(["witness", "--axiom", "WE", "--x", files["s3x"], "--y", files["s3y"], "--pairing", p], capsys)
    assert code == 1 and json.loads(out)["status"] == "Invalid"


def test_witness_bad_descriptor(files, capsys):
    bad = dump(files["dir"] / "bad.json", {"kind": "ep", "pre": [], "per": []})
    assert run(["witness", "--x", bad, "--y", files["x"]], capsys)[0] == 2
    assert run(["witness", "--x", str(files["dir"] / "nope.json"), "--y", files["x"]], capsys)[0] == 2


def test_classify(files, capsys):
    dom = dump(files["dir"] / "neg.json", {"finite": [], "chains": [{"dir": "dec", "form": "-n"}]})
    code, out, _ = run(["classify", "--domain", dom], capsys)
    assert code == 0 and json.loads(out)["order_type"] == "OmegaStar"


def test_construct_writes_round_trippable_files(files, capsys):
    out_dir = files["dir"] / "ex1"
    code, out, _ = run(["construct", "--name", "ex1", "--depth", "64", "--out", str(out_dir)], capsys)
    assert code == 0 and json.loads(out)["verified"]
    x = stream_from_json(json.loads((out_dir / "x.json").read_text()))
    assert x.depth == 64
    beta = pairing_from_json(json.loads((out_dir / "beta.pairing.json").read_text()))
    assert beta(1) == 3
    assert json.loads((out_dir / "transcript.json").read_text())["flags"] == ["relation inconsistent on this domain"]


def test_construct_thm_needs_r_and_s(capsys):
    assert run(["construct", "--name", "thm1"], capsys)[0] == 2
    assert run(["construct", "--name", "thm1", "--r", "1/3", "--s", "1/2", "--depth", "8"], capsys)[0] == 3


def test_audit_exit_codes(files, capsys, monkeypatch):
    base = ["audit", "--domain", files["five"], "--trials", "60", "--compact"]
    assert run(base + ["--axiom", "GE", "--swf", "prop1"], capsys)[0] == 0
    code, out, _ = run(base + ["--axiom", "AN", "--swf", "prop1", "--show", "1"], capsys)
    body = json.loads(out)
    assert code == 1 and body["violation_count"] > 0 and len(body["violations"]) == 1
    monkeypatch.setenv("EQUISTREAM_SEED", "17")
    assert json.loads(run(base + ["--axiom", "GE", "--swr", "leximin"], capsys)[1])["seed"] == 17


def test_config_file_supplies_defaults(files, capsys):
    conf = files["dir"] / "run.toml"
    conf.write_text(f'[eval]\nswf = "prop2"\ndomain = "{files["five"]}"\n')
    seven = dump(files["dir"] / "seven.json", {"finite": [str(v) for v in range(7)], "chains": []})
    code, out, _ = run(["eval", "--config", str(conf), "--swf", "min", "--stream", files["x"]], capsys)
    assert code == 0 and json.loads(out)["swf"] == "min"
    conf.write_text(f'[eval]\ndomain = "{seven}"\n')
    code, out, _ = run(["eval", "--config", str(conf), "--swf", "prop2", "--stream", files["x"]], capsys)
    assert code == 0 and json.loads(out)["value"] == "-17/24"
    conf.write_text("[eval]\nbogus = 1\n")
    assert run(["eval", "--config", str(conf), "--swf", "min", "--stream", files["x"]], capsys)[0] == 2


def test_table_format(files, capsys):
    code, out, _ = run(["eval", "--swf", "min", "--stream", files["x"], "--format", "table"], capsys)
    assert code == 0 and "value" in out and "{" not in out


def test_usage_error_from_argparse(capsys):
    assert run(["eval"], capsys)[0] == 2


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "equistream.cli", "eval", "--swf", "min", "--stream", files["x"], "--compact"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "0"
