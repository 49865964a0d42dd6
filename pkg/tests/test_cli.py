import io
import json

import pytest

from ncchains.chain_system import ChainSystem, build_poset
from ncchains.cli import RunConfig, main, parse_annulus, parse_q, parse_suites, read_config, run
from ncchains.cli import InputError
from ncchains.poset import LabeledPoset


def invoke(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_run_finite_nc_a3():
    code, text = invoke("run", "--type", "A3", "--suite", "finite-nc")
    assert code == 0
    meta = json.loads(text)["metadata"]["word-criteria A3"]
    assert meta["orbit_size"] == 16 and meta["lattice_elements"] == 14


def test_run_mcsul_and_rpe():
    report, code = run(RunConfig(type="A~3:outer=1,3", suites=("mcsul", "rpe")).validate())
    assert code == 0
    data = report.to_json()
    assert data["metadata"]["omega A~3:outer=1,3"]["C_rpe"] == 96
    assert data["metadata"]["omega A~3:outer=1,3"]["C_c^F"] == 96
    assert all(c["pass"] for c in data["checks"])


def test_exit_one_on_failed_construction():
    assert invoke("mcsul-verify", "A~4:outer=1,2", "--bfs-limit", "3")[0] == 1


def test_unknown_verdicts_and_strict_mode():
    lenient, _ = invoke("mcsul-verify", "A~3:outer=1,2", "--depth", "0")
    strict, text = invoke("mcsul-verify", "A~3:outer=1,2", "--depth", "0", "--strict")
    assert lenient == 0 and strict == 3
    checks = json.loads(text)["checks"]
    assert any(c["status"] == "unknown" for c in checks)
    assert not any(c["pass"] for c in checks if c["status"] == "unknown")


def test_malformed_cartan_file(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 -1\n-1 3\n")
    assert invoke("nc", str(bad))[0] == 2
    bad.write_text("2\n2 -1\nfoo 2\n")
    assert invoke("nc", str(bad))[0] == 2
    bad.write_text("2\n2 -1\n")
    assert invoke("nc", str(bad))[0] == 2


def test_cartan_file_is_accepted(tmp_path):
    good = tmp_path / "a2.txt"
    good.write_text("# A2 with its defining word\n2\n2 -1\n-1 2\ncox: 2 1\n")
    code, text = invoke("nc", str(good))
    assert code == 0
    assert json.loads(text)["metadata"]["finite-nc"]["lattice_elements"] == 5


@pytest.mark.parametrize("argv", [
    ("nc", "Q7"), ("nc", "E~6"), ("mcsul-verify", "A~3:outer=1,3", "--q", "1/2,1/3"),
    ("mcsul-verify", "A~3:outer=1,3", "--bfs-limit", "0"), ("run", "--type", "A3"),
    ("annulus", "verify-a", "--n", "4"), ("export", "tube"),
])
def test_input_errors(argv):
    assert invoke(*argv)[0] == 2


def test_extended_flag_opens_e_types():
    code, text = invoke("classify", "E~6")
    assert code == 0 and json.loads(text)["metadata"]["m"] == 3


def test_export_dot_a2():
    code, text = invoke("export", "nc", "A2", "--format", "dot")
    assert code == 0
    nodes = [l for l in text.splitlines() if "[label=" in l and "->" not in l]
    edges = [l for l in text.splitlines() if "->" in l]
    assert len(nodes) == 5 and len(edges) == 6
    assert all("label=" in e for e in edges)


def test_export_json_round_trips(tmp_path):
    code, text = invoke("export", "nc", "B2", "--format", "json")
    assert code == 0
    p = LabeledPoset.from_json(text)
    assert len(p) == 6 and p.dumps() == text
    code, text = invoke("export", "ccf", "A~3:outer=1,3")
    cs = ChainSystem.from_json(text)
    assert len(cs) == 96 and json.loads(cs.dumps()) == json.loads(text)
    assert len(build_poset(cs)) == 36


def test_export_png(tmp_path):
    out = tmp_path / "tube.png"
    assert invoke("export", "tube", "--rank", "3", "--format", "png", "-o", str(out))[0] == 0
    assert out.read_bytes()[:4] == b"\x89PNG"


def test_threads_do_not_change_output(monkeypatch):
    argv = ("rpe", "A~3:outer=1,2")
    one = invoke(*argv, "--threads", "1")
    eight = invoke(*argv, "--threads", "8")
    assert one == eight
    monkeypatch.setenv("NCCHAINS_THREADS", "8")
    assert invoke(*argv) == one
    monkeypatch.setenv("NCCHAINS_THREADS", "many")
    assert invoke(*argv)[0] == 2


def test_reruns_are_byte_identical():
    assert invoke("garside-check", "A3") == invoke("garside-check", "A3")


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# tube and annulus checks\ntype = A~3:outer=1,3\nsuite = tubes+annulus\n"
                   "rank = 3\nrank-cap = 3\nannulus = a:4:1,3 b:5 d:6\n")
    loaded = read_config(cfg)
    assert loaded["suites"] == ("tubes", "annulus") and loaded["rank_cap"] == 3
    code, text = invoke("run", "--config", str(cfg))
    assert code == 0
    names = [c["name"] for c in json.loads(text)["checks"]]
    assert any("annulus D n=6" in n for n in names) and any("tube rank 3" in n for n in names)
    cfg.write_text("bogus = 1\n")
    assert invoke("run", "--config", str(cfg))[0] == 2


def test_report_and_plot_files(tmp_path):
    report, plot = tmp_path / "r.json", tmp_path / "r.png"
    code, text = invoke("annulus", "verify-b", "5", "--report", str(report), "--plot", str(plot))
    assert code == 0
    data = json.loads(report.read_text())
    assert len(text.splitlines()) == len(data["checks"])
    assert "timings" not in data
    assert plot.read_bytes()[:4] == b"\x89PNG"
    invoke("annulus", "verify-b", "5", "--report", str(report), "--timings")
    assert "timings" in json.loads(report.read_text())


def test_flag_parsers():
    assert parse_q("1/3, 2/3") == (pytest.approx(1 / 3), pytest.approx(2 / 3))
    assert parse_suites("mcsul+rpe") == ("mcsul", "rpe") == parse_suites("mcsul,rpe")
    assert parse_annulus("a:8:1,3,5,7 b:5") == (("a", 8, (1, 3, 5, 7)), ("b", 5, ()))
    with pytest.raises(InputError):
        parse_annulus("x:4")
    with pytest.raises(InputError):
        RunConfig(type="A3", suites=("nope",)).validate()
