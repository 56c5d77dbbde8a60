import json

import pytest

from irls.cli import DEFAULTS, build_config, build_parser, main, resolve_options

SPEC = {"n": 400, "p0": 0.01, "rng_seed": 0, "layers": [{"p": 0.4, "communities": 8}, {"p": 0.25, "communities": 8}]}


@pytest.fixture
def dataset(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(SPEC))
    graph, truth = tmp_path / "g.txt", tmp_path / "t.txt"
    assert main(["generate", "--spec", str(spec), "--out-graph", str(graph), "--out-truth", str(truth), "--rng-seed", "3"]) == 0
    return tmp_path, graph, truth


def test_generate_is_reproducible(dataset):
    tmp, graph, truth = dataset
    g2, t2 = tmp / "g2.txt", tmp / "t2.txt"
    assert main(["generate", "--spec", str(tmp / "spec.json"), "--out-graph", str(g2), "--out-truth", str(t2), "--rng-seed", "3"]) == 0
    assert graph.read_bytes() == g2.read_bytes()
    assert truth.read_bytes() == t2.read_bytes()


def test_stats(dataset, capsys):
    tmp, graph, truth = dataset
    assert main(["stats", "--graph", str(graph), "--truth", str(truth), "--json", str(tmp / "s.json")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("n 400\n")
    assert "layer 2 modularity" in out
    assert json.loads((tmp / "s.json").read_text())["layers"] == 2


def test_detect_writes_layers_and_metadata(dataset):
    tmp, graph, _ = dataset
    out = tmp / "r.txt"
    args = ["detect", "--graph", str(graph), "--seed", "7", "--iterations", "2", "--out", str(out), "--rng-seed", "1"]
    assert main(args) == 0
    lines = out.read_text().splitlines()
    assert [line.split()[:2] for line in lines] == [["layer", "1"], ["layer", "2"]]
    assert all("7" in line.split()[2:] for line in lines)
    meta = json.loads((tmp / "r.txt.json").read_text())
    assert meta["seed"] == "7" and meta["options"]["iterations"] == 2
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first


def test_detect_unknown_label(dataset, capsys):
    _, graph, _ = dataset
    assert main(["detect", "--graph", str(graph), "--seed", "nobody"]) == 1
    assert "UnknownLabel" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["stats", "--graph", "x", "--truth", "y", "--bogus"])
    assert info.value.code == 2


def test_missing_file_exit_1(capsys):
    assert main(["stats", "--graph", "/nonexistent/g", "--truth", "/nonexistent/t"]) == 1
    assert "FileNotFoundError" in capsys.readouterr().err


def test_benchmark_identical_across_jobs(dataset, capsys):
    tmp, graph, truth = dataset
    base = ["benchmark", "--graph", str(graph), "--truth", str(truth), "--method", "irls-auto", "--cases", "3"]
    base += ["--iterations", "2", "--max-seed-set", "5", "--rng-seed", "9"]
    assert main(base + ["--out-csv", str(tmp / "a.csv"), "--jobs", "1"]) == 0
    assert main(base + ["--out-csv", str(tmp / "b.csv"), "--jobs", "2", "--out-timing", str(tmp / "time.csv")]) == 0
    assert (tmp / "a.csv").read_bytes() == (tmp / "b.csv").read_bytes()
    assert (tmp / "a.csv.json").read_bytes() == (tmp / "b.csv.json").read_bytes()
    assert (tmp / "time.csv").exists()


def test_benchmark_without_eligible_seeds(dataset, capsys):
    tmp, graph, truth = dataset
    args = ["benchmark", "--graph", str(graph), "--truth", str(truth), "--method", "hicode"]
    args += ["--max-seed-set", "100000", "--out-csv", str(tmp / "x.csv")]
    assert main(args) == 1
    assert "NoEligibleSeeds" in capsys.readouterr().err
    assert not (tmp / "x.csv").exists()


def test_theory(tmp_path, capsys):
    p1 = tmp_path / "p1.json"
    p1.write_text(json.dumps({"n": 1500, "n1": 50, "e_1in": 980, "e_1out": 2175, "e": 130000, "t": 0.5}))
    assert main(["theory", "--check", "1", "--params", str(p1)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"merge_condition", "separate_condition", "merge_threshold_t"}
    p2 = tmp_path / "p2.json"
    p2.write_text(json.dumps({"n": 500, "n1": 20, "e_1in": 1, "e_1out": 1, "e": 5000, "t": 0.5, "r": 0.3, "p1": 0.6, "p2": 0.2}))
    assert main(["theory", "--check", "2", "--params", str(p2)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["separate_better"] is True


def test_flags_override_config_and_presets(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"preset": "real", "beta": 0.4, "iterations": 4}))
    args = build_parser().parse_args(["detect", "--graph", "g", "--seed", "s", "--config", str(cfg), "--iterations", "6"])
    opts = resolve_options(args)
    assert (opts["max_seed_set"], opts["max_community"], opts["max_nodes"]) == (9, 500, 5000)
    assert opts["beta"] == 0.4 and opts["iterations"] == 6
    args = build_parser().parse_args(["detect", "--graph", "g", "--seed", "s", "--preset", "synthetic", "--sizes", "40,60"])
    conf = build_config(resolve_options(args))
    assert conf.sizes == (40, 60) and conf.losp.n_set == 18 and conf.sampling.max_nodes == 10000


def test_every_detection_flag_has_a_config_key(tmp_path):
    parser = build_parser()
    detect = parser._subparsers._group_actions[0].choices["detect"]
    dests = {a.dest for a in detect._actions} - {"help", "graph", "seed", "out", "meta", "config", "preset"}
    assert dests <= set(DEFAULTS)
