import json
from pathlib import Path

import pytest

from floerrank import cli

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_plain(capsys):
    code, out, _ = run(capsys, "rank", "2", "3", "7")
    assert code == 0
    assert "rank_red   1" in out
    assert "rank_hat   3" in out


def test_rank_json(capsys):
    code, out, _ = run(capsys, "rank", "2", "3", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["rank_red"] == 0 and data["rank_hat"] == 1


def test_rank_csv(capsys):
    code, out, _ = run(capsys, "rank", "2", "3", "5", "7", "--csv")
    assert code == 0
    assert out.strip().split(",")[0] == "13"


def test_rank_invalid_tuple(capsys):
    code, _, err = run(capsys, "rank", "2", "4", "6")
    assert code == 2
    assert "coprime" in err


def test_root_tau_matches_golden(capsys):
    code, out, _ = run(capsys, "root", "--tau", "-2", "-1", "-2", "0", "-2")
    assert code == 0
    assert out == (DATA / "figure_root_ascii.txt").read_text()


def test_root_dot_golden(capsys):
    code, out, _ = run(capsys, "root", "2", "3", "7", "--format", "dot")
    assert code == 0
    assert out == (DATA / "root_2_3_7.dot").read_text()


def test_root_svg(capsys):
    import xml.etree.ElementTree as ET
    code, out, _ = run(capsys, "root", "2", "3", "13", "--format", "svg")
    assert code == 0
    assert ET.fromstring(out).tag.endswith("svg")


def test_root_bad_input(capsys):
    code, _, err = run(capsys, "root", "2", "3", "5")
    assert code == 2


def test_botany_single(capsys):
    code, out, _ = run(capsys, "botany", "1")
    assert code == 0
    assert out == "1,2,3,7\n1,2,3,11\n"


def test_botany_zero_json(capsys):
    code, out, _ = run(capsys, "botany", "0", "--json")
    assert code == 0
    assert json.loads(out) == [{"n": 0, "tuples": [[2, 3, 5]], "s3": True}]


def test_botany_deterministic(capsys):
    _, first, _ = run(capsys, "botany", "2")
    _, second, _ = run(capsys, "botany", "2")
    assert first == second


def test_verify_pinch_cli(capsys):
    code, out, _ = run(capsys, "verify", "pinch", "2", "3", "--", "5", "7")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "holds"
    assert data["ranks"]["pinched"]["red"] == 5
    assert data["ranks"]["unpinched"]["red"] == 13


def test_verify_branched_cli(capsys):
    code, out, _ = run(capsys, "verify", "branched", "2", "3", "7", "--n", "5")
    assert code == 0
    assert json.loads(out)["verdict"] == "holds"


def test_verify_monotone_cli(capsys):
    code, out, _ = run(capsys, "verify", "monotone", "2", "3", "7", "--", "2", "3", "13")
    assert code == 0
    assert json.loads(out)["verdict"] == "holds"


def test_verify_degree_cli(capsys):
    code, out, _ = run(capsys, "verify", "degree", "2", "3", "5", "7",
                       "--move", "pinch:5,7")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "holds" and data["ranks"]["degree"] == 1


def test_verify_bad_usage(capsys):
    code, _, err = run(capsys, "verify", "pinch", "2", "3")
    assert code == 2


def test_scan_cli(capsys):
    code, out, _ = run(capsys, "scan", "9")
    assert code == 0
    assert json.loads(out)["violations"] == []


def test_cache_round_trip(tmp_path, capsys):
    cache = tmp_path / "ranks.jsonl"
    code, _, _ = run(capsys, "botany", "1", "--cache", str(cache))
    assert code == 0
    lines = [json.loads(line) for line in cache.read_text().splitlines()]
    assert [e["tuple"] for e in lines] == [[2, 3, 7], [2, 3, 11]]
    code, out, _ = run(capsys, "botany", "--check-cache", str(cache))
    assert code == 0
    assert "0 stale" in out
    # append-only: a second write doubles the lines, check still passes
    code, _, _ = run(capsys, "botany", "1", "--cache", str(cache))
    assert len(cache.read_text().splitlines()) == 4
    code, out, _ = run(capsys, "botany", "--check-cache", str(cache))
    assert code == 0


def test_cache_detects_stale_and_malformed(tmp_path, capsys):
    cache = tmp_path / "ranks.jsonl"
    cache.write_text(json.dumps({"tuple": [2, 3, 7], "rank_red": 99,
                                 "rank_hat": 3, "n_cutoff": 1}) + "\n")
    code, out, err = run(capsys, "botany", "--check-cache", str(cache))
    assert code == 1 and "stale" in err
    cache.write_text("{not json\n")
    code, _, err = run(capsys, "botany", "--check-cache", str(cache))
    assert code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
