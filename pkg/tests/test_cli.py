import json

import pytest

from gwasym.cli import EXIT_DATA, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, main

LOW = ["--dps", "50"]

COMMANDS = {
    "gen-conifold": ["gen", "--geometry", "conifold", "--gmax", "6", "--dmax", "10"],
    "gen-xp": ["gen", "--geometry", "xp", "--p", "3", "--gmax", "3", "--dmax", "5"],
    "gen-hurwitz": ["gen", "--geometry", "hurwitz", "--gmax", "3", "--dmax", "5"],
    "gen-sample": ["gen", "--geometry", "local_p2", "--to", "gw", "--gmax", "3"],
    "poly": ["analyze", "poly", "--hmax", "3"] + LOW,
    "diagonal": ["analyze", "diagonal", "--geometry", "conifold", "--t", "6", "--q", "1", "--dmax", "14"] + LOW,
    "fit-rate": ["analyze", "fit-rate", "--geometry", "xp", "--p", "3", "--g", "2", "--dmax", "30"] + LOW,
    "fit-power": ["analyze", "fit-power", "--geometry", "conifold", "--g", "5", "--dmax", "120"] + LOW,
    "action": ["analyze", "action", "--geometry", "conifold", "--t", "3", "--gmin", "10", "--gmax", "25"] + LOW,
    "saddle": ["analyze", "saddle", "--geometry", "conifold", "--t", "4,5,6,7", "--gmin", "20", "--gmax", "26", "--dmax", "30"] + LOW,
    "tower": ["analyze", "tower", "--geometry", "conifold", "--t", "2", "--g", "30", "--mmax", "3"] + LOW,
    "large-degree": ["analyze", "large-degree", "--geometry", "xp", "--p", "3", "--g", "2", "--d", "40", "--jmax", "4"] + LOW,
    "toda": ["analyze", "toda", "--order-q", "3", "--order-g", "4"] + LOW,
}


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = main(argv + ["-o", str(out)])
    return code, (out.read_bytes() if out.exists() else b"")


@pytest.mark.parametrize("key", sorted(COMMANDS))
def test_commands_deterministic(key, tmp_path):
    c1, b1 = run(COMMANDS[key], tmp_path, "a")
    c2, b2 = run(COMMANDS[key], tmp_path, "b")
    assert c1 == c2 == EXIT_OK
    assert b1 and b1 == b2


def test_poly_report(tmp_path):
    _, body = run(COMMANDS["poly"], tmp_path)
    rep = json.loads(body)
    assert rep["analysis"] == "poly"
    assert "-71/12" in json.dumps(rep["results"])
    assert rep["precision_digits"] == 50


def test_reported_digits_bounded_by_agreement(tmp_path):
    _, body = run(COMMANDS["diagonal"], tmp_path)
    rep = json.loads(body)
    assert rep["reported_digits"] <= rep["precision_doubling_agreement_digits"]
    assert rep["reported_digits"] <= 30


def test_convert_round_trip(tmp_path):
    gv = tmp_path / "gv.tsv"
    assert main(["gen", "--geometry", "local_p2", "-o", str(gv)]) == EXIT_OK
    gw = tmp_path / "gw.tsv"
    assert main(["convert", "--input", str(gv), "--to", "gw", "--gmax", "4", "-o", str(gw)]) == EXIT_OK
    back = tmp_path / "back.tsv"
    assert main(["convert", "--input", str(gw), "--to", "gv", "-o", str(back)]) == EXIT_OK
    abc = tmp_path / "abc.txt"
    assert main(["convert", "--input", str(gv), "--to", "abc", "-o", str(abc)]) == EXIT_OK
    def rows(path):
        return {line for line in path.read_text().splitlines() if not line.startswith("#")}

    assert rows(gv) <= rows(back)
    assert abc.read_text().strip()


def test_csv_output(tmp_path):
    csv = tmp_path / "s.csv"
    assert main(COMMANDS["fit-power"] + ["--csv", str(csv), "-o", str(tmp_path / "r.json")]) == EXIT_OK
    assert csv.read_text().count("\n") > 3


def test_bad_table_is_usage_error(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("# geometry: x\n# kind: gv\n0\t1\tabc\n")
    assert main(["convert", "--input", str(bad), "--to", "gw"]) == EXIT_USAGE


def test_low_precision_rejected():
    assert main(["analyze", "poly", "--hmax", "2", "--dps", "20"]) == EXIT_USAGE


def test_env_precision(monkeypatch, tmp_path):
    monkeypatch.setenv("GWASYM_DPS", "60")
    _, body = run(["analyze", "poly", "--hmax", "1"], tmp_path)
    assert json.loads(body)["precision_digits"] == 60
    monkeypatch.setenv("GWASYM_DPS", "lots")
    assert main(["analyze", "poly", "--hmax", "1"]) == EXIT_USAGE


def test_unknown_geometry():
    assert main(["gen", "--geometry", "nowhere"]) == EXIT_USAGE


def test_insufficient_data(tmp_path):
    argv = ["analyze", "fit-rate", "--geometry", "conifold", "--g", "3", "--dmax", "4"] + LOW
    assert main(argv) == EXIT_DATA


def test_inconsistent_table(tmp_path):
    gw = tmp_path / "gw.tsv"
    gw.write_text("# geometry: x\n# kind: gw\n# G: inferred\n0\t1\t1/2\n")
    assert main(["convert", "--input", str(gw), "--to", "gv"]) == EXIT_INCONSISTENT


def test_empty_range():
    assert main(["gen", "--geometry", "conifold", "--gmin", "5", "--gmax", "3", "--dmax", "3"]) == EXIT_USAGE
