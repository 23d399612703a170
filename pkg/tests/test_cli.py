import json
import xml.etree.ElementTree as ET

import pytest

from hfmap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_index(capsys):
    code, out, _ = run(capsys, "index", "--q", "4", "--n", "5")
    assert code == 0 and out == "120\n"
    code, out, _ = run(capsys, "index", "--q", "4", "--n", "3")
    assert code == 0 and out == "24\n"
    code, out, _ = run(capsys, "index", "--q", "4", "--n", "6", "--check")
    assert code == 0 and out == "96\ncheck OK\n"


def test_index_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["index", "--q", "5"])
    assert exc.value.code == 2


def test_map_json(capsys):
    code, out, _ = run(capsys, "map", "--q", "4", "--n", "5", "--json")
    assert code == 0
    assert json.loads(out) == {
        "q": 4, "n": 5, "darts": 120, "vertices": 24, "edges": 60,
        "faces": 30, "genus": 4, "group_order": 120,
    }
    code, out, _ = run(capsys, "map", "--q", "4", "--n", "3", "--json")
    assert json.loads(out)["genus"] == 0
    code, out, _ = run(capsys, "map", "--q", "3", "--n", "5", "--json")
    assert json.loads(out)["genus"] == 0


def test_coords_names(capsys):
    code, out, _ = run(capsys, "coords", "--q", "4", "--n", "5", "--names")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 24
    assert lines[0] == "A1: 1/(0sqrt2)"
    assert "F1: 3/(1sqrt2)" in lines  # customary representative, as printed
    code, out, _ = run(capsys, "coords", "--q", "3", "--n", "5")
    assert code == 0 and len(out.strip().splitlines()) == 12


def test_circuit_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "circuit", "--verify", "bring")
    assert code == 0 and out == "OK\n"
    bad = tmp_path / "bad.txt"
    bad.write_text("H2,C2,H2,C2,H2,C2,H2,C2,H2,C2,H2,C2")
    code, _, err = run(capsys, "circuit", "--verify", str(bad))
    assert code == 1 and "adjacency" in err


def test_circuit_search(capsys):
    code, out, _ = run(
        capsys, "circuit", "--search", "--start", "H2", "--length", "4",
        "--poles", "0",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("# ")
    assert int(lines[-1].split()[1]) == len(lines) - 1 > 0


def test_polygon(capsys):
    code, out, _ = run(capsys, "polygon", "--classes")
    assert code == 0
    assert out.splitlines() == [
        "class 1 3 5 7 9 11 13 15 17 19",
        "class 2 6 10 14 18",
        "class 4 8 12 16 20",
    ]
    code, out, _ = run(capsys, "polygon", "--genus")
    assert code == 0 and out == "genus 4\n"
    code, out, _ = run(capsys, "polygon", "--rule-check")
    assert code == 0 and out == "rule-check OK\n"


def test_polygon_rejects_broken_pairing(capsys, tmp_path):
    path = tmp_path / "pairing.txt"
    path.write_text("\n".join(f"{k} {k + 10}" for k in range(1, 11)) + "\n")
    code, out, _ = run(capsys, "polygon", "--rule-check", "--pairing", str(path))
    assert code == 1 and "FAIL" in out


def test_render_to_file(capsys, tmp_path):
    out_svg = tmp_path / "u.svg"
    code, _, _ = run(capsys, "render", "universal", "--q", "4", "--depth", "2",
                     "--model", "disk", "--out", str(out_svg))
    assert code == 0
    ET.fromstring(out_svg.read_text())
    out_dot = tmp_path / "g.dot"
    code, _, _ = run(capsys, "render", "quotient", "--q", "4", "--n", "3",
                     "--out", str(out_dot))
    assert code == 0
    assert out_dot.read_text().startswith("graph {")
    out_poly = tmp_path / "p.svg"
    code, _, _ = run(capsys, "render", "polygon", "--out", str(out_poly))
    assert code == 0
    ET.fromstring(out_poly.read_text())


def test_deterministic_stdout(capsys):
    _, first, _ = run(capsys, "coords", "--q", "4", "--n", "5")
    _, second, _ = run(capsys, "coords", "--q", "4", "--n", "5")
    assert first == second
    _, first, _ = run(capsys, "render", "quotient", "--q", "3", "--n", "5")
    _, second, _ = run(capsys, "render", "quotient", "--q", "3", "--n", "5")
    assert first == second


def test_verify_suite(capsys, tmp_path):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10
    assert all(line.startswith("PASS") for line in lines)

    code, out, _ = run(capsys, "verify", "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 10 and all(item["ok"] for item in payload)

    corrupted = tmp_path / "pairing.txt"
    corrupted.write_text("2 9\n5 6\n10 13\n14 17\n18 1\n3 12\n7 16\n11 20\n15 4\n19 8\n")
    code, out, err = run(capsys, "verify", "--pairing", str(corrupted))
    assert code == 1
    assert any(line.startswith("FAIL  pairing-genus") for line in out.splitlines())
