import json

import pytest

from dfdomains.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_ford_json(capsys):
    status, out, _ = run(capsys, "ford", "--input", "gamma11.json")
    assert status == 0
    data = json.loads(out)
    assert len(data["sides"]) == 10
    assert data["signature"]["text"] == "(0; 2, 2, 2, 2; 2)"
    assert {s["center"] for s in data["sides"] if s["type"] == "arc"} >= {"0", "1/2", "-10/33"}


def test_output_is_deterministic(capsys, tmp_path):
    first = run(capsys, "ford", "--input", "g_intersection.json")[1]
    path = tmp_path / "g.json"
    assert main(["ford", "--input", "g_intersection.json", "--output", str(path)]) == 0
    assert path.read_text() == first


def test_svg(capsys):
    status, out, _ = run(capsys, "df-check", "--input", "gamma11.json", "--format", "svg")
    assert status == 0
    assert out.startswith("<svg") and out.rstrip().endswith("</svg>")
    assert out.count("<path") == 10
    assert "stroke-dasharray" in out


def test_dirichlet(capsys):
    status, out, _ = run(capsys, "dirichlet", "--input", "modular.json", "--center", "0,2")
    assert status == 0
    assert json.loads(out)["center"] == {"x": "0", "y2": "4"}


def test_df_check_negative(capsys):
    status, out, _ = run(capsys, "df-check", "--input", "ngamma0_11.json")
    data = json.loads(out)
    assert status == 0 and data["pairing_symmetric"] is False
    assert data["violation"]["side"] == 2


def test_double_dirichlet(capsys):
    status, out, _ = run(capsys, "double-dirichlet", "--input", "modular.json", "--centers", "2,3")
    assert status == 0 and json.loads(out)["pairing_symmetric"] is True


def test_extract_and_double(capsys):
    status, out, _ = run(capsys, "extract-reflection", "--input", "gamma11.json")
    assert status == 0
    assert json.loads(out)["angles_over_pi"] == ["0", "1/2", "1/2", "0", "1/2", "1/2"]
    status, out, _ = run(capsys, "double", "--input", "gamma11.json")
    assert json.loads(out)["domain"]["signature"]["text"] == "(0; 2, 2, 2, 2; 2)"
    status, out, _ = run(capsys, "double", "--signature", "0;2,3,7;1")
    assert json.loads(out)["domain"]["signature"]["text"] == "(0; 2, 3, 7; 1)"


def test_polygon_from_signature(capsys):
    status, out, _ = run(capsys, "polygon-from-signature", "--signature", "0;2,3;1")
    assert status == 0
    assert json.loads(out)["angles_over_pi"] == ["0", "1/2", "1/3"]


def test_congruence(capsys):
    status, out, _ = run(capsys, "congruence", "--input", "g_intersection.json", "--core")
    data = json.loads(out)
    assert status == 0
    assert data["index"] == 24 and data["level"] == 11
    assert data["verdict"] == "non-congruence" and data["witness"]["order"] == 6
    assert data["core_index"] == 1351680 and data["principal_congruence_index"] == 660


def test_congruence_intersection_oracle(capsys):
    status, out, _ = run(capsys, "congruence", "--input", "gamma11.json",
                         "--oracle", "integral-intersection", "--emit-perms")
    data = json.loads(out)
    assert status == 0 and data["index"] == 24
    assert data["perm_L"].count("(") == 2


def test_kleinian(capsys):
    status, out, _ = run(capsys, "kleinian-df", "--input", "kleinian_example.json")
    data = json.loads(out)
    assert status == 0 and data["passed"] is True
    assert data["axis"] == {"kind": "point", "base": {"re": "0", "im": "0"}}


def test_reproduce(capsys):
    status, out, _ = run(capsys, "reproduce-paper")
    assert status == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7 and all(line.startswith("PASS") for line in lines)


def test_missing_file(capsys):
    status, _, err = run(capsys, "ford", "--input", "/nonexistent/group.json")
    assert status == 2 and "cannot read" in err


def test_bad_matrix(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"generators": [[["1", "1"], ["0", "1"]], [["2", "0"], ["0", "1"]]]}')
    status, _, err = run(capsys, "ford", "--input", str(path))
    assert status == 2 and "square" in err


def test_unverified_exit_code(capsys, tmp_path):
    path = tmp_path / "thin.json"
    path.write_text('{"generators": [[["1", "1"], ["0", "1"]], [["1", "0"], ["5", "1"]]]}')
    status, _, err = run(capsys, "ford", "--input", str(path), "--depth", "2")
    assert status == 3 and "--depth" in err


def test_inconsistent_exit_code(capsys):
    status, _, err = run(capsys, "dirichlet", "--input", "modular.json", "--center", "0,1")
    assert status == 4 and "fixed" in err


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["ford", "--input", "gamma11.json", "--depth", "0"])
