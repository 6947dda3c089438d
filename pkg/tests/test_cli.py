import json

import pytest

from gor.cli import (
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_USER,
    content_hash,
    ideal_from_text,
    ideal_to_text,
    main,
)
from gor.constructions import build
from gor.fields import GF, QQ


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ideal_file_roundtrip_bit_exact():
    for kwargs in ({"family": "roos4"}, {"family": "cm", "m": 3},
                   {"family": "roos-alpha", "alpha": 2}):
        for field in (QQ, GF(32003)):
            I = build(field=field, **kwargs)
            text = ideal_to_text(I)
            assert ideal_to_text(ideal_from_text(text)) == text


def test_ideal_file_header_validation():
    from gor.errors import BadParameterError

    with pytest.raises(BadParameterError):
        ideal_from_text("x^2\n")
    with pytest.raises(BadParameterError):
        ideal_from_text("vars: x, y\nfield: q\nx^2+y\n")  # inhomogeneous


def test_build_writes_and_roundtrips(tmp_path, capsys):
    out = tmp_path / "cm3.ideal"
    code, _, _ = run(["build", "--family", "cm", "--m", "3", "--out", str(out)], capsys)
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0].startswith("vars: x1, x2")
    assert lines[1] == "field: fp:32003"
    assert len(lines) == 2 + 7


def test_build_to_stdout(capsys):
    code, stdout, _ = run(["build", "--family", "roos4", "--field", "q"], capsys)
    assert code == EXIT_OK
    assert stdout.splitlines()[1] == "field: q"
    assert len(stdout.splitlines()) == 8


def test_analyze_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(
        ["analyze", "roos4", "--betti", "--subadditivity", "--superlevel",
         "--json", str(out)],
        capsys,
    )
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    betti = {(e["i"], e["j"]): e["value"] for e in rep["betti"]["value"]}
    assert betti == {(0, 0): 1, (1, 2): 6, (2, 3): 4, (2, 4): 9, (3, 5): 12, (4, 6): 4}
    assert rep["regularity"]["value"] == 2
    assert rep["type"]["value"] == 4
    assert rep["superlevel"]["value"] is True
    assert rep["h_vector"]["value"] == [1, 4, 4]
    assert rep["subadditivity_violations"]["value"] == []
    for key in ("betti", "regularity", "type"):
        assert rep[key]["provenance"] == "computed"


def test_analyze_omits_unrequested_sections(capsys):
    code, stdout, _ = run(["analyze", "roos4"], capsys)
    assert code == EXIT_OK
    rep = json.loads(stdout)
    assert "betti" not in rep
    assert "lefschetz" not in rep
    assert "hilbert_function" in rep


def test_analyze_field_flag_characteristic_independence(capsys):
    reports = {}
    for f in ("q", "fp:32003"):
        code, stdout, _ = run(["analyze", "cm-m2", "--betti", "--field", f], capsys)
        assert code == EXIT_OK
        reports[f] = json.loads(stdout)["betti"]["value"]
    assert reports["q"] == reports["fp:32003"]


def test_analyze_json_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, stdout, _ = run(
            ["analyze", "roos4", "--lefschetz", "weak", "--seed", "7"], capsys
        )
        assert code == EXIT_OK
        outs.append(stdout)
    assert outs[0] == outs[1]


def test_koszul_command(capsys):
    code, stdout, _ = run(["koszul", "cm-m2", "--steps", "3"], capsys)
    assert code == EXIT_OK
    rep = json.loads(stdout)
    assert rep["koszul"]["value"]["linear_steps"] == 2
    assert rep["koszul"]["value"]["steps_computed"] == 3


def test_idealize_command(tmp_path, capsys):
    out = tmp_path / "rt.ideal"
    code, stdout, _ = run(["idealize", "roos4", "--out", str(out)], capsys)
    assert code == EXIT_OK
    rep = json.loads(stdout)
    v = rep["idealization"]["value"]
    assert v["h_vector"] == [1, 8, 8, 1]
    assert v["quadratic"] is True
    assert len(v["generators"]) == 28
    assert set(v["tags"]) == {"from-I", "from-syzygy", "y-square"}
    text = out.read_text()
    assert ideal_to_text(ideal_from_text(text)) == text


def test_family_command(capsys):
    code, stdout, _ = run(["family", "--family", "cm", "--m", "7"], capsys)
    assert code == EXIT_OK
    rep = json.loads(stdout)
    assert rep["idealized_h_vector"]["value"][1] == 1444
    assert rep["idealized_h_vector"]["provenance"] == "formula"
    assert rep["inequality_witness"]["value"]["passes"] is True


def test_user_errors_exit_2(capsys):
    assert run(["build", "--family", "cm", "--m", "1"], capsys)[0] == EXIT_USER
    assert run(["analyze", "/no/such/file"], capsys)[0] == EXIT_USER
    assert run(["build", "--family", "nope"], capsys)[0] == EXIT_USER
    assert run(["analyze", "roos4", "--field", "fp:10"], capsys)[0] == EXIT_USER


def test_not_artinian_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.ideal"
    f.write_text("vars: x, y\nfield: q\nx^2\n")
    assert run(["analyze", str(f)], capsys)[0] == EXIT_USER


def test_content_hash_stable():
    I1 = build("roos4", field=GF(32003))
    I2 = build("roos4", field=GF(32003))
    assert content_hash(I1) == content_hash(I2)
