import pytest

from helpers import iposets_upto
from iposets.canonical import canonical_form
from iposets.cli import main
from iposets.core import CycleDetected, NotMinimal, make_iposet
from iposets.fileformat import FormatError, format_ipos, parse_ipos, read_ipos, write_ipos
from iposets.forbidden import known_forbidden
from iposets.recognition import build_witness

ARROW = make_iposet(2, [(0, 1)], [0], [1])


def write(tmp_path, name, P):
    path = tmp_path / name
    write_ipos(P, path)
    return str(path)


def test_round_trip_small_and_fixtures():
    items = iposets_upto(3) + [fx.poset for fx in known_forbidden()]
    for P in items:
        assert canonical_form(parse_ipos(format_ipos(P))) == canonical_form(P)


def test_writer_layout():
    P = make_iposet(3, [(0, 1), (1, 2)], [0], [2])
    text = format_ipos(P, canonical=False)
    assert format_ipos(P) == format_ipos(parse_ipos(text))
    assert text =="ipos v1\npoints 3\nsource 0\ntarget 2\nrel\n0 1\n0 2\n1 2\nend\n"


def test_reader_closes_relation_and_accepts_comments():
    P = parse_ipos("ipos v1\npoints 3\nsource\ntarget 2\nrel\n0 1   # first\n1 2\nend\n")
    assert P.relation_pairs() == [(0, 1), (0, 2), (1, 2)]
    assert P.targets == (2,) and P.sources == ()


@pytest.mark.parametrize(
    "text, error",
    [
        ("ipos v2\npoints 1\nsource\ntarget\nrel\nend\n", FormatError),
        ("ipos v1\npoints 1\ntarget\nsource\nrel\nend\n", FormatError),
        ("ipos v1\npoints 2\nsource\ntarget\nrel\n0 1\n", FormatError),
        ("ipos v1\npoints 2\nsource\ntarget\nrel\n0 x\nend\n", FormatError),
        ("ipos v1\npoints 2\nsource\ntarget\nrel\n0 1 1\nend\n", FormatError),
        ("ipos v1\npoints 2\nsource\ntarget\nrel\nend\nextra\n", FormatError),
        ("ipos v1\npoints 2\nsource\ntarget\nrel\n0 1\n1 0\nend\n", CycleDetected),
        ("ipos v1\npoints 2\nsource 1\ntarget\nrel\n0 1\nend\n", NotMinimal),
        ("", FormatError),
    ],
)
def test_reader_errors(text, error):
    with pytest.raises(error):
        parse_ipos(text)


def test_validate_and_errors(tmp_path, capsys):
    good = write(tmp_path, "a.ipos", ARROW)
    assert main(["validate", good]) == 0
    assert capsys.readouterr().out.startswith("ok 2 points 1->1")
    bad = tmp_path / "bad.ipos"
    bad.write_text("ipos v1\npoints 2\nsource 1\ntarget\nrel\n0 1\nend\n")
    assert main(["validate", str(bad)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:") and err.count("\n") == 1
    assert main(["validate", str(tmp_path / "missing.ipos")]) == 2


def test_glue_par_op(tmp_path, capsys):
    a = write(tmp_path, "a.ipos", ARROW)
    out = tmp_path / "out.ipos"
    assert main(["glue", a, a, "-o", str(out)]) == 0
    assert read_ipos(out).n == 3
    assert main(["par", a, a]) == 0
    assert parse_ipos(capsys.readouterr().out).dom == 2
    assert main(["op", a]) == 0
    assert parse_ipos(capsys.readouterr().out).n == 2


def test_glue_arity_mismatch_exit_2(tmp_path, capsys):
    a = write(tmp_path, "a.ipos", ARROW)
    b = write(tmp_path, "b.ipos", make_iposet(1, [], [], []))
    assert main(["glue", a, b]) == 2
    assert "error" in capsys.readouterr().err


def test_predicates(tmp_path, capsys):
    a = write(tmp_path, "a.ipos", ARROW)
    b = write(tmp_path, "b.ipos", make_iposet(2, [], [0], [1]))
    assert main(["iso", a, a]) == 0
    assert main(["iso", a, b]) == 1
    assert main(["subsume", a, b]) == 0
    assert main(["subsume", b, a]) == 1
    assert capsys.readouterr().out.split() == ["true", "false", "true", "false"]


def test_recognize_fixture(capsys):
    from importlib import resources

    nn = str(resources.files("iposets") / "data" / "nn.ipos")
    assert main(["recognize", "--class", "gp", nn]) == 1
    assert capsys.readouterr().out == "false\n"
    assert main(["recognize", "--class", "sp", nn]) == 1
    assert main(["recognize", "--class", "consistent", nn]) == 0


def test_recognize_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["recognize", "--class", "bogus", "x.ipos"])
    assert exc.value.code == 2


def test_level_decompose_witness(tmp_path, capsys):
    path = tmp_path / "w.ipos"
    assert main(["witness", "2", "-o", str(path)]) == 0
    assert canonical_form(read_ipos(path)) == canonical_form(build_witness(2))
    assert main(["level", str(path)]) == 0
    assert capsys.readouterr().out == "2\n"
    assert main(["decompose", str(path)]) == 0
    term = capsys.readouterr().out.strip()
    assert term.startswith("glue(")
    swapped = write(tmp_path, "s.ipos", make_iposet(4, [(0, 1), (2, 3)], [0, 2], [3, 1]))
    assert main(["decompose", swapped]) == 1
    assert capsys.readouterr().out == "none\n"
    assert main(["witness", "0"]) == 2


def test_census_cli(capsys):
    assert main(["census", "--max-n", "5"]) == 0
    rows = [ln.split("\t") for ln in capsys.readouterr().out.splitlines()]
    assert rows[0] == ["n", "class", "count"]
    gp = [int(c) for n, cls, c in rows[1:] if cls == "GP"]
    assert gp == [1, 1, 2, 5, 16, 63]
    keys = [(int(n), cls) for n, cls, _ in rows[1:]]
    assert keys == sorted(keys)


def test_census_cli_deterministic_across_jobs(capsys):
    main(["census", "--max-n", "4", "--classes", "GPI,IP"])
    one = capsys.readouterr().out
    main(["census", "--max-n", "4", "--classes", "GPI,IP", "--jobs", "2"])
    assert capsys.readouterr().out == one


def test_census_cli_caps(capsys):
    assert main(["census", "--max-n", "9", "--classes", "P"]) == 2
    assert "cap" in capsys.readouterr().err


def test_forbidden_cli(capsys):
    assert main(["forbidden", "--max-points", "6"]) == 0
    out = capsys.readouterr().out
    names = [ln.split()[2] for ln in out.splitlines() if ln.startswith("#")]
    assert sorted(names) == sorted(["NN", "N+", "N-", "3C", "LN"])
    assert out.count("ipos v1") == 5
