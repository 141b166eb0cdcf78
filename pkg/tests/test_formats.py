import pytest

from homolocal.basis import measure_all
from homolocal.complex import betti
from homolocal.errors import EmptyInput, InputError
from homolocal.formats import dumps_cplx, dumps_overlay, load, parse_cplx, parse_off
from homolocal.suite import octahedron, two_hole_annulus

OCTA_OFF = """OFF
6 8 0
0 0 1
1 0 0
0 1 0
-1 0 0
0 -1 0
0 0 -1
3 0 1 2
3 0 2 3
3 0 3 4
3 0 4 1
3 5 2 1
3 5 3 2
3 5 4 3
3 5 1 4
"""


def test_parse_cplx_skips_comments():
    K = parse_cplx("# a triangle\n0 1\n\n1 2\n0 2\n")
    assert len(K) == 6 and betti(K, 1) == 1


def test_parse_cplx_errors():
    with pytest.raises(InputError):
        parse_cplx("0 x\n")
    with pytest.raises(EmptyInput):
        parse_cplx("# nothing\n")


def test_parse_off():
    loaded = parse_off(OCTA_OFF)
    K = loaded.complex
    assert [K.n(d) for d in range(3)] == [6, 12, 8]
    assert betti(K, 2) == 1
    assert loaded.coords[5] == (0.0, 0.0, -1.0)
    assert loaded.source_format == "off"


def test_off_header_on_the_same_line_and_isolated_vertices():
    K = parse_off("OFF 4 1 0\n0 0 0\n1 0 0\n0 1 0\n5 5 5\n3 0 1 2\n").complex
    assert K.n(0) == 4 and K.n(2) == 1


@pytest.mark.parametrize("text", [
    "",
    "PLY\n",
    "OFF\n3 1 0\n0 0 0\n1 0 0\n",
    "OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n4 0 1 2 3\n",
    "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n",
    "OFF\n1 0 0\na b c\n",
])
def test_bad_off(text):
    with pytest.raises(InputError):
        parse_off(text)


def test_load_dispatch(tmp_path):
    (tmp_path / "m.off").write_text(OCTA_OFF)
    (tmp_path / "t.cplx").write_text("0 1 2\n")
    assert load(tmp_path / "m.off").source_format == "off"
    assert load(tmp_path / "t.cplx").complex.n(2) == 1
    with pytest.raises(InputError):
        load(tmp_path / "missing.cplx")
    (tmp_path / "bin.cplx").write_bytes(b"\xff\xfe\x00")
    with pytest.raises(InputError):
        load(tmp_path / "bin.cplx")


def test_cplx_round_trip():
    K = two_hole_annulus()
    again = parse_cplx(dumps_cplx(K))
    assert again.simplices == K.simplices and again.labels == K.labels


def test_dump_drops_sealed_simplices():
    res = measure_all(octahedron(), 2)
    text = dumps_cplx(res.final_complex)
    assert parse_cplx(text).simplices == octahedron().simplices


def test_overlay():
    loaded = parse_off(OCTA_OFF)
    res = measure_all(loaded.complex, 2)
    lines = dumps_overlay(loaded.complex, res.classes, loaded.coords).splitlines()
    assert lines[0].startswith("class 0 dim 2 size 2 center ")
    assert sum(line.startswith("simplex ") for line in lines) == 8
    assert sum(line.startswith("vertex ") for line in lines) == 6
    assert dumps_overlay(loaded.complex, []) == ""
