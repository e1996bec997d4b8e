import pytest

from newtonids.germfile import GermFileError, load_germ, parse_germ
from newtonids.newton import newton_polyhedron
from newtonids.polynomial import parse_polynomial

from conftest import GERMS


def test_all_shipped_germs_parse():
    files = sorted(GERMS.glob("*.germ"))
    assert len(files) >= 10
    for p in files:
        load_germ(p)


def test_full_file():
    gf = parse_germ(
        """
        # comment
        vars x y z w   # trailing comment
        param t
        rank 2
        matrix 2 3
        w + t*w^2 | y | x

        z | w | y
        function 3*x + 4*y - z + w
        polyhedron D : (2,0,0,0) (0,6,0,0)
        """
    )
    assert gf.variables == ("x", "y", "z", "w")
    assert gf.param == "t"
    assert gf.rank == 2
    assert gf.matrix.shape == (2, 3)
    assert gf.function == parse_polynomial("3*x + 4*y - z + w", gf.variables)
    assert gf.polyhedra["D"] == newton_polyhedron([(2, 0, 0, 0), (0, 6, 0, 0)])


@pytest.mark.parametrize(
    "text, line",
    [
        ("vars x\nmatrix 1 2\nx | y", 3),
        ("vars x\nmatrix 1 2\nx", 3),
        ("vars x\nmatrix 2 1\nx", 2),
        ("matrix 1 1\nx", 1),
        ("vars x x", 1),
        ("vars x\nrank 0", 2),
        ("vars x\nfrobnicate", 2),
        ("vars x\nfunction x +", 2),
        ("vars x\npolyhedron D : (1,-1)", 2),
        ("vars x\npolyhedron D : (1,a)", 2),
        ("vars x\npolyhedron D (1)", 2),
        ("vars x\nparam x", 2),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(GermFileError) as info:
        parse_germ(text, "f.germ")
    assert info.value.line == line
    assert str(info.value).startswith(f"f.germ:{line}:")


def test_missing_blocks():
    gf = parse_germ("vars x")
    with pytest.raises(GermFileError):
        gf.require_matrix()
    with pytest.raises(GermFileError):
        gf.require_function()


def test_missing_file(tmp_path):
    with pytest.raises(GermFileError):
        load_germ(tmp_path / "nope.germ")
