import pytest
from hypothesis import given
from hypothesis import strategies as st

from conormal import make_ring, parse_input, parse_polynomial
from conormal.errors import ParseError
from conormal.parsing import format_session

EX = """
# a family over the s-line
ring x y z s;
param s;
mode trivialized;
family X = x^2 + y^2 + s, x^2 + z^2 - s;
ideal I = x*y, (x - 1)^2 - 3/4*z;
"""


def test_session_parse():
    sess = parse_input(EX)
    assert sess.variables == ("x", "y", "z", "s")
    assert sess.parameter == "s" and sess.mode == "affine-trivialized"
    F = sess.family("X")
    assert F.parameter == "s" and F.ambient.positions == ("x", "y", "z")
    I = sess.family("I")
    assert I.parameter is None and I.codim == 2


def test_round_trip():
    sess = parse_input(EX)
    again = parse_input(format_session(sess))
    assert format_session(again) == format_session(sess)
    assert again.objects["I"][1] == sess.objects["I"][1]


R, (x, y) = make_ring(["x", "y"])


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(0, 5), st.integers(0, 5)), max_size=6))
def test_polynomial_round_trip(terms):
    f = R.from_terms([(c, (a, b)) for c, a, b in terms])
    assert parse_polynomial(str(f), R) == f


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("ring x y;\nfamily F = x + q;", 2, 16, "undeclared variable 'q'"),
        ("ring x y;\nfamily F = 2x;", 2, 13, "missing operator"),
        ("ring x y;\nfamily F = x/y;", 2, 14, "numeric literal"),
        ("family F = x;", 1, 1, "declare the ring first"),
        ("ring x;\nmode cubic;", 2, 6, "unknown mode"),
        ("ring x;\nfamily F = x^-1;", 2, 14, "exponent"),
        ("ring x;\nfamily F = x", 2, 13, "expected ';'"),
        ("ring x;\nfamily F = x $ 1;", 2, 14, "unexpected character"),
        ("", 1, 1, "empty input"),
    ],
)
def test_diagnostics_carry_position(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_input(text)
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert fragment in str(err)
