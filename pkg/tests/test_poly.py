from fractions import Fraction

import pytest

from prismring.fields import GF, QQ
from prismring.poly import (
    Polynomial,
    format_polynomial,
    parse_polynomial,
    read_system,
    write_system,
)


V = ("x", "y")


def xv(field=QQ):
    return Polynomial.variable(V, "x", field)


def yv(field=QQ):
    return Polynomial.variable(V, "y", field)


def test_square_over_rationals():
    assert format_polynomial((xv() + yv()) ** 2) == "x^2 + 2*x*y + y^2"


def test_square_in_characteristic_two():
    F = GF(2)
    assert format_polynomial((xv(F) + yv(F)) ** 2) == "x^2 + y^2"


def test_scale_clears_fifth():
    p = (xv() - Fraction(1, 5)).scale(5)
    assert format_polynomial(p) == "5*x - 1"


def test_ring_mismatch_rejected():
    with pytest.raises(ValueError):
        xv() + xv(GF(2))
    with pytest.raises(ValueError):
        xv() * Polynomial.variable(("x", "z"), "x")


def test_parse_format_round_trip():
    text = "25*v0^2 + 25*v1^2 + 35*v3^2 + 35*v5^2 - 4/5"
    vars = ("v0", "v1", "v3", "v5")
    p = parse_polynomial(text, vars)
    assert format_polynomial(p) == text
    assert parse_polynomial(format_polynomial(p), vars) == p


def test_parse_handles_parentheses_and_powers():
    p = parse_polynomial("(x + y)^2 - (x - y)^2", V)
    assert format_polynomial(p) == "4*x*y"


def test_bracketed_variable_names():
    vars = ("x_k[a,b]", "y_l[a,b]")
    p = parse_polynomial("5*x_k[a,b]*y_l[a,b] - 1/125", vars)
    assert format_polynomial(p) == "5*x_k[a,b]*y_l[a,b] - 1/125"


def test_unknown_variable_rejected():
    with pytest.raises(ValueError):
        parse_polynomial("z + 1", V)


def test_lex_vs_grevlex_leading_terms():
    p = parse_polynomial("x*y^2 + x^2", V)
    assert p.leading_monomial("grevlex") == (1, 2)
    assert p.leading_monomial("lex") == (2, 0)


def test_rename_into_larger_ring():
    p = (xv() + 1) * yv()
    q = p.rename(("x", "y", "z"))
    assert format_polynomial(q) == format_polynomial(p)
    assert q.vars == ("x", "y", "z")


def test_system_file_round_trip_is_bit_exact():
    polys = [
        parse_polynomial("x^2 + 2*x*y + y^2", V),
        parse_polynomial("x - 1/3", V),
    ]
    text = write_system(polys, V, QQ)
    back, vars, field = read_system(text)
    assert vars == V and field == QQ and back == polys
    assert write_system(back, vars, field) == text


def test_system_file_reader_skips_comments():
    text = write_system([xv()], V, QQ, comments=["legend line"])
    polys, vars, field = read_system(text)
    assert polys == [xv()]


def test_system_file_gf_header():
    F = GF(7)
    text = write_system([xv(F).scale(3)], V, F)
    assert "field: GF(7)" in text
    polys, _, field = read_system(text)
    assert field == F and polys[0].terms == {(1, 0): 3}
