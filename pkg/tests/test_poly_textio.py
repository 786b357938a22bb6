import random

import pytest
from hypothesis import given, strategies as st

from salab import generate as gen
from salab import textio
from salab.forms import Form
from salab.poly import GaussQ, Poly
from salab.textio import ParseError

seeds = st.integers(min_value=0, max_value=10**6)


def test_gauss_arithmetic():
    a = GaussQ(1, 2)
    b = GaussQ(3, -1)
    assert a * b == GaussQ(5, 5)
    assert (a / b) * b == a
    assert a - a == 0
    with pytest.raises(ZeroDivisionError):
        a / GaussQ(0)


def test_poly_basics():
    z1, zb1 = Poly.z(1), Poly.zb(1)
    p = (z1 + zb1) ** 2
    assert p == z1 * z1 + z1 * zb1 * 2 + zb1 * zb1
    assert p.dz(1) == z1 * 2 + zb1 * 2
    assert p.dzb(1) == z1 * 2 + zb1 * 2
    assert (p - p).is_zero()
    assert Poly.const(0).is_zero()


def test_complex_coefficients():
    i = Poly.const(GaussQ(0, 1))
    assert i * i == Poly.const(-1)


def test_dual_numbers_truncate():
    t = Poly.t()
    p = (Poly.const(1) + t * Poly.z(1)) ** 3
    q = p.truncate_t()
    assert q == Poly.const(1) + t * Poly.z(1) * 3
    assert q.t_coeff(1) == Poly.z(1) * 3
    assert q.t_coeff(0) == Poly.const(1)


def test_conj_vars():
    p = Poly.z(1) * Poly.zb(2) * 3
    assert p.conj_vars() == Poly.zb(1) * Poly.z(2) * 3


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", "0"),
        ("z1*zb1", "z1*zb1"),
        ("3/2+1/3i", "(3/2+1/3i)"),
        ("-dz1", "-dz1"),
        ("dz2^dz1", "-dz1^dz2"),
        ("z1^2*dz1", "z1^2*dz1"),
        ("(z1+1)*dzb1", "(z1+1)*dzb1"),
        ("i*z2", "i*z2"),
    ],
)
def test_parse_format_examples(text, expected):
    assert textio.format_form(textio.parse_form(text, 2)) == expected


@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_form_round_trip(seed, p, q):
    rng = random.Random(seed)
    f = gen.rand_form(rng, 2, p, q, deg=3, nterms=3, complex_=True)
    assert textio.parse_form(textio.format_form(f), 2) == f


@given(seeds)
def test_poly_round_trip(seed):
    rng = random.Random(seed)
    p = gen.rand_poly(rng, 3, deg=4, nterms=4, complex_=True)
    assert textio.parse_poly(textio.format_poly(p), 3) == p


@given(seeds)
def test_parse_is_linear(seed):
    rng = random.Random(seed)
    a = gen.rand_form(rng, 2, 1, 1, deg=2)
    b = gen.rand_form(rng, 2, 1, 1, deg=2)
    text = f"({textio.format_form(a)}) - ({textio.format_form(b)})"
    assert textio.parse_form(text, 2) == a - b


@pytest.mark.parametrize(
    "text, column",
    [
        ("z1 + $", 6),
        ("z3", 1),
        ("(z1", None),
        ("", 1),
        ("dz1 +", None),
    ],
)
def test_parse_errors(text, column):
    with pytest.raises(ParseError) as err:
        textio.parse_form(text, 2)
    if column is not None:
        assert err.value.column == column


def test_parse_poly_rejects_forms():
    with pytest.raises(ParseError):
        textio.parse_poly("dz1", 2)


def test_parse_dimension_check():
    assert textio.parse_form("dz3", 3) == Form.dz(3, 3)
    with pytest.raises(ParseError):
        textio.parse_form("dzb3", 2)
