import random

import pytest
from hypothesis import given, strategies as st

import oracle as O
from conftest import F, P
from salab import forms as fm
from salab import generate as gen
from salab.forms import DimensionMismatch, Form, VectorField10

seeds = st.integers(min_value=0, max_value=10**6)


def test_wedge_repeated_index():
    assert fm.wedge(F("dz1"), F("dz1")).is_zero()


def test_wedge_mixed_basis():
    w = fm.wedge(F("dz1"), F("dzb1"))
    assert w == Form.basis(2, (1,), (1,))
    assert w.coeff((1,), (1,)) == P("1")


def test_wedge_graded_sign():
    assert fm.wedge(F("z1*dzb1"), F("dz1")) == F("-z1*dz1^dzb1")


def test_d_of_function():
    assert fm.ext_d(F("z1*zb1")) == F("zb1*dz1 + z1*dzb1")


def test_delbar_holomorphic_coefficient():
    assert fm.delbar(F("z1^2*dz2")).is_zero()


def test_d_splits_into_del_and_delbar():
    a = F("z1*zb2^2*dz2 + zb1*dzb2")
    assert fm.ext_d(a) == fm.del_(a) + fm.delbar(a)


def test_contract_examples():
    d1 = VectorField10.coordinate(2, 1)
    assert fm.contract(d1, F("dz1^dz2")) == F("dz2")
    assert fm.contract(d1, F("dzb1")).is_zero()
    assert fm.contract(VectorField10.coordinate(2, 1, P("z2")), F("dz1")) == F("z2")


def test_lie_derivative_examples():
    d1 = VectorField10.coordinate(2, 1)
    assert fm.lie_derivative(d1, F("z1*dz2")) == F("dz2")
    assert fm.lie_derivative(d1, F("5")).is_zero()
    assert fm.lie_derivative(VectorField10.coordinate(2, 1, P("z1")), F("dz1")) == F("dz1")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fm.wedge(Form.dz(2, 1), Form.dz(3, 1))


def test_basis_index_range():
    with pytest.raises(ValueError):
        Form.basis(2, (3,), ())


# -- oracle comparisons --------------------------------------------------------

def _rand_mixed(rng, n, deg=2):
    out = Form(n)
    for p in range(3):
        for q in range(3):
            if p <= n and q <= n and rng.random() < 0.4:
                out = out + gen.rand_form(rng, n, p, q, deg=deg, nterms=2, complex_=True)
    return out


@given(seeds)
def test_d_squared_matches_oracle(seed):
    rng = random.Random(seed)
    f = gen.rand_poly(rng, 2, deg=4, nterms=4)
    d1 = fm.ext_d(Form.scalar(2, f))
    assert O.form_expr(d1) == O.d(O.form_expr(Form.scalar(2, f)), 2)
    assert fm.ext_d(d1).is_zero()
    assert not O.d(O.form_expr(d1), 2)


@given(seeds)
def test_d_matches_oracle(seed):
    rng = random.Random(seed)
    a = _rand_mixed(rng, 2)
    assert O.equal(O.form_expr(fm.ext_d(a)), O.d(O.form_expr(a), 2))


@given(seeds)
def test_wedge_matches_oracle(seed):
    rng = random.Random(seed)
    a, b = _rand_mixed(rng, 2), _rand_mixed(rng, 2)
    assert O.equal(O.form_expr(fm.wedge(a, b)), O.wedge(O.form_expr(a), O.form_expr(b)))


@given(seeds)
def test_contract_matches_oracle(seed):
    rng = random.Random(seed)
    a = _rand_mixed(rng, 2)
    V = gen.rand_vector(rng, 2)
    Vx = [O.poly_expr(c, 2) for c in V.components]
    assert O.equal(O.form_expr(fm.contract(V, a)), O.contract(Vx, O.form_expr(a), 2))


@given(seeds)
def test_cartan_formula_matches_oracle(seed):
    rng = random.Random(seed)
    a = _rand_mixed(rng, 2)
    V = gen.rand_vector(rng, 2)
    Vx = [O.poly_expr(c, 2) for c in V.components]
    ax = O.form_expr(a)
    expected = O.add(O.contract(Vx, O.d(ax, 2), 2), O.d(O.contract(Vx, ax, 2), 2))
    assert O.equal(O.form_expr(fm.lie_derivative(V, a)), expected)


# -- algebraic properties ------------------------------------------------------

@given(seeds)
def test_wedge_graded_commutative(seed):
    rng = random.Random(seed)
    for p, q, r, s in ((1, 0, 0, 1), (1, 1, 1, 0), (2, 0, 0, 1)):
        a = gen.rand_form(rng, 2, p, q)
        b = gen.rand_form(rng, 2, r, s)
        sign = -1 if ((p + q) * (r + s)) % 2 else 1
        assert fm.wedge(a, b) == fm.wedge(b, a) * sign


@given(seeds)
def test_wedge_associative(seed):
    rng = random.Random(seed)
    a, b, c = (_rand_mixed(rng, 3, 1) for _ in range(3))
    assert fm.wedge(fm.wedge(a, b), c) == fm.wedge(a, fm.wedge(b, c))


@given(seeds)
def test_leibniz(seed):
    rng = random.Random(seed)
    a = gen.rand_form(rng, 2, 1, 0, complex_=True)
    b = _rand_mixed(rng, 2)
    lhs = fm.ext_d(fm.wedge(a, b))
    rhs = fm.wedge(fm.ext_d(a), b) - fm.wedge(a, fm.ext_d(b))
    assert lhs == rhs


@given(seeds)
def test_del_delbar_relations(seed):
    rng = random.Random(seed)
    a = _rand_mixed(rng, 2, 3)
    assert fm.del_(fm.del_(a)).is_zero()
    assert fm.delbar(fm.delbar(a)).is_zero()
    assert (fm.del_(fm.delbar(a)) + fm.delbar(fm.del_(a))).is_zero()


@given(seeds)
def test_contract_is_antiderivation(seed):
    rng = random.Random(seed)
    V = gen.rand_vector(rng, 2)
    a = gen.rand_form(rng, 2, 1, 1)
    b = _rand_mixed(rng, 2)
    lhs = fm.contract(V, fm.wedge(a, b))
    rhs = fm.wedge(fm.contract(V, a), b) + fm.wedge(a, fm.contract(V, b))
    assert lhs == rhs


@given(seeds)
def test_homotopies_invert_d(seed):
    rng = random.Random(seed)
    a = gen.rand_form(rng, 2, 1, 1, deg=3)
    exact = fm.ext_d(a)
    assert fm.ext_d(fm.d_homotopy(exact)) == exact
    h = gen.rand_form(rng, 2, 1, 0, deg=3, holomorphic=True)
    closed = fm.del_(h)
    assert fm.del_(fm.del_homotopy(closed)) == closed


def test_leq_checks():
    assert fm.check_leq(F("dz1^dz2^dzb1"), 1)
    with pytest.raises(ValueError):
        fm.check_leq(F("dz1^dzb1^dzb2"), 1)
    with pytest.raises(ValueError):
        fm.check_leq(F("dz1^dz2"), 1)
    assert fm.leq_part(F("dz1^dz2 + dz1^dzb1")) == F("dz1^dz2")
