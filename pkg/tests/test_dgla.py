import random

import pytest
from hypothesis import given, strategies as st

from conftest import F
from salab import algebroid as al
from salab import dgla as dg
from salab import forms as fm
from salab import generate as gen
from salab import lie as lb
from salab import morphisms as mo
from salab.algebroid import StringData
from salab.dgla import GaugeElement, LElement, TangentPair
from salab.errors import BadCurvatureType, MCViolated, NotACocycle
from salab.forms import Form
from salab.lie import Connection, GaugeMap, LieAlgebraSpec, LieForm

seeds = st.integers(min_value=0, max_value=10**6)
GL2 = LieAlgebraSpec(2)
GL1 = LieAlgebraSpec(1)
N = 2


def base_data(rng, lie=GL2, n=N):
    return al.random_string_data(rng, lie, n, deg=1, flat20=True)


def sign(k, l):
    return -1 if (k * l) % 2 else 1


def zero_alpha(lie=GL2, n=N):
    return LieForm.zero(lie, n)


# -- L elements ----------------------------------------------------------------------

def test_lelement_validation():
    with pytest.raises(ValueError):
        LElement(1, LieForm.elementary(GL2, N, 1, 1, F("dz1")), Form(N))
    with pytest.raises(ValueError):
        LElement(1, zero_alpha(), F("dz1^dz2"))
    with pytest.raises(ValueError):
        LElement(0, zero_alpha(), F("dz1^dzb1"))
    with pytest.raises(ValueError):
        LElement(0, zero_alpha(), Form(N)) + LElement(1, zero_alpha(), Form(N))


# -- d_Q ---------------------------------------------------------------------------

def test_dq_on_pure_b():
    base = base_data(random.Random(1))
    b = F("z1*zb2*dz1^dz2")
    out = dg.d_Q(base, LElement(0, zero_alpha(), b))
    assert not out.alpha and out.b == fm.ext_d(b)


def test_dq_flat_connection():
    base = StringData(Connection(LieForm.elementary(GL2, N, 1, 2, F("dz1"))))
    assert not base.F
    alpha = LieForm.elementary(GL2, N, 1, 1, F("z1*zb2")) + LieForm.elementary(GL2, N, 2, 1, F("zb1"))
    b = F("zb1*dz1^dz2")
    out = dg.d_Q(base, LElement(0, alpha, b))
    assert out.alpha == lb.delbar_theta(base.theta, alpha)
    assert out.b == fm.ext_d(b)


def test_dq_rejects_f20():
    th = Connection(LieForm(GL1, N, [[F("z1*dz2")]]))
    assert lb.curvature(th).part(2, 0)
    with pytest.raises(BadCurvatureType):
        dg.d_Q(StringData(th), LElement(0, LieForm.zero(GL1, N), Form(N)))


@given(seeds, st.integers(0, 1))
def test_dq_squared(seed, k):
    rng = random.Random(seed)
    base = base_data(rng)
    x = gen.l_element(rng, GL2, N, k)
    assert not dg.d_Q(base, dg.d_Q(base, x))


# -- bracket --------------------------------------------------------------------------

def test_bracket_abelian():
    base = base_data(random.Random(2), GL1)
    a = LieForm(GL1, N, [[F("z1*zb2*dzb1")]])
    b = LieForm(GL1, N, [[F("z2^2*dzb2")]])
    x, y = LElement(1, a, Form(N)), LElement(1, b, Form(N))
    out = dg.dgla_bracket(base, x, y)
    assert not out.alpha
    assert out.b == lb.pairing_c(lb.del_theta(base.theta, a), lb.del_theta(base.theta, b)) * -2


@given(seeds)
def test_bracket_of_degree_zero_with_itself(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    x = gen.l_element(rng, GL2, N, 0)
    assert not dg.dgla_bracket(base, x, x)


@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_graded_skew(seed, k, l):
    rng = random.Random(seed)
    base = base_data(rng)
    x, y = gen.l_element(rng, GL2, N, k), gen.l_element(rng, GL2, N, l)
    assert not (dg.dgla_bracket(base, x, y) + dg.dgla_bracket(base, y, x) * sign(k, l))


@given(seeds, st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
def test_graded_jacobi(seed, k, l, m):
    rng = random.Random(seed)
    base = base_data(rng)
    x, y, z = (gen.l_element(rng, GL2, N, d) for d in (k, l, m))
    br = lambda u, v: dg.dgla_bracket(base, u, v)
    lhs = br(x, br(y, z))
    rhs = br(br(x, y), z) + br(y, br(x, z)) * sign(k, l)
    assert not (lhs - rhs)


@given(seeds, st.integers(0, 1), st.integers(0, 1))
def test_derivation(seed, k, l):
    rng = random.Random(seed)
    base = base_data(rng)
    x, y = gen.l_element(rng, GL2, N, k), gen.l_element(rng, GL2, N, l)
    dq = lambda u: dg.d_Q(base, u)
    br = lambda u, v: dg.dgla_bracket(base, u, v)
    assert not (dq(br(x, y)) - br(dq(x), y) - br(x, dq(y)) * (-1 if k % 2 else 1))


# -- Maurer-Cartan ----------------------------------------------------------------------

def test_mc_trivial_cases():
    base = base_data(random.Random(3))
    zero = LElement(1, zero_alpha(), Form(N))
    assert not dg.mc_residual(base, zero)
    assert dg.deformed_data(base, zero) == base
    b = fm.ext_d(F("z1*zb2*dz1^dz2"))
    x = LElement(1, zero_alpha(), b)
    assert not fm.ext_d(b)
    assert not dg.mc_residual(base, x)
    assert dg.deformed_data(base, x) == StringData.from_H(base.theta, base.H - b)


def test_mc_needs_degree_one():
    base = base_data(random.Random(3))
    with pytest.raises(ValueError):
        dg.mc_residual(base, LElement(0, zero_alpha(), Form(N)))


@given(seeds)
def test_gauge_witness_is_mc(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    w, z = dg.mc_witness(base, gen.gauge_element(rng, GL2, N))
    assert not dg.mc_residual(base, w)
    new = dg.deformed_data(base, w)
    assert al.is_integrable(new)
    assert not dg.curvature_shift_residual(base, w)
    # the deformed data is the gauge transform by the total element z
    assert new == dg.gauge_act(z, base)
    g, B = dg.iso_certificate(z)
    assert not mo.iso_residual(base, new, g, B)


@given(seeds)
def test_non_mc_elements_fail(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    w, _ = dg.mc_witness(base, gen.gauge_element(rng, GL2, N))
    bad = LElement(1, w.alpha, w.b + F("zb2*dz1^dz2^dzb1"))
    res = dg.mc_residual(base, bad)
    assert res
    with pytest.raises(MCViolated):
        dg.deformed_data(base, bad)
    assert any(al.integrability_residual(dg.hat_epsilon(base, bad)))


# -- obstruction ----------------------------------------------------------------------

def test_obstruction_flat():
    base = StringData(Connection.trivial(GL2, N))
    alpha = lb.delbar_theta(base.theta, LieForm.elementary(GL2, N, 1, 2, F("z1*zb1*zb2")))
    assert not dg.obstruction_rep(base, alpha)


def test_obstruction_abelian_is_del_exact():
    # F = -dz1^dzb1 - dz2^dzb2 is of type (1,1) and del-closed
    th = Connection(LieForm(GL1, N, [[F("zb1*dz1 + zb2*dz2")]]))
    base = StringData(th)
    assert base.F.bidegrees() == {(1, 1)}
    alpha = LieForm(GL1, N, [[F("z1*dzb1 + z2*dzb2")]])
    assert not lb.delbar_theta(th, alpha)
    rep = dg.obstruction_rep(base, alpha)
    assert rep == fm.del_(lb.pairing_c(alpha, base.F)) * 2
    assert rep and not fm.ext_d(rep)


@given(seeds)
def test_obstruction_is_closed(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    beta = gen.rand_lieform(rng, GL2, N, 0, 0, 2)
    alpha = lb.delbar_theta(base.theta, beta)
    rep = dg.obstruction_rep(base, alpha)
    assert not fm.ext_d(rep)


def test_obstruction_rejects_non_cocycles():
    base = base_data(random.Random(6))
    alpha = LieForm.elementary(GL2, N, 1, 1, F("zb2*dzb1"))
    with pytest.raises(NotACocycle):
        dg.obstruction_rep(base, alpha)


# -- gauge group ---------------------------------------------------------------------

def test_gauge_product_examples():
    rng = random.Random(4)
    x = gen.gauge_element(rng, GL2, N)
    one = GaugeElement.identity(GL2, N)
    assert dg.gauge_product(one, x) == x and dg.gauge_product(x, one) == x
    c = GaugeMap(GL2, N, [[1, 2], [0, 1]], [[1, -2], [0, 1]], holomorphic=True)
    y = GaugeElement(c, LieForm.zero(GL2, N), Form(N))
    assert dg.gauge_product(x, y).a == lb.conjugate_inv(c, x.a)


@given(seeds)
def test_gauge_group_laws(seed):
    rng = random.Random(seed)
    x, y, z = (gen.gauge_element(rng, GL2, N) for _ in range(3))
    p = dg.gauge_product
    assert p(p(x, y), z) == p(x, p(y, z))
    one = GaugeElement.identity(GL2, N)
    assert p(x, dg.gauge_inverse(x)) == one
    assert p(dg.gauge_inverse(x), x) == one


def test_gauge_act_examples():
    base = base_data(random.Random(5))
    assert dg.gauge_act(GaugeElement.identity(GL2, N), base) == base
    B = F("z1*zb2*dz1^dz2")
    moved = dg.gauge_act(GaugeElement(GaugeMap.identity(GL2, N), LieForm.zero(GL2, N), B), base)
    assert moved == StringData.from_H(base.theta, base.H + fm.ext_d(B))


@given(seeds)
def test_gauge_action_axiom(seed):
    rng = random.Random(seed)
    base = al.random_string_data(rng, GL2, N, deg=1)
    x, y = gen.gauge_element(rng, GL2, N), gen.gauge_element(rng, GL2, N)
    lhs = dg.gauge_act(dg.gauge_product(x, y), base)
    rhs = dg.gauge_act(x, dg.gauge_act(y, base))
    assert lhs == rhs
    assert al.is_integrable(lhs)


# -- infinitesimal action and comparison maps -------------------------------------------

def test_infinitesimal_action_examples():
    base = base_data(random.Random(6))
    b = F("z1*zb1*dz1^dz2")
    t = dg.infinitesimal_action(base, zero_alpha(), zero_alpha(), b)
    assert t.Hdot == fm.ext_d(b) and not t.thetadot
    triv = StringData.trivial(GL2, N)
    alpha = LieForm.elementary(GL2, N, 2, 1, F("z1*zb2"))
    t = dg.infinitesimal_action(triv, alpha, zero_alpha(), Form(N))
    assert not t.Hdot and t.thetadot == -lb.lie_ext_d(alpha)


@given(seeds)
def test_dual_number_first_order(seed):
    rng = random.Random(seed)
    base = al.random_string_data(rng, GL2, N, deg=1)
    alpha = gen.rand_lieform(rng, GL2, N, 0, 0, 1)
    a = gen.rand_lieform(rng, GL2, N, 1, 0, 1)
    b = gen.rand_form(rng, N, 2, 0, 1, 1)
    first, (h0, t0) = dg.dual_action_residual(base, alpha, a, b)
    assert not first and not h0 and not t0


@given(seeds)
def test_phi_retracts_d_hat_epsilon(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    x = gen.l_element(rng, GL2, N, 1)
    assert not (dg.phi_map(base, dg.d_hat_epsilon0(x)) - x)


@given(seeds)
def test_phi_maps_l_image_to_dq_image(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    alpha = gen.rand_lieform(rng, GL2, N, 0, 0, 1)
    a = gen.rand_lieform(rng, GL2, N, 1, 0, 1)
    b = gen.rand_form(rng, N, 2, 0, 1, 1)
    lhs = dg.phi_map(base, dg.infinitesimal_action(base, alpha, a, b))
    assert not (lhs + dg.d_Q(base, LElement(0, alpha, b)))


@given(seeds)
def test_phi_maps_integrable_tangents_to_cocycles(seed):
    rng = random.Random(seed)
    base = base_data(rng)
    t = gen.integrable_tangent(rng, base)
    r1, r2 = dg.tangent_integrability_residual(base, t)
    assert not r1 and not r2
    assert not dg.d_Q(base, dg.phi_map(base, t))


def test_tangent_checker_detects_failure():
    base = base_data(random.Random(7))
    t = TangentPair(F("zb2*dz1^dz2^dzb1"), zero_alpha())
    r1, r2 = dg.tangent_integrability_residual(base, t)
    assert not r1 and r2
    assert dg.d_Q(base, dg.phi_map(base, t))
