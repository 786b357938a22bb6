import random

import pytest
from hypothesis import given, strategies as st

from conftest import F, P
from salab import cech as ce
from salab import forms as fm
from salab import generate as gen
from salab import lie as lb
from salab import morphisms as mo
from salab.errors import IncompatibleFamily, InconsistentCochain
from salab.forms import Form
from salab.lie import Connection, GaugeMap, LieAlgebraSpec, LieForm
from salab.morphisms import AutElement
from salab.poly import GaussQ

seeds = st.integers(min_value=0, max_value=10**6)
GL2 = LieAlgebraSpec(2)
N = 2


def const_gauge(m, lie=GL2):
    # 2x2 inverse by hand; only used with invertible constant matrices
    a, b, c, d = (GaussQ.coerce(x) for x in (m[0][0], m[0][1], m[1][0], m[1][1]))
    det = a * d - b * c
    inv = [[d / det, -b / det], [-c / det, a / det]]
    return GaugeMap(lie, N, m, inv, holomorphic=True)


def rand_cochain0(rng, m, n=N):
    return ce.Cochain0({i: gen.aut_member(rng, GL2, n) for i in range(1, m + 1)})


def zero_residuals(res):
    return all(not g and not B for g, B in res.values())


# -- covers and cochains ------------------------------------------------------------

def test_cover_validation():
    with pytest.raises(ValueError):
        ce.Cover(2, ((2, 1),))
    with pytest.raises(ValueError):
        ce.Cover(3, ((1, 2), (2, 3)), ((1, 2, 3),))
    cov = ce.Cover.full(3)
    assert cov.pairs == ((1, 2), (1, 3), (2, 3))
    assert cov.triples == ((1, 2, 3),)


def test_reverse_orientation_is_inverse():
    x = gen.aut_member(random.Random(1), GL2, N)
    c = ce.Cochain1({(1, 2): x})
    assert c.get(2, 1) == mo.s_inverse(x)
    c2 = ce.Cochain1({(2, 1): mo.s_inverse(x)})
    assert c2.get(1, 2) == x
    with pytest.raises(InconsistentCochain):
        ce.Cochain1({(1, 2): x, (2, 1): x if x.B else AutElement(x.g, F("dz1^dz2"))})


# -- cocycles -----------------------------------------------------------------------

def test_trivial_cochain_is_cocycle():
    cov = ce.Cover.full(3)
    assert ce.is_cocycle(ce.Cochain1.trivial(cov, GL2, N), cov)


@given(seeds)
def test_coboundaries_are_cocycles(seed):
    rng = random.Random(seed)
    cov = ce.Cover.full(3)
    triv = ce.Cochain1.trivial(cov, GL2, N)
    c = ce.coboundary_act(rand_cochain0(rng, 3), triv, cov)
    assert ce.is_cocycle(c, cov)


def test_broken_constant_cocycle():
    cov = ce.Cover.full(3)
    g = const_gauge([[1, 1], [0, 1]])
    c = ce.Cochain1({p: AutElement(g, Form(N)) for p in cov.pairs})
    res = ce.cocycle_residual(c, cov)
    gres, Bres = res[(1, 2, 3)]
    assert gres and not Bres


@given(seeds)
def test_three_chart_cocycle(seed):
    rng = random.Random(seed)
    c, fam, cov = gen.three_chart_cocycle(rng, GL2, N)
    assert ce.is_cocycle(c, cov)
    assert not any(fam.compatibility_residual(c).values())
    c2, _, cov2 = gen.three_chart_cocycle(rng, GL2, N, shift_b13=True)
    gres, Bres = ce.cocycle_residual(c2, cov2)[(1, 2, 3)]
    assert not gres and Bres


# -- the coboundary action ----------------------------------------------------------

def test_trivial_h_acts_trivially():
    rng = random.Random(5)
    c, _, cov = gen.three_chart_cocycle(rng, GL2, N)
    one = ce.Cochain0({i: AutElement.identity(GL2, N) for i in range(1, 4)})
    assert not any(g or B for g, B in ce.cochain_difference(ce.coboundary_act(one, c, cov), c).values())


def test_constant_h_conjugates():
    cov = ce.Cover.full(2)
    h1 = const_gauge([[2, 0], [1, 1]])
    h2 = const_gauge([[1, 3], [0, 1]])
    g = GaugeMap.unipotent(GL2, N, 1, 2, P("z1*z2"))
    B = F("z1*dz1^dz2")
    c = ce.Cochain1({(1, 2): AutElement(g, B)})
    h = ce.Cochain0({1: AutElement(h1, Form(N)), 2: AutElement(h2, Form(N))})
    out = ce.coboundary_act(h, c, cov).get(1, 2)
    assert out.g == h1 @ g @ h2.inverse()
    assert out.B == B


@given(seeds)
def test_coboundary_action_composes(seed):
    rng = random.Random(seed)
    c, _, cov = gen.three_chart_cocycle(rng, GL2, N)
    h, h2 = rand_cochain0(rng, 3), rand_cochain0(rng, 3)
    lhs = ce.coboundary_act(ce.compose_cochain0(h, h2), c, cov)
    rhs = ce.coboundary_act(h, ce.coboundary_act(h2, c, cov), cov)
    assert zero_residuals(ce.cochain_difference(lhs, rhs))
    assert ce.is_cocycle(lhs, cov)


# -- d_ijk and the assembled H ---------------------------------------------------------

@given(seeds, st.booleans())
def test_dijk_is_a_coboundary(seed, shift):
    rng = random.Random(seed)
    c, fam, cov = gen.three_chart_cocycle(rng, GL2, N, shift_b13=shift)
    f = lambda i, j: ce.dijk_potential(c, fam, i, j)
    d123 = ce.dijk(c, 1, 2, 3)
    assert d123 == ce.cech_delta(f, 1, 2, 3)
    assert bool(d123) == shift
    assert not fm.ext_d(d123)


@given(seeds)
def test_d_of_potential_is_cs_coboundary(seed):
    rng = random.Random(seed)
    c, fam, cov = gen.three_chart_cocycle(rng, GL2, N, shift_b13=True)
    theta0 = Connection.trivial(GL2, N)

    def T(i):
        th = fam[i]
        return lb.chern_simons(th) - lb.chern_simons(theta0) - fm.ext_d(lb.pairing_c(th.form, theta0.form))

    for i, j in cov.pairs:
        assert fm.ext_d(ce.dijk_potential(c, fam, i, j)) == T(j) - T(i)


def test_assemble_single_chart():
    cov = ce.Cover(1, ())
    c = ce.Cochain1({})
    fam = ce.ConnectionFamily({1: Connection.trivial(GL2, N)})
    rep = ce.assemble_H(c, fam, {1: Form(N)}, cov)
    assert rep.ok and not rep.H[1]
    C1 = F("z1*zb2*dz1^dz2")
    rep = ce.assemble_H(c, fam, {1: C1}, cov)
    assert rep.ok and rep.H[1] == fm.ext_d(C1)


@given(seeds)
def test_assemble_two_chart_fixture(seed):
    rng = random.Random(seed)
    c, fam, C, cov = gen.two_chart_fixture(rng, GL2, N)
    rep = ce.assemble_H(c, fam, C, cov)
    assert rep.ok
    assert rep.H[1] == rep.H[2]
    F2 = lb.curvature(fam[2])
    assert fm.ext_d(rep.H[2]) + lb.pairing_c(F2, F2) == Form(N)


def test_assemble_rejects_incompatible_family():
    c, fam, C, cov = gen.two_chart_fixture(random.Random(2), GL2, N)
    bad = ce.ConnectionFamily({1: fam[2], 2: fam[2] + LieForm.elementary(GL2, N, 1, 1, F("dz1"))})
    with pytest.raises(IncompatibleFamily):
        ce.assemble_H(c, bad, C, cov)


def test_assemble_detects_wrong_potential():
    c, fam, C, cov = gen.two_chart_fixture(random.Random(3), GL2, N)
    rep = ce.assemble_H(c, fam, {1: C[1], 2: C[2] + F("zb1*dz1^dz2")}, cov)
    assert not rep.ok


@given(seeds)
def test_transport_keeps_h(seed):
    rng = random.Random(seed)
    c, fam, C, cov = gen.two_chart_fixture(rng, GL2, N)
    h = rand_cochain0(rng, 2)
    ct, famt, Ct = ce.transport(h, c, fam, C, cov)
    rep = ce.assemble_H(ct, famt, Ct, cov)
    assert rep.ok


def test_transport_with_flipped_sign_breaks_gluing():
    rng = random.Random(9)
    c, fam, C, cov = gen.two_chart_fixture(rng, GL2, N)
    for _ in range(20):
        h = rand_cochain0(rng, 2)
        ct, famt, Ct = ce.transport(h, c, fam, C, cov, c_sign=1)
        if not ce.assemble_H(ct, famt, Ct, cov).ok:
            return
    pytest.fail("c_sign = +1 never broke the overlap equation")


# -- Pontryagin form ----------------------------------------------------------------

def test_pontryagin_examples():
    assert not ce.pontryagin_rep(Connection.trivial(GL2, N))
    nil = Connection(LieForm.elementary(GL2, N, 1, 2, F("zb1*z2*dz1 + zb2*dz2")))
    assert not ce.pontryagin_rep(nil)
    th = Connection(LieForm.elementary(GL2, N, 1, 2, F("zb1*dz1")) + LieForm.elementary(GL2, N, 2, 1, F("zb2*dz2")))
    p = ce.pontryagin_rep(th)
    assert p and p.bidegrees() == {(2, 2)}
    assert not fm.ext_d(p)


@given(seeds)
def test_connection_change(seed):
    rng = random.Random(seed)
    th, th2 = gen.rand_connection(rng, GL2, N, deg=1), gen.rand_connection(rng, GL2, N, deg=1)
    assert not ce.connection_change_potential(th, th)
    pot = ce.connection_change_potential(th, th2)
    assert ce.pontryagin_rep(th2) - ce.pontryagin_rep(th) == fm.ext_d(pot)


def test_connection_change_abelian():
    lie = LieAlgebraSpec(1)
    th = Connection(LieForm(lie, N, [[F("zb1*z2*dz1")]]))
    th2 = Connection(LieForm(lie, N, [[F("zb1*z2*dz1 + z1*zb2*dz2")]]))
    a = th2 - th
    expected = lb.pairing_c(a, lb.curvature(th)) * 2 + lb.pairing_c(a, lb.lie_ext_d(a))
    assert ce.connection_change_potential(th, th2) == expected
