"""Random generators for polynomial forms, gauge maps and string data.

Every generator takes a ``random.Random`` so results are reproducible from a
seed. Coefficients are small integers, which keeps expression swell low.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import List

from . import cech as ce
from . import forms as fm
from . import lie as lb
from .dgla import GaugeElement, LElement, TangentPair
from .forms import Form, VectorField10
from .lie import Connection, GaugeMap, LieAlgebraSpec, LieForm
from .morphisms import AutElement, s_product
from .poly import BITS, GaussQ, Poly, z_slot, zb_slot


def rand_coeff(rng: random.Random, complex_: bool = False) -> GaussQ:
    re = rng.choice([-3, -2, -1, 1, 1, 2, 3])
    im = rng.choice([0, 0, -1, 1, 2]) if complex_ else 0
    return GaussQ(re, im)


def rand_poly(
    rng: random.Random,
    n: int,
    deg: int = 2,
    nterms: int = 2,
    holomorphic: bool = False,
    complex_: bool = False,
    min_deg: int = 0,
) -> Poly:
    slots = [z_slot(k) for k in range(1, n + 1)]
    if not holomorphic:
        slots += [zb_slot(k) for k in range(1, n + 1)]
    out = Poly()
    for _ in range(nterms):
        d = rng.randint(min_deg, deg)
        e = 0
        for _ in range(d):
            e += 1 << (rng.choice(slots) * BITS)
        out = out + Poly.monomial(e, rand_coeff(rng, complex_))
    return out


def basis_keys(n: int, p: int, q: int):
    return [(I, J) for I in combinations(range(1, n + 1), p) for J in combinations(range(1, n + 1), q)]


def rand_form(
    rng: random.Random,
    n: int,
    p: int,
    q: int,
    deg: int = 2,
    nterms: int = 2,
    holomorphic: bool = False,
    density: float = 0.7,
    complex_: bool = False,
) -> Form:
    keys = basis_keys(n, p, q)
    terms = {}
    for key in keys:
        if rng.random() < density:
            terms[key] = rand_poly(rng, n, deg, nterms, holomorphic, complex_)
    return Form(n, terms)


def rand_vector(rng: random.Random, n: int, deg: int = 2, nterms: int = 2, holomorphic: bool = False) -> VectorField10:
    return VectorField10(n, [rand_poly(rng, n, deg, nterms, holomorphic) for _ in range(n)])


def rand_lieform(
    rng: random.Random,
    lie: LieAlgebraSpec,
    n: int,
    p: int,
    q: int,
    deg: int = 2,
    nterms: int = 1,
    holomorphic: bool = False,
    density: float = 0.6,
) -> LieForm:
    k = lie.size
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if lie.allowed(i, j) and rng.random() < density:
                row.append(rand_form(rng, n, p, q, deg, nterms, holomorphic, density=0.8))
            else:
                row.append(Form(n))
        rows.append(row)
    return LieForm(lie, n, rows)


def off_diagonal_pairs(lie: LieAlgebraSpec) -> List[tuple]:
    k = lie.size
    return [(i + 1, j + 1) for i in range(k) for j in range(k) if i != j and lie.allowed(i, j)]


def rand_gauge(
    rng: random.Random,
    lie: LieAlgebraSpec,
    n: int,
    deg: int = 2,
    factors: int = 2,
    holomorphic: bool = True,
    nterms: int = 1,
    constant_diag: bool = True,
) -> GaugeMap:
    """A product of elementary unipotents, optionally times a constant diagonal."""
    g = GaugeMap.identity(lie, n)
    pairs = off_diagonal_pairs(lie)
    if pairs:
        for _ in range(factors):
            i, j = rng.choice(pairs)
            p = rand_poly(rng, n, deg, nterms, holomorphic=holomorphic, min_deg=1)
            g = g @ GaugeMap.unipotent(lie, n, i, j, p, holomorphic=holomorphic)
    if constant_diag and rng.random() < 0.5:
        vals = [rng.choice([1, 2, -1, GaussQ(1, 1)]) for _ in range(lie.size)]
        inv = [GaussQ(1) / GaussQ.coerce(v) for v in vals]
        k = lie.size
        d = GaugeMap(
            lie,
            n,
            [[vals[i] if i == j else 0 for j in range(k)] for i in range(k)],
            [[inv[i] if i == j else 0 for j in range(k)] for i in range(k)],
            holomorphic=True,
        )
        g = d @ g if rng.random() < 0.5 else g @ d
    if not holomorphic:
        return GaugeMap(lie, n, g.g, g.g_inv, holomorphic=False)
    return g


def rand_connection(
    rng: random.Random,
    lie: LieAlgebraSpec,
    n: int,
    deg: int = 2,
    integrable: bool = True,
    with_01: bool = True,
) -> Connection:
    """Random connection; integrable ones are gauge transforms of (1,0) ones."""
    t10 = rand_lieform(rng, lie, n, 1, 0, deg)
    if not integrable:
        return Connection(t10, rand_lieform(rng, lie, n, 0, 1, deg))
    theta = Connection(t10)
    if with_01:
        h = rand_gauge(rng, lie, n, deg=1, factors=1, holomorphic=False)
        theta = lb.act(h, theta)
    return theta


def rand_flat20_connection(rng: random.Random, lie: LieAlgebraSpec, n: int, deg: int = 1, with_01: bool = True) -> Connection:
    """Connection with F^{2,0} = F^{0,2} = 0: u^{-1} del u for smooth u, then gauged."""
    u = rand_gauge(rng, lie, n, deg=deg, factors=2, holomorphic=False, constant_diag=False)
    u_inv = u.inverse_matrix()
    # add an abelian (1,0) piece d(f) * identity-ish diagonal to get nonzero trace curvature
    t10 = lb.matwedge(u_inv, lb.lie_del(u.matrix()))
    diag = rand_poly(rng, n, deg + 1, 2)
    t10 = t10 + LieForm.identity(lie, n).map(lambda f: fm.wedge(f, fm.del_(Form.scalar(n, diag))))
    theta = Connection(t10)
    if with_01:
        h = rand_gauge(rng, lie, n, deg=1, factors=1, holomorphic=False)
        theta = lb.act(h, theta)
    return theta


def rand_leq_form(rng: random.Random, n: int, k: int, deg: int = 2, nterms: int = 1, density: float = 0.6) -> Form:
    """Random element of Omega^{<=k}: total degree k+2, holomorphic degree >= 2."""
    out = Form(n)
    for j in range(k + 1):
        p, q = j + 2, k - j
        if p <= n and q <= n:
            out = out + rand_form(rng, n, p, q, deg, nterms, density=density)
    return out


def rand_gauged_pair(rng: random.Random, lie: LieAlgebraSpec, n: int, deg: int = 1, gauged: bool = True):
    """A connection theta = h . theta~ (theta~ of type (1,0)) and the smooth map h,
    so that h g h^{-1} is a holomorphic automorphism of (P, theta) for holomorphic g."""
    base = Connection(rand_lieform(rng, lie, n, 1, 0, deg))
    if not gauged:
        return base, GaugeMap.identity(lie, n)
    h = rand_gauge(rng, lie, n, deg=1, factors=1, holomorphic=False, constant_diag=False)
    return lb.act(h, base), h


def conjugate_map(h: GaugeMap, g: GaugeMap) -> GaugeMap:
    """h g h^{-1} as a gauge map (not flagged holomorphic)."""
    m = h @ g @ h.inverse()
    return GaugeMap(m.lie, m.n, m.g, m.g_inv, holomorphic=False)


# -- group elements and fixtures ------------------------------------------------

def aut_member(rng: random.Random, lie: LieAlgebraSpec, n: int, deg: int = 1) -> AutElement:
    """A random element of S for the trivial connection: holomorphic g and
    B = del-homotopy of the (3,0) right side plus a closed (2,0) form."""
    g = rand_gauge(rng, lie, n, deg=max(deg, 1), factors=2)
    a = lb.a_of(g, Connection.trivial(lie, n))
    rhs = lb.pairing_c(a, lb.graded_bracket(a, a)) * (GaussQ(-1) / 6)
    B = fm.del_homotopy(rhs) + fm.del_(rand_form(rng, n, 1, 0, deg + 1, 2, holomorphic=True))
    return AutElement(g, B.component(2, 0))


def gauge_element(rng: random.Random, lie: LieAlgebraSpec, n: int, deg: int = 1) -> GaugeElement:
    g = rand_gauge(rng, lie, n, deg=1, factors=1, holomorphic=False, constant_diag=False)
    return GaugeElement(g, rand_lieform(rng, lie, n, 1, 0, deg), rand_form(rng, n, 2, 0, deg, 1))


def l_element(rng: random.Random, lie: LieAlgebraSpec, n: int, k: int, deg: int = 1) -> LElement:
    alpha = rand_lieform(rng, lie, n, 0, k, deg) if k <= n else LieForm.zero(lie, n)
    return LElement(k, alpha, rand_leq_form(rng, n, k, deg))


def two_chart_fixture(rng: random.Random, lie: LieAlgebraSpec, n: int, deg: int = 1):
    """Hand-solved gluing data on two charts.

    g12 is a holomorphic unipotent with a member B12 of S, theta_1 = g12 . theta_2,
    C_1 = 0 and C_2 = B12 - c(a_1 ^ a_21) solves the overlap equation.
    Returns (cochain, family, C, cover).
    """
    pairs = off_diagonal_pairs(lie)
    if pairs:
        i, j = rng.choice(pairs)
        g = GaugeMap.unipotent(lie, n, i, j, rand_poly(rng, n, deg + 1, 2, holomorphic=True, min_deg=1))
    else:
        g = GaugeMap.identity(lie, n)
    a = lb.a_of(g, Connection.trivial(lie, n))
    rhs = lb.pairing_c(a, lb.graded_bracket(a, a)) * (GaussQ(-1) / 6)
    B = (fm.del_homotopy(rhs) + fm.del_(rand_form(rng, n, 1, 0, deg + 1, 2, holomorphic=True))).component(2, 0)
    cov = ce.Cover(2, ((1, 2),))
    c = ce.Cochain1({(1, 2): AutElement(g, B)})
    th2 = Connection(rand_lieform(rng, lie, n, 1, 0, deg))
    fam = ce.ConnectionFamily({1: lb.act(g, th2), 2: th2})
    C = {1: Form(n), 2: ce.dijk_potential(c, fam, 1, 2)}
    return c, fam, C, cov


def three_chart_cocycle(rng: random.Random, lie: LieAlgebraSpec, n: int, deg: int = 1, shift_b13: bool = False):
    """A cocycle on the full 3-chart cover with a compatible connection family.

    g13, g23 are random; g12 = g13 g23^{-1} and B13 comes from the product rule.
    With ``shift_b13`` a closed (2,0)-form is added to B13, so the g-part still
    closes but the B-part (and d_123) is nonzero. Returns (cochain, family, cover).
    """
    g13 = rand_gauge(rng, lie, n, deg, 2)
    g23 = rand_gauge(rng, lie, n, deg, 2)
    x12 = _member_for(rng, lie, n, g13 @ g23.inverse(), deg)
    x23 = _member_for(rng, lie, n, g23, deg)
    x13 = s_product(x12, x23)
    if shift_b13:
        if n < 2:
            raise ValueError("shifting B13 needs a nonzero (2,0)-form, so n >= 2")
        shift = Form(n)
        while not shift:
            shift = fm.del_(rand_form(rng, n, 1, 0, deg + 1, 2, holomorphic=True, density=1.0))
        x13 = AutElement(x13.g, x13.B + shift)
    cov = ce.Cover.full(3)
    c = ce.Cochain1({(1, 2): x12, (2, 3): x23, (1, 3): x13})
    th3 = Connection(rand_lieform(rng, lie, n, 1, 0, deg))
    fam = ce.ConnectionFamily({1: lb.act(g13, th3), 2: lb.act(g23, th3), 3: th3})
    return c, fam, cov


def _member_for(rng, lie, n, g: GaugeMap, deg: int = 1) -> AutElement:
    a = lb.a_of(g, Connection.trivial(lie, n))
    rhs = lb.pairing_c(a, lb.graded_bracket(a, a)) * (GaussQ(-1) / 6)
    B = fm.del_homotopy(rhs) + fm.del_(rand_form(rng, n, 1, 0, deg + 1, 2, holomorphic=True))
    return AutElement(g, B.component(2, 0))


def integrable_tangent(rng: random.Random, base, deg: int = 1) -> TangentPair:
    """thetadot = t10 + dbar^theta beta, Hdot = -2c(t10 ^ F) + 2 del c(beta F) + d gamma.

    Needs F of type (1,1); then dbar^theta thetadot^{0,1} = 0 and
    Hdot + 2c(thetadot ^ F) = d(2c(beta F) + gamma) is closed.
    """
    lie, n = base.lie, base.n
    beta = rand_lieform(rng, lie, n, 0, 0, deg)
    t10 = rand_lieform(rng, lie, n, 1, 0, deg)
    gamma = rand_form(rng, n, 2, 0, deg, 1)
    F = base.F
    thetadot = t10 + lb.delbar_theta(base.theta, beta)
    Hdot = lb.pairing_c(t10, F) * -2 + fm.del_(lb.pairing_c(beta, F)) * 2 + fm.ext_d(gamma)
    return TangentPair(Hdot, thetadot)
