"""Cech data for the sheaf S on a finite combinatorial cover.

Every chart shares the same coordinates; only the bundle data changes from
chart to chart. The reference connection theta0 is the trivial flat one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from . import forms as fm
from . import lie as lb
from .errors import IncompatibleFamily, InconsistentCochain, NonIntegrableConnection
from .forms import Form
from .lie import Connection, GaugeMap, LieAlgebraSpec, LieForm
from .morphisms import AutElement, s_inverse, s_product

Pair = Tuple[int, int]
Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class Cover:
    m: int
    pairs: Tuple[Pair, ...]
    triples: Tuple[Triple, ...] = ()

    def __post_init__(self):
        ps = set()
        for i, j in self.pairs:
            if not (1 <= i < j <= self.m):
                raise ValueError(f"pair {(i, j)} must satisfy 1 <= i < j <= {self.m}")
            ps.add((i, j))
        for i, j, k in self.triples:
            if not (1 <= i < j < k <= self.m):
                raise ValueError(f"triple {(i, j, k)} must be increasing in 1..{self.m}")
            for p in ((i, j), (j, k), (i, k)):
                if p not in ps:
                    raise ValueError(f"triple {(i, j, k)} needs the overlap {p}")
        object.__setattr__(self, "pairs", tuple(sorted(ps)))
        object.__setattr__(self, "triples", tuple(sorted(set(map(tuple, self.triples)))))

    @classmethod
    def full(cls, m: int) -> "Cover":
        pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
        triples = [(i, j, k) for i in range(1, m + 1) for j in range(i + 1, m + 1) for k in range(j + 1, m + 1)]
        return cls(m, tuple(pairs), tuple(triples))


class Cochain1:
    """Transition data (g_ij, B_ij) on overlaps, stored for i < j.

    The reversed orientation is the group inverse in S. If both orientations
    are supplied they must agree with that rule.
    """

    def __init__(self, data: Mapping[Pair, AutElement], theta0: Optional[Connection] = None):
        stored: Dict[Pair, AutElement] = {}
        for (i, j), x in data.items():
            if i == j:
                raise ValueError("overlap needs two distinct indices")
            if i < j:
                stored[(i, j)] = x
        for (i, j), x in data.items():
            if i > j:
                inv = s_inverse(x, theta0)
                if (j, i) in stored:
                    if stored[(j, i)] != inv:
                        raise InconsistentCochain(f"data on ({i},{j}) is not the inverse of data on ({j},{i})")
                else:
                    stored[(j, i)] = inv
        self.data = stored
        self.theta0 = theta0

    def get(self, i: int, j: int) -> AutElement:
        if i < j:
            return self.data[(i, j)]
        return s_inverse(self.data[(j, i)], self.theta0)

    def g(self, i: int, j: int) -> GaugeMap:
        return self.data[(i, j)].g if i < j else self.data[(j, i)].g.inverse()

    def pairs(self):
        return sorted(self.data)

    @classmethod
    def trivial(cls, cov: Cover, lie: LieAlgebraSpec, n: int) -> "Cochain1":
        return cls({p: AutElement.identity(lie, n) for p in cov.pairs})


class Cochain0:
    def __init__(self, data: Mapping[int, AutElement]):
        self.data = dict(data)

    def __getitem__(self, i: int) -> AutElement:
        return self.data[i]


class ConnectionFamily:
    def __init__(self, data: Mapping[int, Connection]):
        self.data = dict(data)

    def __getitem__(self, i: int) -> Connection:
        return self.data[i]

    def compatibility_residual(self, c: Cochain1) -> Dict[Pair, LieForm]:
        """g_ij . theta_j - theta_i per overlap."""
        out = {}
        for i, j in c.pairs():
            out[(i, j)] = lb.act(c.g(i, j), self.data[j]) - self.data[i]
        return out


def cocycle_residual(c: Cochain1, cov: Cover) -> Dict[Triple, Tuple[LieForm, Form]]:
    """(g_ij g_jk - g_ik, B-part of the product minus B_ik) per triple."""
    out = {}
    for i, j, k in cov.triples:
        prod = s_product(c.get(i, j), c.get(j, k), c.theta0)
        target = c.get(i, k)
        out[(i, j, k)] = (prod.g.minus(target.g), prod.B - target.B)
    return out


def is_cocycle(c: Cochain1, cov: Cover) -> bool:
    return all(not g and not B for g, B in cocycle_residual(c, cov).values())


def coboundary_act(h: Cochain0, c: Cochain1, cov: Cover) -> Cochain1:
    """(h_i, B_i)(g_ij, B_ij)(h_j, B_j)^{-1} on every overlap."""
    th = c.theta0
    out = {}
    for i, j in cov.pairs:
        x = s_product(s_product(h[i], c.get(i, j), th), s_inverse(h[j], th), th)
        out[(i, j)] = x
    return Cochain1(out, th)


def compose_cochain0(h: Cochain0, h2: Cochain0, theta0: Optional[Connection] = None) -> Cochain0:
    """Pointwise product h h2, so that (h h2) . c = h . (h2 . c)."""
    return Cochain0({i: s_product(h[i], h2[i], theta0) for i in h.data})


def cochain_difference(c: Cochain1, c2: Cochain1) -> Dict[Pair, Tuple[LieForm, Form]]:
    out = {}
    for p in sorted(set(c.data) | set(c2.data)):
        x, y = c.data[p], c2.data[p]
        out[p] = (x.g.minus(y.g), x.B - y.B)
    return out


def local_a(c: Cochain1, i: int, j: int) -> LieForm:
    """a_ij = a^{g_ij} relative to theta0."""
    g = c.g(i, j)
    theta0 = c.theta0 or Connection.trivial(g.lie, g.n)
    return lb.a_of(g, theta0)


def dijk(c: Cochain1, i: int, j: int, k: int) -> Form:
    """B_ij + B_jk + B_ki + c(g_kj a_ij g_kj^{-1} ^ a_jk)."""
    gkj = c.g(k, j)
    return (
        c.get(i, j).B
        + c.get(j, k).B
        + c.get(k, i).B
        + lb.pairing_c(lb.conjugate(gkj, local_a(c, i, j)), local_a(c, j, k))
    )


def dijk_potential(c: Cochain1, fam: ConnectionFamily, i: int, j: int) -> Form:
    """f_ij = B_ij - c(a_i ^ a_ji), with a_i = theta_i - theta0."""
    theta0 = c.theta0 or Connection.trivial(fam[i].lie, fam[i].n)
    a_i = fam[i] - theta0
    return c.get(i, j).B - lb.pairing_c(a_i, local_a(c, j, i))


def cech_delta(f, i: int, j: int, k: int) -> Form:
    """(delta f)_ijk = f_jk - f_ik + f_ij for a callable f(i, j)."""
    return f(j, k) - f(i, k) + f(i, j)


@dataclass
class AssembleReport:
    H: Dict[int, Form]
    overlap_residual: Dict[Pair, Form]
    globality_residual: Dict[Pair, Form]
    integrability_residual: Dict[int, Form]
    compatibility_residual: Dict[Pair, LieForm] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        groups = (self.overlap_residual, self.globality_residual, self.integrability_residual)
        return all(not v for g in groups for v in g.values())


def assemble_H(c: Cochain1, fam: ConnectionFamily, C: Mapping[int, Form], cov: Cover) -> AssembleReport:
    """Build H_i = dC_i - CS(theta_i) + CS(theta0) + d c(theta_i ^ theta0) and check it glues."""
    compat = fam.compatibility_residual(c)
    bad = [p for p, v in compat.items() if v]
    if bad:
        raise IncompatibleFamily(f"g_ij . theta_j != theta_i on overlaps {bad}")
    any_theta = next(iter(fam.data.values()))
    theta0 = c.theta0 or Connection.trivial(any_theta.lie, any_theta.n)
    H = {}
    integ = {}
    for i in range(1, cov.m + 1):
        th = fam[i]
        F = lb.curvature(th)
        if F.part(0, 2):
            raise NonIntegrableConnection(f"theta_{i} has F^(0,2) != 0")
        Hi = (
            fm.ext_d(C[i])
            - lb.chern_simons(th)
            + lb.chern_simons(theta0)
            + fm.ext_d(lb.pairing_c(th.form, theta0.form))
        )
        H[i] = Hi
        integ[i] = fm.ext_d(Hi) + lb.pairing_c(F, F)
    overlap = {}
    glob = {}
    for i, j in cov.pairs:
        overlap[(i, j)] = dijk_potential(c, fam, i, j) - (C[j] - C[i])
        glob[(i, j)] = H[i] - H[j]
    return AssembleReport(H, overlap, glob, integ, compat)


def pontryagin_rep(theta: Connection) -> Form:
    """c(F ^ F), a closed 4-form in Omega^{<=2} when F^{0,2} = 0."""
    F = lb.require_integrable(theta)
    return lb.pairing_c(F, F)


def connection_change_potential(theta: Connection, theta2: Connection) -> Form:
    """cs_difference(theta, theta' - theta); its d is the change of c(F ^ F)."""
    return lb.cs_difference(theta, theta2 - theta)


def transport(h: Cochain0, c: Cochain1, fam: ConnectionFamily, C: Mapping[int, Form], cov: Cover, c_sign: int = -1):
    """Push (c, theta_i, C_i) along a 0-cochain h.

    Returns (h . c, {h_i . theta_i}, {C_i - B_i + c_sign * c(a_i ^ a^{h_i})}).
    With the default ``c_sign = -1`` the new C solves the overlap equation for
    h . c and re-assembly returns the same H_i; ``c_sign = +1`` changes every
    H_i by d(2 c(a_i ^ a^{h_i})) and breaks the overlap equation.
    """
    ct = coboundary_act(h, c, cov)
    famt = ConnectionFamily({i: lb.act(h[i].g, fam[i]) for i in fam.data})
    Ct = {}
    for i in fam.data:
        theta0 = c.theta0 or Connection.trivial(fam[i].lie, fam[i].n)
        a_i = fam[i] - theta0
        a_h = lb.a_of(h[i].g, theta0)
        Ct[i] = C[i] - h[i].B + lb.pairing_c(a_i, a_h) * c_sign
    return ct, famt, Ct
