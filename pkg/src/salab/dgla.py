"""The deformation complex L^k = Omega^{0,k}(ad P) x Omega^{<=k}.

Elements are pairs (alpha, b). The base data must have curvature of pure
type (1,1). The gauge group G = {(g, a, B)} acts on pairs (H, theta) and the
maps hat_epsilon and phi compare its infinitesimal action with d_Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import forms as fm
from . import lie as lb
from .algebroid import StringData
from .errors import BadCurvatureType, MCViolated, NotACocycle, NonIntegrableConnection
from .forms import Form
from .lie import GaugeMap, LieForm
from .poly import GaussQ, Poly

HALF = GaussQ(1) / 2


@dataclass(frozen=True)
class LElement:
    degree: int
    alpha: LieForm
    b: Form

    def __post_init__(self):
        k = self.degree
        if k < 0:
            raise ValueError("degree must be non-negative")
        if self.alpha.bidegrees() - {(0, k)}:
            raise ValueError(f"alpha must be a (0,{k})-form, got {sorted(self.alpha.bidegrees())}")
        fm.check_leq(self.b, k)

    @classmethod
    def zero(cls, base: StringData, k: int) -> "LElement":
        return cls(k, LieForm.zero(base.lie, base.n), Form(base.n))

    def is_zero(self) -> bool:
        return not self.alpha and not self.b

    def __bool__(self):
        return not self.is_zero()

    def _same(self, o: "LElement"):
        if o.degree != self.degree:
            raise ValueError(f"degrees differ: {self.degree} vs {o.degree}")

    def __add__(self, o: "LElement") -> "LElement":
        self._same(o)
        return LElement(self.degree, self.alpha + o.alpha, self.b + o.b)

    def __sub__(self, o: "LElement") -> "LElement":
        self._same(o)
        return LElement(self.degree, self.alpha - o.alpha, self.b - o.b)

    def __neg__(self) -> "LElement":
        return LElement(self.degree, -self.alpha, -self.b)

    def __mul__(self, c) -> "LElement":
        return LElement(self.degree, self.alpha * c, self.b * c)

    __rmul__ = __mul__


def _checked_curvature(base: StringData) -> LieForm:
    F = base.F
    if F.part(0, 2):
        raise BadCurvatureType("F^{0,2} is nonzero")
    if F.part(2, 0):
        raise BadCurvatureType("F^{2,0} is nonzero; the deformation complex needs F of type (1,1)")
    return F


def d_Q(base: StringData, x: LElement) -> LElement:
    """(dbar^theta alpha, db - 2c(del^theta alpha ^ F))."""
    F = _checked_curvature(base)
    th = base.theta
    alpha = lb.delbar_theta(th, x.alpha)
    b = fm.ext_d(x.b) - lb.pairing_c(lb.del_theta(th, x.alpha), F) * 2
    return LElement(x.degree + 1, alpha, b)


def dgla_bracket(base: StringData, x: LElement, y: LElement) -> LElement:
    """([alpha, alpha'], (-1)^k 2c(del^theta alpha ^ del^theta alpha'))."""
    _checked_curvature(base)
    th = base.theta
    alpha = lb.graded_bracket(x.alpha, y.alpha)
    sign = -2 if x.degree & 1 else 2
    b = lb.pairing_c(lb.del_theta(th, x.alpha), lb.del_theta(th, y.alpha)) * sign
    return LElement(x.degree + y.degree, alpha, b)


def mc_residual(base: StringData, x: LElement) -> LElement:
    """d_Q x + 1/2 [x, x] for a degree-1 element."""
    if x.degree != 1:
        raise ValueError("Maurer-Cartan elements have degree 1")
    return d_Q(base, x) + dgla_bracket(base, x, x) * HALF


def hat_epsilon(base: StringData, x: LElement) -> StringData:
    """(theta + alpha, H - b)."""
    if x.degree != 1:
        raise ValueError("hat_epsilon takes a degree-1 element")
    return StringData.from_H(base.theta + x.alpha, base.H - x.b)


def deformed_data(base: StringData, x: LElement, check: bool = True) -> StringData:
    """The data (theta + alpha, H - b) of a Maurer-Cartan element."""
    if check and mc_residual(base, x):
        raise MCViolated("Maurer-Cartan residual is nonzero")
    return hat_epsilon(base, x)


def curvature_shift_residual(base: StringData, x: LElement) -> LieForm:
    """F_{theta+alpha} - F - del^theta alpha (zero when dbar^theta alpha + 1/2[alpha, alpha] = 0)."""
    new = base.theta + x.alpha
    return lb.curvature(new) - base.F - lb.del_theta(base.theta, x.alpha)


def obstruction_rep(base: StringData, alpha: LieForm) -> Form:
    """2c(del^theta alpha ^ F) for a dbar^theta-closed (0,1)-form alpha."""
    F = base.F
    if F.part(0, 2):
        raise NonIntegrableConnection("F^{0,2} is nonzero")
    if alpha.bidegrees() - {(0, 1)}:
        raise ValueError("alpha must be a (0,1)-form")
    if lb.delbar_theta(base.theta, alpha):
        raise NotACocycle("dbar^theta alpha is nonzero")
    return lb.pairing_c(lb.del_theta(base.theta, alpha), F) * 2


# -- the gauge group -------------------------------------------------------------

@dataclass(frozen=True)
class GaugeElement:
    g: GaugeMap
    a: LieForm
    B: Form

    def __post_init__(self):
        if self.a.bidegrees() - {(1, 0)}:
            raise ValueError("a must be of type (1,0)")
        if self.B.bidegrees() - {(2, 0)}:
            raise ValueError("B must be of type (2,0)")

    @classmethod
    def identity(cls, lie, n: int) -> "GaugeElement":
        return cls(GaugeMap.identity(lie, n), LieForm.zero(lie, n), Form(n))

    def __eq__(self, other):
        if not isinstance(other, GaugeElement):
            return NotImplemented
        return self.g == other.g and self.a == other.a and self.B == other.B

    __hash__ = None


def gauge_product(x: GaugeElement, y: GaugeElement) -> GaugeElement:
    """(gg', B + B' + c((g'^{-1} a g') ^ a'), g'^{-1} a g' + a')."""
    a_moved = lb.conjugate_inv(y.g, x.a)
    return GaugeElement(x.g @ y.g, a_moved + y.a, x.B + y.B + lb.pairing_c(a_moved, y.a))


def gauge_inverse(x: GaugeElement) -> GaugeElement:
    """Solve x y = 1: y = (g^{-1}, -g a g^{-1}, -B)."""
    a_inv = -lb.conjugate(x.g, x.a)
    # the correction c(a' ^ a'') is c(X ^ -X) = 0 for the 1-form X = g a g^{-1}
    return GaugeElement(x.g.inverse(), a_inv, -x.B)


def gauge_act(x: GaugeElement, p: StringData) -> StringData:
    """(H + dB + CS(theta) - CS(theta + a) - d c(theta ^ a), g (theta + a))."""
    th = p.theta
    moved = th + x.a
    H = p.H + fm.ext_d(x.B) + lb.chern_simons(th) - lb.chern_simons(moved) - fm.ext_d(lb.pairing_c(th.form, x.a))
    return StringData.from_H(lb.act(x.g, moved), H)


def iso_certificate(x: GaugeElement) -> Tuple[GaugeMap, Form]:
    """(g, -B): the certificate accepted by ``morphisms.iso_residual(p, x . p, g, -B)``."""
    return x.g, -x.B


def mc_witness(base: StringData, x: GaugeElement) -> Tuple[LElement, GaugeElement]:
    """A Maurer-Cartan element from the gauge orbit of ``base``.

    Moves base by x, then by (1, theta^{1,0} - theta'^{1,0}, 0) so only the
    (0,1) part of the connection differs. Returns the element and the total
    gauge element z with hat_epsilon(base, w) = z . base.
    """
    moved = gauge_act(x, base)
    fix = GaugeElement(GaugeMap.identity(base.lie, base.n), (base.theta - moved.theta).part(1, 0), Form(base.n))
    final = gauge_act(fix, moved)
    w = LElement(1, final.theta - base.theta, base.H - final.H)
    return w, gauge_product(fix, x)


def string_data_residual(p: StringData, q: StringData) -> Tuple[Form, LieForm]:
    return p.H - q.H, p.theta - q.theta


@dataclass(frozen=True)
class TangentPair:
    Hdot: Form
    thetadot: LieForm

    def __post_init__(self):
        fm.check_leq(self.Hdot, 1)
        if self.thetadot.bidegrees() - {(1, 0), (0, 1)}:
            raise ValueError("thetadot must be a 1-form")

    def is_zero(self) -> bool:
        return not self.Hdot and not self.thetadot

    def __bool__(self):
        return not self.is_zero()

    def __sub__(self, o: "TangentPair") -> "TangentPair":
        return TangentPair(self.Hdot - o.Hdot, self.thetadot - o.thetadot)


def infinitesimal_action(base: StringData, alpha: LieForm, a: LieForm, b: Form) -> TangentPair:
    """L(alpha, a, b) = (db - 2c(a ^ F), -d^theta alpha + a)."""
    F = base.F
    return TangentPair(fm.ext_d(b) - lb.pairing_c(a, F) * 2, -lb.cov_d(base.theta, alpha) + a)


def dual_path(base: StringData, alpha: LieForm, a: LieForm, b: Form) -> GaugeElement:
    """x(t) = (1 + t alpha, t a, t b) over the dual numbers (t^2 = 0)."""
    lie, n = base.lie, base.n
    t = Poly.t()
    one = LieForm.identity(lie, n)
    ta = alpha.map(lambda f: f * t)
    g = one + ta
    g_inv = one - ta
    to_poly = lambda m: [[f.scalar_part() for f in row] for row in m.rows]
    gm = GaugeMap(lie, n, to_poly(g), to_poly(g_inv), dual=True)
    return GaugeElement(gm, a * t, b * t)


def dual_action_residual(base: StringData, alpha: LieForm, a: LieForm, b: Form) -> Tuple[TangentPair, Tuple[Form, LieForm]]:
    """Compare d/dt of x(t) . base at t = 0 with L(alpha, a, b).

    Returns (first-order residual, zeroth-order residual); both vanish exactly.
    """
    moved = gauge_act(dual_path(base, alpha, a, b), base)
    H = moved.H.truncate_t()
    th = moved.theta.form.truncate_t()
    first = TangentPair(H.t_coeff(1), th.t_coeff(1))
    zeroth = (H.t_coeff(0) - base.H, th.t_coeff(0) - base.theta.form)
    return first - infinitesimal_action(base, alpha, a, b), zeroth


# -- comparison maps --------------------------------------------------------------

def d_hat_epsilon0(x: LElement) -> TangentPair:
    """Differential of hat_epsilon at 0: (alpha, b) -> (Hdot, thetadot) = (-b, alpha)."""
    return TangentPair(-x.b, x.alpha)


def phi_map(base: StringData, t: TangentPair) -> LElement:
    """(thetadot^{0,1}, -Hdot - 2c(thetadot^{1,0} ^ F))."""
    F = base.F
    b = -t.Hdot - lb.pairing_c(t.thetadot.part(1, 0), F) * 2
    return LElement(1, t.thetadot.part(0, 1), b)


def tangent_integrability_residual(base: StringData, t: TangentPair) -> Tuple[LieForm, Form]:
    """(dbar^theta thetadot^{0,1}, d(Hdot + 2c(thetadot ^ F)))."""
    F = base.F
    return (
        lb.delbar_theta(base.theta, t.thetadot.part(0, 1)),
        fm.ext_d(t.Hdot + lb.pairing_c(t.thetadot, F) * 2),
    )
