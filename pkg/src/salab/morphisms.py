"""Morphisms f_g(B, a) of split models and the automorphism group S."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from . import forms as fm
from . import lie as lb
from .algebroid import QForm, SectionQ, StringData, dolbeault_Q, dorfman, pairing_Q
from .errors import BundleMapError
from .forms import Form, VectorField10
from .lie import Connection, GaugeMap, LieForm


@dataclass(frozen=True)
class MorphismData:
    g: GaugeMap
    a: LieForm
    B: Form

    def __post_init__(self):
        if self.a.bidegrees() - {(1, 0)}:
            raise ValueError("a must be of type (1,0)")
        if self.B.bidegrees() - {(2, 0)}:
            raise ValueError("B must be of type (2,0)")


@dataclass(frozen=True)
class AutElement:
    g: GaugeMap
    B: Form

    def __post_init__(self):
        if self.B.bidegrees() - {(2, 0)}:
            raise ValueError("B must be of type (2,0)")

    @classmethod
    def identity(cls, lie, n: int) -> "AutElement":
        return cls(GaugeMap.identity(lie, n), Form(n))

    def __eq__(self, other):
        if not isinstance(other, AutElement):
            return NotImplemented
        return self.g == other.g and self.B == other.B

    __hash__ = None


def apply_morphism(m: MorphismData, s):
    """(V, g (r + i_V a) g^{-1}, xi + i_V B - c(i_V a, a) - 2 c(a, r)).

    Accepts a :class:`SectionQ` or a Q-valued (0,q)-form (:class:`QForm`).
    """
    if isinstance(s, SectionQ):
        iVa = lb.lie_contract(s.V, m.a)
        r = lb.conjugate(m.g, s.r + iVa)
        xi = s.xi + fm.contract(s.V, m.B) - lb.pairing_c(iVa, m.a) - lb.pairing_c(m.a, s.r) * 2
        return SectionQ(s.V, r, xi)
    V = list(s.V)
    sign = -1 if s.q & 1 else 1
    iVa = lb.lie_contract(V, m.a)
    r = lb.conjugate(m.g, s.r + iVa)
    xi = s.xi + fm.contract(V, m.B) - lb.pairing_c(iVa, m.a) - lb.pairing_c(m.a, s.r) * (2 * sign)
    return QForm(s.q, s.V, r, xi)


def morphism_from_certificate(d: StringData, d2: StringData, g: GaugeMap, B: Form) -> MorphismData:
    """The map Q0(d) -> Q0(d2) attached to an isomorphism certificate (g, B).

    With the twist i_V i_W H (W inserted first) the bracket is intertwined
    by f_g(-B, a) when H' = H - cs_difference(theta, a) - dB.
    """
    a = lb.a_of(g, d.theta, d2.theta)
    if a.part(0, 1):
        raise BundleMapError("a = g^{-1} theta' - theta has a (0,1) part")
    return MorphismData(g, a, -B)


def iso_residual(d: StringData, d2: StringData, g: GaugeMap, B: Form) -> Form:
    """H' - H + 2c(a, F) + c(a, d^theta a) + 1/3 c(a, [a, a]) + dB with a = g^{-1} theta' - theta."""
    m = morphism_from_certificate(d, d2, g, B)
    return d2.H - d.H + lb.cs_difference(d.theta, m.a) + fm.ext_d(B)


def morphism_report(d: StringData, d2: StringData, m: MorphismData, sections, bracket=None) -> Dict[str, object]:
    """Residuals of pairing, anchor, Dolbeault and bracket preservation.

    ``sections`` is a sequence of at least two SectionQ; pairs (s_i, s_{i+1})
    are tested. ``bracket`` defaults to :func:`dorfman`.
    """
    br_fn = bracket or dorfman
    pair = Form(d.n)
    dol = None
    brk = None
    n = d.n
    for s1, s2 in zip(sections, sections[1:]):
        p1, p2 = apply_morphism(m, s1), apply_morphism(m, s2)
        pair = pair + Form.scalar(n, pairing_Q(p1, p2) - pairing_Q(s1, s2))
        dr = dolbeault_Q(d2, p1) - apply_morphism(m, dolbeault_Q(d, s1))
        dol = dr if dol is None else dol + dr
        br = br_fn(d2, p1, p2) - apply_morphism(m, br_fn(d, s1, s2))
        brk = br if brk is None else brk + br
    anchor = VectorField10.zero(n)
    return {"pairing": pair, "anchor": anchor, "dolbeault": dol, "bracket": brk}


def report_ok(rep: Dict[str, object]) -> bool:
    return all(not v for v in rep.values())


# -- the group S -------------------------------------------------------------------

def _theta_or_trivial(g: GaugeMap, theta: Optional[Connection]) -> Connection:
    return Connection.trivial(g.lie, g.n) if theta is None else theta


def aut_condition_residual(theta: Optional[Connection], g: GaugeMap, B: Form) -> Form:
    """dB - 2c(a, F) - c(a, d^theta a) - 1/3 c(a, [a, a]) with a = a_of(g, theta)."""
    theta = _theta_or_trivial(g, theta)
    a = lb.a_of(g, theta)
    return fm.ext_d(B) - lb.cs_difference(theta, a)


def s_product(x: AutElement, y: AutElement, theta: Optional[Connection] = None) -> AutElement:
    """(g1 g2, B1 + B2 + c(g2^{-1} a^{g1} g2 ^ a^{g2}))."""
    theta = _theta_or_trivial(x.g, theta)
    a1 = lb.a_of(x.g, theta)
    a2 = lb.a_of(y.g, theta)
    corr = lb.pairing_c(lb.conjugate_inv(y.g, a1), a2)
    return AutElement(x.g @ y.g, x.B + y.B + corr)


def s_inverse(x: AutElement, theta: Optional[Connection] = None) -> AutElement:
    """Solve (g, B)(g^{-1}, B') = (1, 0): B' = -B - c(g a^g g^{-1} ^ a^{g^{-1}})."""
    theta = _theta_or_trivial(x.g, theta)
    gi = x.g.inverse()
    corr = lb.pairing_c(lb.conjugate(x.g, lb.a_of(x.g, theta)), lb.a_of(gi, theta))
    return AutElement(gi, -x.B - corr)


def s_equal_residual(x: AutElement, y: AutElement):
    """(g_x - g_y, B_x - B_y)."""
    return x.g.minus(y.g), x.B - y.B
