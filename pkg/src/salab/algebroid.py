"""The split model Q0 = T^{1,0} + ad P + (T^{1,0})^* built from (H, theta).

Sections are polynomial in z and zbar. The bracket only differentiates in
the holomorphic directions, so zbar behaves as a parameter there; the
Dolbeault operator carries the zbar dependence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import forms as fm
from . import lie as lb
from .errors import NonIntegrableConnection
from .forms import Form, VectorField10
from .lie import Connection, LieAlgebraSpec, LieForm
from .poly import GaussQ, Poly

HALF = GaussQ(1) / 2


class StringData:
    """Classifying data (H, theta) with H = H30 + H21."""

    __slots__ = ("theta", "H30", "H21", "_F")

    def __init__(self, theta: Connection, H30: Optional[Form] = None, H21: Optional[Form] = None):
        n = theta.n
        H30 = Form(n) if H30 is None else H30
        H21 = Form(n) if H21 is None else H21
        if H30.n != n or H21.n != n:
            raise fm.DimensionMismatch("H and theta live on charts of different dimension")
        if H30.bidegrees() - {(3, 0)}:
            raise ValueError(f"H30 has bidegrees {sorted(H30.bidegrees())}, expected (3,0)")
        if H21.bidegrees() - {(2, 1)}:
            raise ValueError(f"H21 has bidegrees {sorted(H21.bidegrees())}, expected (2,1)")
        self.theta = theta
        self.H30 = H30
        self.H21 = H21
        self._F = None

    @classmethod
    def from_H(cls, theta: Connection, H: Form) -> "StringData":
        extra = H.bidegrees() - {(3, 0), (2, 1)}
        if extra:
            raise ValueError(f"H has components of bidegree {sorted(extra)} outside (3,0)+(2,1)")
        return cls(theta, H.component(3, 0), H.component(2, 1))

    @classmethod
    def trivial(cls, lie: LieAlgebraSpec, n: int) -> "StringData":
        return cls(Connection.trivial(lie, n))

    @property
    def H(self) -> Form:
        return self.H30 + self.H21

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def lie(self) -> LieAlgebraSpec:
        return self.theta.lie

    @property
    def F(self) -> LieForm:
        if self._F is None:
            self._F = lb.curvature(self.theta)
        return self._F

    def __eq__(self, other):
        if not isinstance(other, StringData):
            return NotImplemented
        return self.theta == other.theta and self.H30 == other.H30 and self.H21 == other.H21

    __hash__ = None

    def __repr__(self):
        return f"StringData(theta={self.theta!r}, H={self.H!r})"


@dataclass(frozen=True)
class SectionQ:
    """A smooth section V + r + xi of Q0."""

    V: VectorField10
    r: LieForm
    xi: Form

    def __post_init__(self):
        if self.r.bidegrees() - {(0, 0)}:
            raise ValueError("r must be a 0-form")
        if self.xi.bidegrees() - {(1, 0)}:
            raise ValueError("xi must be a (1,0)-form")

    @classmethod
    def zero(cls, lie: LieAlgebraSpec, n: int) -> "SectionQ":
        return cls(VectorField10.zero(n), LieForm.zero(lie, n), Form(n))

    @property
    def n(self) -> int:
        return self.xi.n

    def __add__(self, o: "SectionQ") -> "SectionQ":
        return SectionQ(self.V + o.V, self.r + o.r, self.xi + o.xi)

    def __sub__(self, o: "SectionQ") -> "SectionQ":
        return SectionQ(self.V - o.V, self.r - o.r, self.xi - o.xi)

    def __neg__(self) -> "SectionQ":
        return SectionQ(-self.V, -self.r, -self.xi)

    def scale(self, f) -> "SectionQ":
        """Multiply by a function (Poly) or a number."""
        return SectionQ(self.V * f, self.r * f, self.xi * f)

    def is_zero(self) -> bool:
        return not self.V and not self.r and not self.xi

    def __bool__(self):
        return not self.is_zero()

    def map_coeffs(self, fn) -> "SectionQ":
        return SectionQ(self.V.map_coeffs(fn), self.r.map(lambda f: f.map_coeffs(fn)), self.xi.map_coeffs(fn))


@dataclass(frozen=True)
class QForm:
    """A (0,q)-form with values in Q0.

    ``V`` holds n (0,q)-forms, ``r`` a (0,q) Lie-valued form, ``xi`` a
    (1,q)-form. The covector slot is read through gamma ^ dz_k <-> gamma (x) dz_k,
    so evaluating xi on a vector W gives (-1)^q i_W xi.
    """

    q: int
    V: Tuple[Form, ...]
    r: LieForm
    xi: Form

    @classmethod
    def from_section(cls, s: SectionQ) -> "QForm":
        n = s.n
        return cls(0, tuple(Form.scalar(n, c) for c in s.V.components), s.r, s.xi)

    def is_zero(self) -> bool:
        return not any(self.V) and not self.r and not self.xi

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, o: "QForm") -> "QForm":
        return QForm(self.q, tuple(a + b for a, b in zip(self.V, o.V)), self.r + o.r, self.xi + o.xi)

    def __sub__(self, o: "QForm") -> "QForm":
        return QForm(self.q, tuple(a - b for a, b in zip(self.V, o.V)), self.r - o.r, self.xi - o.xi)


def _as_qform(s) -> QForm:
    return s if isinstance(s, QForm) else QForm.from_section(s)


# -- structure maps -----------------------------------------------------------

def anchor(s: SectionQ) -> VectorField10:
    return s.V


def rho0(s: SectionQ, theta: Optional[Connection] = None) -> Tuple[VectorField10, LieForm]:
    """Image in the Atiyah algebroid, as the pair (V, r) in the theta-splitting."""
    return s.V, s.r


def evaluate_covector(xi: Form, V: Sequence[Form], q: int) -> Form:
    """xi(V) for a (1,q)-form xi and (0,*)-form valued V (form parts wedge as gamma ^ V_k)."""
    out = Form(xi.n)
    sign = -1 if q & 1 else 1
    for k, vk in enumerate(V, 1):
        if vk:
            gamma = fm.contract_coordinate(k, xi)
            out = out + fm.wedge(gamma, vk) * sign
    return out


def pairing_Q(s1, s2) -> Poly | Form:
    """Polarized pairing 1/2 (xi1(V2) + xi2(V1)) + c(r1, r2).

    Returns a Poly for two sections, a Form when either argument is a QForm.
    """
    if isinstance(s1, SectionQ) and isinstance(s2, SectionQ):
        val = (fm.evaluate_one_form(s1.xi, s2.V) + fm.evaluate_one_form(s2.xi, s1.V)) * HALF
        return val + lb.pairing_c(s1.r, s2.r).scalar_part()
    a, b = _as_qform(s1), _as_qform(s2)
    val = (evaluate_covector(a.xi, b.V, a.q) + evaluate_covector(b.xi, a.V, b.q)) * HALF
    return val + lb.pairing_c(a.r, b.r)


def _vf_contract(V, a: Form) -> Form:
    return fm.contract(V, a)


def dolbeault_Q(d: StringData, s) -> QForm:
    """dbar_Q on Q0-valued (0,q)-forms; a SectionQ is read as q = 0.

    (dbar V, dbar^theta r + (-1)^q i_V F^{1,1}, dbar xi + (-1)^q (i_V H^{2,1} + 2c(F^{1,1} ^ r)))
    """
    s = _as_qform(s)
    sign = -1 if s.q & 1 else 1
    F11 = d.F.part(1, 1)
    V = list(s.V)
    newV = tuple(fm.delbar(v) for v in V)
    r = lb.delbar_theta(d.theta, s.r) + lb.lie_contract(V, F11) * sign
    xi = fm.delbar(s.xi) + (fm.contract(V, d.H21) + lb.pairing_c(F11, s.r) * 2) * sign
    return QForm(s.q + 1, newV, r, xi)


def integrability_residual(d: StringData) -> Tuple[Form, Form, Form]:
    """Type components (4,0), (3,1), (2,2) of dH + c(F ^ F)."""
    F = d.F
    if F.part(0, 2):
        raise NonIntegrableConnection("F^{0,2} of the connection is nonzero")
    total = fm.ext_d(d.H) + lb.pairing_c(F, F)
    return total.component(4, 0), total.component(3, 1), total.component(2, 2)


def is_integrable(d: StringData) -> bool:
    try:
        return not any(integrability_residual(d))
    except NonIntegrableConnection:
        return False


# -- bracket --------------------------------------------------------------------

def _F_on(F20: LieForm, V: VectorField10, W: VectorField10) -> LieForm:
    """F(V, W) = i_W i_V F."""
    return lb.lie_contract(W, lb.lie_contract(V, F20))


def dorfman(d: StringData, s1: SectionQ, s2: SectionQ) -> SectionQ:
    """Dorfman bracket [s1, s2] on Q0."""
    V, r, xi = s1.V, s1.r, s1.xi
    W, t, eta = s2.V, s2.r, s2.xi
    theta = d.theta
    F20 = d.F.part(2, 0)

    bracket_V = fm.vector_bracket(V, W)

    dt = lb.del_theta(theta, t)
    dr = lb.del_theta(theta, r)
    bracket_r = (
        -_F_on(F20, V, W)
        + lb.lie_contract(V, dt)
        - lb.lie_contract(W, dr)
        - lb.graded_bracket(r, t)
    )

    iVF = lb.lie_contract(V, F20)
    iWF = lb.lie_contract(W, F20)
    bracket_xi = (
        fm.contract(V, fm.del_(eta))
        + fm.del_(Form.scalar(d.n, fm.evaluate_one_form(eta, V)))
        - fm.contract(W, fm.del_(xi))
        + fm.contract(V, fm.contract(W, d.H30))
        + lb.pairing_c(dr, t) * 2
        + lb.pairing_c(iVF, t) * 2
        - lb.pairing_c(iWF, r) * 2
    )
    return SectionQ(bracket_V, bracket_r, bracket_xi)


@dataclass(frozen=True)
class CourantReport:
    D1: SectionQ
    D2: VectorField10
    D3: SectionQ
    D4: Poly
    D5: SectionQ

    def residuals(self):
        return {"D1": self.D1, "D2": self.D2, "D3": self.D3, "D4": self.D4, "D5": self.D5}

    def failing(self):
        return [k for k, v in self.residuals().items() if v]

    @property
    def ok(self) -> bool:
        return not self.failing()


def exact_section(f: Poly, lie: LieAlgebraSpec, n: int) -> SectionQ:
    """The section (0, 0, del f)."""
    return SectionQ(VectorField10.zero(n), LieForm.zero(lie, n), fm.del_(Form.scalar(n, f)))


def courant_axioms_residual(d: StringData, u: SectionQ, v: SectionQ, w: SectionQ, phi: Poly, bracket=None) -> CourantReport:
    """Residuals of the five Courant axioms for the given sections.

    ``bracket`` defaults to :func:`dorfman` and exists so alternative
    implementations can be checked against the same axioms.
    """
    br = bracket or dorfman
    lie, n = d.lie, d.n
    uv = br(d, u, v)
    d1 = br(d, u, br(d, v, w)) - br(d, uv, w) - br(d, v, br(d, u, w))
    d2 = uv.V - fm.vector_bracket(u.V, v.V)
    d3 = br(d, u, v.scale(phi)) - v.scale(u.V.apply(phi)) - uv.scale(phi)
    d4 = u.V.apply(pairing_Q(v, w)) - pairing_Q(uv, w) - pairing_Q(v, br(d, u, w))
    d5 = uv + br(d, v, u) - exact_section(pairing_Q(u, v) * 2, lie, n)
    return CourantReport(d1, d2, d3, d4, d5)


# -- random data ----------------------------------------------------------------

def random_string_data(rng, lie: LieAlgebraSpec, n: int, deg: int = 1, flat20: bool = False, with_01: bool = True) -> StringData:
    """Integrable data: H = -CS(theta~) + dB with theta~ of type (1,0), then
    theta = h . theta~ for a smooth unipotent h (which keeps c(F ^ F))."""
    from . import generate as gen

    if flat20:
        base = gen.rand_flat20_connection(rng, lie, n, deg, with_01=False)
    else:
        base = Connection(gen.rand_lieform(rng, lie, n, 1, 0, deg))
    B = gen.rand_form(rng, n, 2, 0, deg + 1, 2) if n >= 2 else Form(n)
    H = -lb.chern_simons(base) + fm.ext_d(B)
    theta = base
    if with_01:
        h = gen.rand_gauge(rng, lie, n, deg=1, factors=1, holomorphic=False)
        theta = lb.act(h, base)
    return StringData.from_H(theta, H)


def random_section(rng, lie: LieAlgebraSpec, n: int, deg: int = 2, holomorphic: bool = False) -> SectionQ:
    from . import generate as gen

    return SectionQ(
        gen.rand_vector(rng, n, deg, 2, holomorphic),
        gen.rand_lieform(rng, lie, n, 0, 0, deg, 2, holomorphic),
        gen.rand_form(rng, n, 1, 0, deg, 2, holomorphic),
    )
