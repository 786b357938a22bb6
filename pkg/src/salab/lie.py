"""Matrix Lie algebra valued forms, connections and gauge maps."""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import forms as fm
from .errors import NonIntegrableConnection, NotHolomorphic, NotInvertible, SpecMismatch
from .forms import Form
from .poly import GaussQ, Poly


class LieAlgebraSpec:
    """Block-diagonal matrix Lie algebra with pairing c = sum_j mu_j tr_j.

    ``blocks`` is a list of (indices, mu) with 1-based indices that partition
    1..size. Matrices are required to vanish outside the diagonal blocks,
    which is what makes a weighted trace ad-invariant.
    """

    def __init__(self, size: int, blocks: Optional[Sequence[Tuple[Sequence[int], object]]] = None):
        if size < 1:
            raise ValueError("matrix size must be positive")
        if blocks is None:
            blocks = [(tuple(range(1, size + 1)), 1)]
        seen: List[int] = []
        norm = []
        for idx, mu in blocks:
            idx = tuple(int(i) for i in idx)
            if not idx:
                raise ValueError("empty block")
            norm.append((idx, GaussQ.coerce(mu) if not isinstance(mu, GaussQ) else mu))
            seen.extend(idx)
        if sorted(seen) != list(range(1, size + 1)):
            raise ValueError(f"blocks must partition 1..{size}, got {sorted(seen)}")
        if not any(mu for _, mu in norm):
            raise ValueError("at least one block weight must be nonzero")
        self.size = size
        self.blocks = tuple(norm)
        block_of = [0] * size
        for b, (idx, _) in enumerate(self.blocks):
            for i in idx:
                block_of[i - 1] = b
        self.block_of = tuple(block_of)
        self.weights = tuple(self.blocks[b][1] for b in block_of)

    def allowed(self, i: int, j: int) -> bool:
        """Whether 0-based entry (i, j) lies in a diagonal block."""
        return self.block_of[i] == self.block_of[j]

    def __eq__(self, other):
        return isinstance(other, LieAlgebraSpec) and self.size == other.size and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.size, tuple((i, (m.re, m.im)) for i, m in self.blocks)))

    def __repr__(self):
        bl = ", ".join(f"{list(i)}:{m.re}+{m.im}i" for i, m in self.blocks)
        return f"LieAlgebraSpec({self.size}, [{bl}])"


def _as_form(x, n: int) -> Form:
    if isinstance(x, Form):
        return x
    return Form.scalar(n, x)


class LieForm:
    """A k x k matrix of forms valued in a :class:`LieAlgebraSpec`."""

    __slots__ = ("lie", "n", "rows")

    def __init__(self, lie: LieAlgebraSpec, n: int, rows: Sequence[Sequence]):
        k = lie.size
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"expected a {k}x{k} matrix")
        built = tuple(tuple(_as_form(x, n) for x in r) for r in rows)
        for i in range(k):
            for j in range(k):
                f = built[i][j]
                if f.n != n:
                    raise fm.DimensionMismatch(f"entry ({i + 1},{j + 1}) has chart dimension {f.n}, expected {n}")
                if f and not lie.allowed(i, j):
                    raise ValueError(f"entry ({i + 1},{j + 1}) lies outside the diagonal blocks")
        self.lie = lie
        self.n = n
        self.rows = built

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, lie: LieAlgebraSpec, n: int) -> "LieForm":
        z = Form(n)
        return cls(lie, n, [[z] * lie.size for _ in range(lie.size)])

    @classmethod
    def elementary(cls, lie: LieAlgebraSpec, n: int, i: int, j: int, f) -> "LieForm":
        """The matrix with ``f`` at 1-based position (i, j) and zero elsewhere."""
        rows = [[Form(n)] * lie.size for _ in range(lie.size)]
        rows[i - 1][j - 1] = _as_form(f, n)
        return cls(lie, n, rows)

    @classmethod
    def identity(cls, lie: LieAlgebraSpec, n: int) -> "LieForm":
        rows = [[Form.scalar(n, 1) if i == j else Form(n) for j in range(lie.size)] for i in range(lie.size)]
        return cls(lie, n, rows)

    # -- inspection -------------------------------------------------------
    def entry(self, i: int, j: int) -> Form:
        """1-based entry."""
        return self.rows[i - 1][j - 1]

    def entries(self) -> Iterable[Form]:
        for r in self.rows:
            yield from r

    def __bool__(self):
        return any(self.entries())

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if not isinstance(other, LieForm):
            return NotImplemented
        return self.lie == other.lie and self.n == other.n and self.rows == other.rows

    __hash__ = None

    def bidegrees(self):
        out = set()
        for f in self.entries():
            out |= f.bidegrees()
        return out

    def degrees(self):
        out = set()
        for f in self.entries():
            out |= f.degrees()
        return out

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"Lie-valued form has mixed total degree {sorted(ds)}")
        return ds.pop() if ds else 0

    def part(self, p: int, q: int) -> "LieForm":
        return self.map(lambda f: f.component(p, q))

    def by_degree(self) -> Dict[int, "LieForm"]:
        return {d: self.map(lambda f, d=d: f.by_degree().get(d, Form(self.n))) for d in self.degrees()}

    def map(self, fn) -> "LieForm":
        return LieForm(self.lie, self.n, [[fn(f) for f in r] for r in self.rows])

    # -- linear structure -------------------------------------------------
    def _check(self, other: "LieForm"):
        if not isinstance(other, LieForm):
            raise TypeError(f"expected LieForm, got {type(other).__name__}")
        if other.lie != self.lie:
            raise SpecMismatch("Lie algebra data differ")
        if other.n != self.n:
            raise fm.DimensionMismatch(f"chart dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other: "LieForm") -> "LieForm":
        self._check(other)
        return LieForm(self.lie, self.n, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "LieForm") -> "LieForm":
        self._check(other)
        return LieForm(self.lie, self.n, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "LieForm":
        return self.map(lambda f: -f)

    def __mul__(self, c) -> "LieForm":
        return self.map(lambda f: f * c)

    __rmul__ = __mul__

    def truncate_t(self, order: int = 2) -> "LieForm":
        return self.map(lambda f: f.truncate_t(order))

    def t_coeff(self, power: int) -> "LieForm":
        return self.map(lambda f: f.t_coeff(power))

    def __repr__(self):
        from .textio import format_form

        body = "; ".join(", ".join(format_form(f) for f in r) for r in self.rows)
        return f"LieForm([{body}])"


def matwedge(a: LieForm, b: LieForm) -> LieForm:
    """Matrix product with entrywise wedge, (a ^ b)_ij = sum_k a_ik ^ b_kj."""
    a._check(b)
    k, n = a.lie.size, a.n
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if not a.lie.allowed(i, j):
                row.append(Form(n))
                continue
            acc = Form(n)
            for m in range(k):
                x, y = a.rows[i][m], b.rows[m][j]
                if x and y:
                    acc = acc + fm.wedge(x, y)
            row.append(acc)
        rows.append(row)
    return LieForm(a.lie, n, rows)


def _homogeneous_bracket(a: LieForm, b: LieForm, da: int, db: int) -> LieForm:
    ab = matwedge(a, b)
    ba = matwedge(b, a)
    return ab - ba if (da * db) % 2 == 0 else ab + ba


def graded_bracket(a: LieForm, b: LieForm) -> LieForm:
    """[a, b] = a^b - (-1)^{|a||b|} b^a, extended bilinearly over total degree."""
    a._check(b)
    out = LieForm.zero(a.lie, a.n)
    for da, pa in a.by_degree().items():
        for db, pb in b.by_degree().items():
            out = out + _homogeneous_bracket(pa, pb, da, db)
    return out


def pairing_c(a: LieForm, b: LieForm) -> Form:
    """c(a ^ b) = sum_j mu_j tr_j(a ^ b)."""
    a._check(b)
    k, n = a.lie.size, a.n
    out = Form(n)
    for i in range(k):
        w = a.lie.weights[i]
        if not w:
            continue
        acc = Form(n)
        for m in range(k):
            x, y = a.rows[i][m], b.rows[m][i]
            if x and y:
                acc = acc + fm.wedge(x, y)
        if acc:
            out = out + acc * w
    return out


def lie_ext_d(a: LieForm) -> LieForm:
    return a.map(fm.ext_d)


def lie_del(a: LieForm) -> LieForm:
    return a.map(fm.del_)


def lie_delbar(a: LieForm) -> LieForm:
    return a.map(fm.delbar)


def lie_contract(V, a: LieForm) -> LieForm:
    return a.map(lambda f: fm.contract(V, f))


def wedge_form_lie(f: Form, a: LieForm) -> LieForm:
    """Scalar form times matrix, f ^ a entrywise."""
    return a.map(lambda x: fm.wedge(f, x))


# -- gauge maps ---------------------------------------------------------------

def _matmul_poly(a, b):
    k = len(a)
    return tuple(
        tuple(sum((a[i][m] * b[m][j] for m in range(k) if a[i][m] and b[m][j]), Poly()) for j in range(k))
        for i in range(k)
    )


class GaugeMap:
    """A polynomial map g: U -> G with an explicitly stored inverse.

    With ``dual=True`` the inverse is only checked modulo t^2, for first-order
    computations with the nilpotent parameter t.
    """

    __slots__ = ("lie", "n", "g", "g_inv", "holomorphic", "dual")

    def __init__(self, lie: LieAlgebraSpec, n: int, g, g_inv, holomorphic: bool = False, dual: bool = False):
        k = lie.size
        to_poly = lambda x: x if isinstance(x, Poly) else Poly.const(x)
        g = tuple(tuple(to_poly(x) for x in r) for r in g)
        g_inv = tuple(tuple(to_poly(x) for x in r) for r in g_inv)
        for name, m in (("g", g), ("g_inv", g_inv)):
            if len(m) != k or any(len(r) != k for r in m):
                raise ValueError(f"{name} must be {k}x{k}")
            for i in range(k):
                for j in range(k):
                    if m[i][j] and not lie.allowed(i, j):
                        raise ValueError(f"{name} entry ({i + 1},{j + 1}) lies outside the diagonal blocks")
        prod = _matmul_poly(g, g_inv)
        for i in range(k):
            for j in range(k):
                r = prod[i][j] - (1 if i == j else 0)
                if dual:
                    r = r.truncate_t()
                if r:
                    raise NotInvertible("g * g_inv is not the identity")
        if holomorphic:
            for r in g:
                for x in r:
                    if any(x.dzb(m) for m in range(1, n + 1)):
                        raise NotHolomorphic("g is flagged holomorphic but depends on zbar")
        self.lie = lie
        self.n = n
        self.g = g
        self.g_inv = g_inv
        self.holomorphic = holomorphic
        self.dual = dual

    @classmethod
    def identity(cls, lie: LieAlgebraSpec, n: int) -> "GaugeMap":
        k = lie.size
        one = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        return cls(lie, n, one, one, holomorphic=True)

    @classmethod
    def unipotent(cls, lie: LieAlgebraSpec, n: int, i: int, j: int, p, holomorphic: Optional[bool] = None) -> "GaugeMap":
        """I + p e_ij for i != j (1-based), with inverse I - p e_ij."""
        if i == j:
            raise ValueError("unipotent generator needs i != j")
        p = p if isinstance(p, Poly) else Poly.const(p)
        k = lie.size
        g = [[Poly.const(1) if a == b else Poly() for b in range(k)] for a in range(k)]
        gi = [list(r) for r in g]
        g[i - 1][j - 1] = p
        gi[i - 1][j - 1] = -p
        if holomorphic is None:
            holomorphic = not any(p.dzb(m) for m in range(1, n + 1))
        return cls(lie, n, g, gi, holomorphic=holomorphic)

    def inverse(self) -> "GaugeMap":
        return GaugeMap(self.lie, self.n, self.g_inv, self.g, holomorphic=self.holomorphic and self._inv_holomorphic(), dual=self.dual)

    def _inv_holomorphic(self) -> bool:
        return not any(x.dzb(m) for r in self.g_inv for x in r for m in range(1, self.n + 1))

    def __matmul__(self, other: "GaugeMap") -> "GaugeMap":
        if other.lie != self.lie:
            raise SpecMismatch("Lie algebra data differ")
        return GaugeMap(
            self.lie,
            self.n,
            _matmul_poly(self.g, other.g),
            _matmul_poly(other.g_inv, self.g_inv),
            holomorphic=self.holomorphic and other.holomorphic,
            dual=self.dual or other.dual,
        )

    def __eq__(self, other):
        if not isinstance(other, GaugeMap):
            return NotImplemented
        return self.lie == other.lie and self.n == other.n and self.g == other.g

    __hash__ = None

    def matrix(self) -> LieForm:
        return LieForm(self.lie, self.n, self.g)

    def inverse_matrix(self) -> LieForm:
        return LieForm(self.lie, self.n, self.g_inv)

    def is_identity(self) -> bool:
        k = self.lie.size
        return all(self.g[i][j] == (1 if i == j else 0) for i in range(k) for j in range(k))

    def minus(self, other: "GaugeMap") -> LieForm:
        """Matrix difference g - g' as a 0-form LieForm."""
        return self.matrix() - other.matrix()

    def __repr__(self):
        from .textio import format_poly

        body = "; ".join(", ".join(format_poly(x) for x in r) for r in self.g)
        return f"GaugeMap([{body}])"


def conjugate(g: GaugeMap, a: LieForm) -> LieForm:
    """g a g^{-1}."""
    return matwedge(matwedge(g.matrix(), a), g.inverse_matrix())


def conjugate_inv(g: GaugeMap, a: LieForm) -> LieForm:
    """g^{-1} a g."""
    return matwedge(matwedge(g.inverse_matrix(), a), g.matrix())


# -- connections --------------------------------------------------------------

class Connection:
    """theta = theta10 + theta01 in the trivialization of the chart."""

    __slots__ = ("theta10", "theta01")

    def __init__(self, theta10: LieForm, theta01: Optional[LieForm] = None):
        if theta01 is None:
            theta01 = LieForm.zero(theta10.lie, theta10.n)
        theta10._check(theta01)
        if theta10.bidegrees() - {(1, 0)}:
            raise ValueError(f"theta10 has bidegrees {sorted(theta10.bidegrees())}, expected (1,0)")
        if theta01.bidegrees() - {(0, 1)}:
            raise ValueError(f"theta01 has bidegrees {sorted(theta01.bidegrees())}, expected (0,1)")
        self.theta10 = theta10
        self.theta01 = theta01

    @classmethod
    def from_form(cls, form: LieForm) -> "Connection":
        if form.bidegrees() - {(1, 0), (0, 1)}:
            raise ValueError(f"connection form has bidegrees {sorted(form.bidegrees())}")
        return cls(form.part(1, 0), form.part(0, 1))

    @classmethod
    def trivial(cls, lie: LieAlgebraSpec, n: int) -> "Connection":
        return cls(LieForm.zero(lie, n))

    @property
    def lie(self) -> LieAlgebraSpec:
        return self.theta10.lie

    @property
    def n(self) -> int:
        return self.theta10.n

    @property
    def form(self) -> LieForm:
        return self.theta10 + self.theta01

    def __add__(self, a: LieForm) -> "Connection":
        return Connection.from_form(self.form + a)

    def __sub__(self, other: "Connection") -> LieForm:
        return self.form - other.form

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return self.theta10 == other.theta10 and self.theta01 == other.theta01

    __hash__ = None

    def __repr__(self):
        return f"Connection({self.form!r})"


def curvature(theta: Connection) -> LieForm:
    """F = d theta + 1/2 [theta, theta]."""
    t = theta.form
    return lie_ext_d(t) + graded_bracket(t, t) * (GaussQ(1) / 2)


def is_integrable(theta: Connection) -> bool:
    return curvature(theta).part(0, 2).is_zero()


def require_integrable(theta: Connection, F: Optional[LieForm] = None) -> LieForm:
    F = curvature(theta) if F is None else F
    if F.part(0, 2):
        raise NonIntegrableConnection("F^{0,2} of the connection is nonzero")
    return F


def cov_d(theta: Connection, a: LieForm) -> LieForm:
    """d^theta a = da + [theta, a]."""
    return lie_ext_d(a) + graded_bracket(theta.form, a)


def del_theta(theta: Connection, a: LieForm) -> LieForm:
    return lie_del(a) + graded_bracket(theta.theta10, a)


def delbar_theta(theta: Connection, a: LieForm) -> LieForm:
    return lie_delbar(a) + graded_bracket(theta.theta01, a)


def chern_simons(theta: Connection) -> Form:
    """CS(theta) = -1/6 c(theta, [theta, theta]) + c(F, theta)."""
    t = theta.form
    cubic = pairing_c(t, graded_bracket(t, t))
    return cubic * (GaussQ(-1) / 6) + pairing_c(curvature(theta), t)


def cs_difference(theta: Connection, a: LieForm) -> Form:
    """2c(a ^ F) + c(a ^ d^theta a) + 1/3 c(a, [a, a])."""
    F = curvature(theta)
    return (
        pairing_c(a, F) * 2
        + pairing_c(a, cov_d(theta, a))
        + pairing_c(a, graded_bracket(a, a)) * (GaussQ(1) / 3)
    )


def act(g: GaugeMap, theta: Connection) -> Connection:
    """g . theta = g theta g^{-1} - dg g^{-1}."""
    gi = g.inverse_matrix()
    dg = lie_ext_d(g.matrix())
    return Connection.from_form(conjugate(g, theta.form) - matwedge(dg, gi))


def mc_form(g: GaugeMap) -> LieForm:
    """g^{-1} dg (equal to g^{-1} del g for holomorphic g)."""
    return matwedge(g.inverse_matrix(), lie_ext_d(g.matrix()))


def a_of(g: GaugeMap, theta: Connection, theta_prime: Optional[Connection] = None) -> LieForm:
    """g^{-1} . theta' - theta, with theta' defaulting to theta.

    g^{-1} . theta' = g^{-1} theta' g + g^{-1} dg.
    """
    tp = theta if theta_prime is None else theta_prime
    return conjugate_inv(g, tp.form) + mc_form(g) - theta.form


def sigma_rep(g: GaugeMap, theta: Connection) -> Form:
    """CS(g theta) - CS(theta) - d c(g theta ^ theta)."""
    gt = act(g, theta)
    return chern_simons(gt) - chern_simons(theta) - fm.ext_d(pairing_c(gt.form, theta.form))


def sigma_product_potential(g: GaugeMap, h: GaugeMap, theta: Connection) -> Form:
    """B with sigma(gh) = sigma(g) + sigma(h) + dB, all at the same theta.

    B = c(gh theta ^ g theta) + c(g theta ^ theta) - c(gh theta ^ theta),
    of type (2,0) when g, h are holomorphic and preserve theta^{0,1}.
    """
    gt = act(g, theta)
    ght = act(g @ h, theta)
    return pairing_c(ght.form, gt.form) + pairing_c(gt.form, theta.form) - pairing_c(ght.form, theta.form)
