"""Exterior calculus of polynomial (p,q)-forms on one chart of C^n.

A :class:`Form` is a finite sum of terms ``f * dz_I ^ dzb_J`` with ``I`` and
``J`` strictly increasing 1-based index tuples. Forms of mixed bidegree are
allowed, so the same class also plays the role of a mixed form.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .poly import BITS, MASK, ONE, GaussQ, Poly, z_slot, zb_slot

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


class DimensionMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _merge(a: Tuple[int, ...], b: Tuple[int, ...]):
    """Sorted union of two index tuples with its permutation sign, or None."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    sa = set(a)
    if any(x in sa for x in b):
        return None
    # sign = parity of the number of pairs (x in a, y in b) with x > y
    inv = 0
    for y in b:
        for x in a:
            if x > y:
                inv += 1
    return tuple(sorted(a + b)), (-1 if inv & 1 else 1)


@lru_cache(maxsize=None)
def _wedge_keys(k1: Key, k2: Key):
    (i1, j1), (i2, j2) = k1, k2
    mi = _merge(i1, i2)
    if mi is None:
        return None
    mj = _merge(j1, j2)
    if mj is None:
        return None
    sign = mi[1] * mj[1]
    if (len(j1) * len(i2)) & 1:
        sign = -sign
    return (mi[0], mj[0]), sign


def _sort_sign(idx: Sequence[int]):
    """Sort ``idx``; return (sorted tuple, sign) or None on a repeat."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return tuple(sorted(idx)), sign


def _coerce_poly(c) -> Poly:
    return c if isinstance(c, Poly) else Poly.const(c)


class Form:
    """Sparse polynomial differential form, possibly of mixed bidegree."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Key, Poly]] = None):
        if n < 1:
            raise ValueError("chart dimension must be positive")
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, f) -> "Form":
        return cls(n, {((), ()): _coerce_poly(f)})

    @classmethod
    def basis(cls, n: int, I: Iterable[int] = (), J: Iterable[int] = (), coeff=ONE) -> "Form":
        """The form ``coeff * dz_I ^ dzb_J``; indices may come unsorted."""
        I, J = tuple(I), tuple(J)
        for k in I + J:
            if not 1 <= k <= n:
                raise ValueError(f"index {k} outside 1..{n}")
        si, sj = _sort_sign(I), _sort_sign(J)
        if si is None or sj is None:
            return cls(n)
        c = _coerce_poly(coeff)
        if si[1] * sj[1] < 0:
            c = -c
        return cls(n, {(si[0], sj[0]): c})

    @classmethod
    def dz(cls, n: int, k: int) -> "Form":
        return cls.basis(n, (k,), ())

    @classmethod
    def dzb(cls, n: int, k: int) -> "Form":
        return cls.basis(n, (), (k,))

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def bidegrees(self):
        return {(len(i), len(j)) for i, j in self.terms}

    def degrees(self):
        return {len(i) + len(j) for i, j in self.terms}

    @property
    def degree(self) -> int:
        """Total degree; the zero form reports 0."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"form has mixed total degree {sorted(ds)}")
        return ds.pop() if ds else 0

    def component(self, p: int, q: int) -> "Form":
        return Form(self.n, {k: v for k, v in self.terms.items() if len(k[0]) == p and len(k[1]) == q})

    def by_degree(self) -> Dict[int, "Form"]:
        out: Dict[int, Dict[Key, Poly]] = {}
        for k, v in self.terms.items():
            out.setdefault(len(k[0]) + len(k[1]), {})[k] = v
        return {d: Form(self.n, t) for d, t in out.items()}

    def scalar_part(self) -> Poly:
        return self.terms.get(((), ()), Poly())

    def coeff(self, I: Tuple[int, ...], J: Tuple[int, ...] = ()) -> Poly:
        return self.terms.get((tuple(I), tuple(J)), Poly())

    def max_poly_degree(self) -> int:
        top = 0
        for v in self.terms.values():
            for e in v.exponents():
                s, e = 0, e >> BITS
                while e:
                    s += e & MASK
                    e >>= BITS
                top = max(top, s)
        return top

    def nterms(self) -> int:
        return sum(v.nterms() for v in self.terms.values())

    # -- linear structure -------------------------------------------------
    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"chart dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return Form(self.n, out)

    def __sub__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] - v if k in out else -v
        return Form(self.n, out)

    def __neg__(self) -> "Form":
        return Form(self.n, {k: -v for k, v in self.terms.items()})

    def __mul__(self, c) -> "Form":
        """Multiplication by a number or a Poly (a 0-form)."""
        if isinstance(c, Form):
            return NotImplemented
        if isinstance(c, Poly):
            return Form(self.n, {k: v * c for k, v in self.terms.items()})
        c = GaussQ.coerce(c)
        return Form(self.n, {k: v.scale(c) for k, v in self.terms.items()})

    __rmul__ = __mul__

    def map_coeffs(self, fn) -> "Form":
        return Form(self.n, {k: fn(v) for k, v in self.terms.items()})

    def truncate_t(self, order: int = 2) -> "Form":
        return self.map_coeffs(lambda v: v.truncate_t(order))

    def t_coeff(self, power: int) -> "Form":
        return self.map_coeffs(lambda v: v.t_coeff(power))

    def __repr__(self):
        from .textio import format_form

        return f"Form(n={self.n}, {format_form(self)!r})"


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out: Dict[Key, Poly] = {}
    for k1, v1 in a.terms.items():
        for k2, v2 in b.terms.items():
            r = _wedge_keys(k1, k2)
            if r is None:
                continue
            key, sign = r
            prod = v1 * v2
            if sign < 0:
                prod = -prod
            out[key] = out[key] + prod if key in out else prod
    return Form(a.n, out)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def _insert(idx: Tuple[int, ...], k: int):
    """Prepend index k to idx; return (sorted tuple, sign) or None."""
    if k in idx:
        return None
    pos = sum(1 for x in idx if x < k)
    return idx[:pos] + (k,) + idx[pos:], (-1 if pos & 1 else 1)


def _accumulate(out: Dict[Key, Poly], key: Key, val: Poly, sign: int):
    if not val:
        return
    if sign < 0:
        val = -val
    out[key] = out[key] + val if key in out else val


def del_(a: Form) -> Form:
    """Holomorphic part of d: sum_k dz_k ^ (d f / d z_k)."""
    out: Dict[Key, Poly] = {}
    for (I, J), f in a.terms.items():
        for k in range(1, a.n + 1):
            r = _insert(I, k)
            if r is None:
                continue
            _accumulate(out, (r[0], J), f.diff(z_slot(k)), r[1])
    return Form(a.n, out)


def delbar(a: Form) -> Form:
    """Antiholomorphic part of d: sum_k dzb_k ^ (d f / d zb_k)."""
    out: Dict[Key, Poly] = {}
    for (I, J), f in a.terms.items():
        for k in range(1, a.n + 1):
            r = _insert(J, k)
            if r is None:
                continue
            sign = r[1] * (-1 if len(I) & 1 else 1)
            _accumulate(out, (I, r[0]), f.diff(zb_slot(k)), sign)
    return Form(a.n, out)


def ext_d(a: Form) -> Form:
    return del_(a) + delbar(a)


# -- vector fields ----------------------------------------------------------

class VectorField10:
    """A (1,0) vector field sum_k V_k d/dz_k with polynomial coefficients."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Sequence = None):
        comps = tuple(_coerce_poly(c) for c in components) if components is not None else tuple(Poly() for _ in range(n))
        if len(comps) != n:
            raise DimensionMismatch(f"expected {n} components, got {len(comps)}")
        self.n = n
        self.components = comps

    @classmethod
    def zero(cls, n: int) -> "VectorField10":
        return cls(n)

    @classmethod
    def coordinate(cls, n: int, k: int, coeff=ONE) -> "VectorField10":
        comps = [Poly()] * n
        comps[k - 1] = _coerce_poly(coeff)
        return cls(n, comps)

    def __getitem__(self, k: int) -> Poly:
        """1-based component access."""
        return self.components[k - 1]

    def __bool__(self):
        return any(self.components)

    def __eq__(self, other):
        if not isinstance(other, VectorField10):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    __hash__ = None

    def __add__(self, other):
        return VectorField10(self.n, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return VectorField10(self.n, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField10(self.n, [-a for a in self.components])

    def __mul__(self, c):
        return VectorField10(self.n, [a * c for a in self.components])

    __rmul__ = __mul__

    def apply(self, f: Poly) -> Poly:
        """Directional derivative V(f) = sum_k V_k df/dz_k."""
        out = Poly()
        for k, v in enumerate(self.components, 1):
            if v:
                out = out + v * f.diff(z_slot(k))
        return out

    def map_coeffs(self, fn) -> "VectorField10":
        return VectorField10(self.n, [fn(v) for v in self.components])

    def __repr__(self):
        from .textio import format_poly

        return "VectorField10(" + ", ".join(format_poly(c) for c in self.components) + ")"


def vector_bracket(V: VectorField10, W: VectorField10) -> VectorField10:
    return VectorField10(V.n, [V.apply(W[k]) - W.apply(V[k]) for k in range(1, V.n + 1)])


def contract(V, a: Form) -> Form:
    """Interior product i_V a, inserting V into the dz slots.

    ``V`` is a :class:`VectorField10` or a length-n sequence of Forms; in the
    second case the form part of ``V_k`` is kept on the left, i.e. the result
    is sum_k V_k ^ i_{d/dz_k} a.
    """
    n = a.n
    if isinstance(V, VectorField10):
        out: Dict[Key, Poly] = {}
        for (I, J), f in a.terms.items():
            for m, k in enumerate(I):
                vk = V.components[k - 1]
                if not vk:
                    continue
                _accumulate(out, (I[:m] + I[m + 1:], J), vk * f, -1 if m & 1 else 1)
        return Form(n, out)
    total = Form(n)
    for k, vk in enumerate(V, 1):
        if vk:
            total = total + wedge(vk, contract_coordinate(k, a))
    return total


def contract_coordinate(k: int, a: Form) -> Form:
    """i_{d/dz_k} a."""
    out: Dict[Key, Poly] = {}
    for (I, J), f in a.terms.items():
        if k in I:
            m = I.index(k)
            _accumulate(out, (I[:m] + I[m + 1:], J), f, -1 if m & 1 else 1)
    return Form(a.n, out)


def lie_derivative(V: VectorField10, a: Form) -> Form:
    """Cartan formula L_V = i_V d + d i_V."""
    return contract(V, ext_d(a)) + ext_d(contract(V, a))


def one_form_from(V_like: Sequence[Poly], n: int) -> Form:
    """The (1,0)-form sum_k c_k dz_k."""
    out = Form(n)
    for k, c in enumerate(V_like, 1):
        if c:
            out = out + Form.basis(n, (k,), (), c)
    return out


def evaluate_one_form(xi: Form, V: VectorField10) -> Poly:
    """xi(V) for a (1,0)-form xi."""
    return contract(V, xi.component(1, 0)).scalar_part()


# -- homotopy operators -----------------------------------------------------

def _weight_split(f: Poly, slots):
    out: Dict[int, Poly] = {}
    for e, c in f.terms():
        w = sum((e >> (s * BITS)) & MASK for s in slots)
        out.setdefault(w, Poly())
        out[w] = out[w] + Poly.monomial(e, c)
    return out


def _homotopy(a: Form, holo: bool, anti: bool) -> Form:
    n = a.n
    slots = ([z_slot(k) for k in range(1, n + 1)] if holo else []) + ([zb_slot(k) for k in range(1, n + 1)] if anti else [])
    out: Dict[Key, Poly] = {}
    for (I, J), f in a.terms.items():
        form_w = (len(I) if holo else 0) + (len(J) if anti else 0)
        for w, piece in _weight_split(f, slots).items():
            total = w + form_w
            if total == 0:
                continue
            inv = GaussQ(1) / total
            if holo:
                for m, k in enumerate(I):
                    c = (piece * Poly.z(k)).scale(inv)
                    _accumulate(out, (I[:m] + I[m + 1:], J), c, -1 if m & 1 else 1)
            if anti:
                for m, k in enumerate(J):
                    c = (piece * Poly.zb(k)).scale(inv)
                    sign = -1 if (len(I) + m) & 1 else 1
                    _accumulate(out, (I, J[:m] + J[m + 1:]), c, sign)
    return Form(n, out)


def del_homotopy(a: Form) -> Form:
    """Homotopy K for del (zbar, dzbar treated as parameters).

    del K + K del = identity minus the projection onto z-constant functions,
    so ``a == del_(del_homotopy(a))`` whenever ``del_(a) == 0`` and every term
    of ``a`` has a dz factor.
    """
    return _homotopy(a, True, False)


def delbar_homotopy(a: Form) -> Form:
    """Homotopy for delbar, the mirror of :func:`del_homotopy`."""
    return _homotopy(a, False, True)


def d_homotopy(a: Form) -> Form:
    """Polynomial Poincare homotopy for d on C^n."""
    return _homotopy(a, True, True)


def check_leq(a: Form, k: Optional[int] = None) -> Form:
    """Validate that ``a`` lies in Omega^{<=k}: holomorphic degree >= 2 and,
    if k is given, total degree k + 2."""
    for p, q in a.bidegrees():
        if p < 2:
            raise ValueError(f"component of bidegree ({p},{q}) has holomorphic degree below 2")
        if k is not None and p + q != k + 2:
            raise ValueError(f"component of bidegree ({p},{q}) does not have total degree {k + 2}")
    return a


def leq_part(a: Form) -> Form:
    """Drop every component with holomorphic degree below 2."""
    return Form(a.n, {k: v for k, v in a.terms.items() if len(k[0]) >= 2})



