"""Sparse polynomials in z, zbar (and an optional nilpotent t) over Q(i).

Monomials are packed into a single int: each variable owns a 16-bit slot.
Slot 0 is the dual parameter ``t``, slot ``2k-1`` is ``z_k`` and slot ``2k``
is ``zb_k`` (k is 1-based). The packing does not depend on the chart
dimension, so polynomials from different charts compare consistently.

Real and imaginary coefficient parts live in separate dicts of ``mpq`` so
the common real-only case never pays for complex multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Tuple, Union

from gmpy2 import mpq

BITS = 16
MASK = (1 << BITS) - 1

Number = Union[int, Fraction, "GaussQ"]


def z_slot(k: int) -> int:
    return 2 * k - 1


def zb_slot(k: int) -> int:
    return 2 * k


T_SLOT = 0


def slot_power(exp: int, slot: int) -> int:
    return (exp >> (slot * BITS)) & MASK


def unpack(exp: int) -> Dict[int, int]:
    """Map slot -> power for the nonzero slots of a packed monomial."""
    out = {}
    slot = 0
    while exp:
        p = exp & MASK
        if p:
            out[slot] = p
        exp >>= BITS
        slot += 1
    return out


class GaussQ:
    """An exact Gaussian rational re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Rational)) or type(x).__name__ == "mpq":
            return cls(x, 0)
        raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")

    def __add__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.coerce(other))

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __mul__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussQ.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussQ(o.re / den, -o.im / den)

    def __eq__(self, other):
        try:
            o = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


def _scale(d: Dict[int, mpq], c: mpq) -> Dict[int, mpq]:
    if not c:
        return {}
    return {e: v * c for e, v in d.items()}


def _add_into(acc: Dict[int, mpq], d: Dict[int, mpq], sign: int = 1) -> None:
    for e, v in d.items():
        w = acc.get(e)
        w = (v if sign > 0 else -v) if w is None else (w + v if sign > 0 else w - v)
        if w:
            acc[e] = w
        else:
            acc.pop(e, None)


def _mul(a: Dict[int, mpq], b: Dict[int, mpq]) -> Dict[int, mpq]:
    if len(a) < len(b):
        a, b = b, a
    out: Dict[int, mpq] = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    return {e: v for e, v in out.items() if v}


class Poly:
    """Immutable sparse polynomial with Gaussian rational coefficients."""

    __slots__ = ("re", "im")

    def __init__(self, re: Dict[int, mpq] = None, im: Dict[int, mpq] = None):
        # Callers must hand over zero-free dicts they no longer mutate.
        self.re = re if re is not None else {}
        self.im = im if im is not None else {}

    @classmethod
    def const(cls, c) -> "Poly":
        c = GaussQ.coerce(c)
        return cls({0: c.re} if c.re else {}, {0: c.im} if c.im else {})

    @classmethod
    def monomial(cls, exp: int, c=1) -> "Poly":
        c = GaussQ.coerce(c)
        return cls({exp: c.re} if c.re else {}, {exp: c.im} if c.im else {})

    @classmethod
    def var(cls, slot: int) -> "Poly":
        return cls({1 << (slot * BITS): mpq(1)})

    @classmethod
    def z(cls, k: int) -> "Poly":
        return cls.var(z_slot(k))

    @classmethod
    def zb(cls, k: int) -> "Poly":
        return cls.var(zb_slot(k))

    @classmethod
    def t(cls) -> "Poly":
        return cls.var(T_SLOT)

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    __hash__ = None

    def exponents(self):
        return set(self.re) | set(self.im)

    def terms(self) -> Iterator[Tuple[int, GaussQ]]:
        for e in self.exponents():
            yield e, GaussQ(self.re.get(e, 0), self.im.get(e, 0))

    def coeff(self, exp: int) -> GaussQ:
        return GaussQ(self.re.get(exp, 0), self.im.get(exp, 0))

    def nterms(self) -> int:
        return len(self.exponents())

    def max_slot(self) -> int:
        top = 0
        for e in self.exponents():
            top = max(top, (e.bit_length() + BITS - 1) // BITS - 1)
        return top

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.exponents())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other:
            return self
        if not self:
            return other
        re = dict(self.re)
        _add_into(re, other.re)
        im = dict(self.im)
        _add_into(im, other.im)
        return Poly(re, im)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -v for e, v in self.re.items()}, {e: -v for e, v in self.im.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other:
            return self
        re = dict(self.re)
        _add_into(re, other.re, -1)
        im = dict(self.im)
        _add_into(im, other.im, -1)
        return Poly(re, im)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def scale(self, c) -> "Poly":
        c = GaussQ.coerce(c)
        if not c.im:
            return Poly(_scale(self.re, c.re), _scale(self.im, c.re))
        re = _scale(self.re, c.re)
        _add_into(re, _scale(self.im, c.im), -1)
        im = _scale(self.im, c.re)
        _add_into(im, _scale(self.re, c.im))
        return Poly(re, im)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Rational, GaussQ)) or type(other).__name__ == "mpq":
                return self.scale(other)
            return NotImplemented
        if not self or not other:
            return Poly()
        if not self.im and not other.im:
            return Poly(_mul(self.re, other.re))
        re = _mul(self.re, other.re) if self.re and other.re else {}
        if self.im and other.im:
            _add_into(re, _mul(self.im, other.im), -1)
        im = _mul(self.re, other.im) if self.re and other.im else {}
        if self.im and other.re:
            _add_into(im, _mul(self.im, other.re))
        return Poly(re, im)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, slot: int) -> "Poly":
        """Partial derivative with respect to the variable in ``slot``."""
        shift = slot * BITS
        unit = 1 << shift

        def _d(d):
            out = {}
            for e, v in d.items():
                p = (e >> shift) & MASK
                if p:
                    out[e - unit] = v * p
            return out

        return Poly(_d(self.re), _d(self.im))

    def dz(self, k: int) -> "Poly":
        return self.diff(z_slot(k))

    def dzb(self, k: int) -> "Poly":
        return self.diff(zb_slot(k))

    def truncate_t(self, order: int = 2) -> "Poly":
        """Drop every monomial divisible by t**order."""
        keep = lambda d: {e: v for e, v in d.items() if (e & MASK) < order}
        return Poly(keep(self.re), keep(self.im))

    def t_coeff(self, power: int) -> "Poly":
        """Coefficient of t**power, as a t-free polynomial."""
        pick = lambda d: {e - power: v for e, v in d.items() if (e & MASK) == power}
        return Poly(pick(self.re), pick(self.im))

    def conj_vars(self) -> "Poly":
        """Swap z_k and zb_k in every monomial (coefficients untouched)."""
        def swap(e):
            out = e & MASK
            e >>= BITS
            slot = 1
            while e:
                a, b = e & MASK, (e >> BITS) & MASK
                out |= (b << (slot * BITS)) | (a << ((slot + 1) * BITS))
                e >>= 2 * BITS
                slot += 2
            return out

        return Poly({swap(e): v for e, v in self.re.items()}, {swap(e): v for e, v in self.im.items()})

    def __repr__(self):
        from .textio import format_poly

        return f"Poly({format_poly(self)!r})"


ZERO = Poly()
ONE = Poly.const(1)
