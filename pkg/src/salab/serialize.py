"""JSON-compatible encoding of every object kind used in scenario files.

``dump`` turns an object into plain lists, dicts and strings; ``load`` reads
that structure back. The two round-trip exactly. Inside ``load`` a string of
the form ``"@name"`` is handed to the resolver, so scenario objects can refer
to each other.
"""

from __future__ import annotations

from typing import Any, Callable, Optional

from . import textio
from .algebroid import QForm, SectionQ, StringData, CourantReport
from .cech import Cochain0, Cochain1, ConnectionFamily, Cover
from .dgla import GaugeElement, LElement, TangentPair
from .forms import Form, VectorField10
from .lie import Connection, GaugeMap, LieAlgebraSpec, LieForm
from .morphisms import AutElement
from .poly import GaussQ, Poly

Resolver = Callable[[str, str], Any]


class LoadError(ValueError):
    """Bad structure or value; ``where`` is the offending string, if any."""

    def __init__(self, msg: str, where: Optional[str] = None, column: Optional[int] = None):
        super().__init__(msg)
        self.where = where
        self.column = column


# -- dumping --------------------------------------------------------------------

def _matrix(a: LieForm):
    return [[textio.format_form(f) for f in row] for row in a.rows]


def _poly_matrix(m):
    return [[textio.format_poly(p) for p in row] for row in m]


def dump_lie(lie: LieAlgebraSpec):
    return {
        "size": lie.size,
        "pairing": [{"block": list(idx), "mu": textio.format_gauss(mu)} for idx, mu in lie.blocks],
    }


def dump_leq(b: Form):
    return {f"[{p},{q}]": textio.format_form(b.component(p, q)) for p, q in sorted(b.bidegrees(), reverse=True)}


def dump(obj) -> Any:
    if isinstance(obj, Poly):
        return textio.format_poly(obj)
    if isinstance(obj, Form):
        return textio.format_form(obj)
    if isinstance(obj, GaussQ):
        return textio.format_gauss(obj)
    if isinstance(obj, LieForm):
        return _matrix(obj)
    if isinstance(obj, VectorField10):
        return [textio.format_poly(p) for p in obj.components]
    if isinstance(obj, Connection):
        return {"theta10": _matrix(obj.theta10), "theta01": _matrix(obj.theta01)}
    if isinstance(obj, GaugeMap):
        return {"g": _poly_matrix(obj.g), "g_inv": _poly_matrix(obj.g_inv), "holomorphic": obj.holomorphic}
    if isinstance(obj, StringData):
        out = dump(obj.theta)
        out.update({"H30": dump(obj.H30), "H21": dump(obj.H21)})
        return out
    if isinstance(obj, SectionQ):
        return {"V": dump(obj.V), "r": dump(obj.r), "xi": dump(obj.xi)}
    if isinstance(obj, QForm):
        return {"q": obj.q, "V": [dump(f) for f in obj.V], "r": dump(obj.r), "xi": dump(obj.xi)}
    if isinstance(obj, AutElement):
        return {"g": dump(obj.g), "B": dump(obj.B)}
    if isinstance(obj, GaugeElement):
        return {"g": dump(obj.g), "a": dump(obj.a), "B": dump(obj.B)}
    if isinstance(obj, LElement):
        return {"degree": obj.degree, "alpha": dump(obj.alpha), "b": dump_leq(obj.b)}
    if isinstance(obj, TangentPair):
        return {"Hdot": dump(obj.Hdot), "thetadot": dump(obj.thetadot)}
    if isinstance(obj, Cover):
        return {"m": obj.m, "pairs": [list(p) for p in obj.pairs], "triples": [list(t) for t in obj.triples]}
    if isinstance(obj, Cochain1):
        out = {"data": {f"{i},{j}": dump(x) for (i, j), x in sorted(obj.data.items())}}
        if obj.theta0 is not None:
            out["theta0"] = dump(obj.theta0)
        return out
    if isinstance(obj, Cochain0):
        return {"data": {str(i): dump(x) for i, x in sorted(obj.data.items())}}
    if isinstance(obj, ConnectionFamily):
        return {"data": {str(i): dump(x) for i, x in sorted(obj.data.items())}}
    if isinstance(obj, CourantReport):
        return {k: dump(v) for k, v in obj.residuals().items()}
    if isinstance(obj, LieAlgebraSpec):
        return dump_lie(obj)
    if isinstance(obj, (list, tuple)):
        return [dump(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): dump(v) for k, v in obj.items()}
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def is_zero(obj) -> bool:
    """Zero test for any residual payload."""
    if isinstance(obj, (list, tuple)):
        return all(is_zero(x) for x in obj)
    if isinstance(obj, dict):
        return all(is_zero(x) for x in obj.values())
    if isinstance(obj, CourantReport):
        return obj.ok
    return not obj


# -- loading --------------------------------------------------------------------

KINDS = (
    "poly", "form", "matrix", "vector", "connection", "gauge", "string_data", "section",
    "aut", "gauge_element", "lelement", "tangent", "cover", "cochain1", "cochain0", "family",
)


class Loader:
    """Builds objects for one chart dimension and Lie algebra."""

    def __init__(self, n: int, lie: LieAlgebraSpec, resolve: Optional[Resolver] = None):
        self.n = n
        self.lie = lie
        self.resolve = resolve

    def _text(self, value) -> str:
        if isinstance(value, bool):
            raise LoadError(f"expected an expression, got {value!r}")
        if isinstance(value, (int,)):
            return str(value)
        if not isinstance(value, str):
            raise LoadError(f"expected an expression string, got {type(value).__name__}")
        return value

    def _ref(self, value, kind: str):
        if isinstance(value, str) and value.startswith("@"):
            if self.resolve is None:
                raise LoadError(f"reference {value} cannot be resolved here", where=value)
            return True, self.resolve(value[1:], kind)
        return False, None

    def load(self, kind: str, value):
        hit, obj = self._ref(value, kind)
        if hit:
            return obj
        fn = getattr(self, "_load_" + kind, None)
        if fn is None:
            raise LoadError(f"unknown object type {kind!r}")
        return fn(value)

    def _parse(self, value, as_poly: bool):
        text = self._text(value)
        try:
            return textio.parse_poly(text, self.n) if as_poly else textio.parse_form(text, self.n)
        except textio.ParseError as e:
            raise LoadError(e.msg, where=text, column=e.column) from None

    def _load_poly(self, value) -> Poly:
        return self._parse(value, True)

    def _load_form(self, value) -> Form:
        return self._parse(value, False)

    def _rows(self, value, what: str):
        k = self.lie.size
        if not isinstance(value, list) or len(value) != k or any(not isinstance(r, list) or len(r) != k for r in value):
            raise LoadError(f"{what} must be a {k}x{k} list of lists")
        return value

    def _load_matrix(self, value) -> LieForm:
        rows = self._rows(value, "matrix")
        return LieForm(self.lie, self.n, [[self.load("form", x) for x in r] for r in rows])

    def _load_vector(self, value) -> VectorField10:
        if not isinstance(value, list) or len(value) != self.n:
            raise LoadError(f"vector field must list {self.n} components")
        return VectorField10(self.n, [self.load("poly", x) for x in value])

    def _fields(self, value, required, optional=()):
        if not isinstance(value, dict):
            raise LoadError(f"expected an object with fields {list(required)}")
        extra = set(value) - set(required) - set(optional) - {"type"}
        if extra:
            raise LoadError(f"unexpected fields {sorted(extra)}")
        missing = [f for f in required if f not in value]
        if missing:
            raise LoadError(f"missing fields {missing}")
        return value

    def _matrix_field(self, v, key):
        return self.load("matrix", v[key]) if key in v else LieForm.zero(self.lie, self.n)

    def _load_connection(self, value) -> Connection:
        v = self._fields(value, (), ("theta10", "theta01"))
        return Connection(self._matrix_field(v, "theta10"), self._matrix_field(v, "theta01"))

    def _load_gauge(self, value) -> GaugeMap:
        v = self._fields(value, ("g", "g_inv"), ("holomorphic",))
        g = [[self.load("poly", x) for x in r] for r in self._rows(v["g"], "g")]
        gi = [[self.load("poly", x) for x in r] for r in self._rows(v["g_inv"], "g_inv")]
        return GaugeMap(self.lie, self.n, g, gi, holomorphic=bool(v.get("holomorphic", False)))

    def _load_string_data(self, value) -> StringData:
        v = self._fields(value, (), ("theta", "theta10", "theta01", "H30", "H21"))
        if "theta" in v:
            if "theta10" in v or "theta01" in v:
                raise LoadError("give either theta or theta10/theta01")
            theta = self.load("connection", v["theta"])
        else:
            theta = Connection(self._matrix_field(v, "theta10"), self._matrix_field(v, "theta01"))
        H30 = self.load("form", v["H30"]) if "H30" in v else Form(self.n)
        H21 = self.load("form", v["H21"]) if "H21" in v else Form(self.n)
        return StringData(theta, H30, H21)

    def _load_section(self, value) -> SectionQ:
        v = self._fields(value, (), ("V", "r", "xi"))
        V = self.load("vector", v["V"]) if "V" in v else VectorField10.zero(self.n)
        r = self._matrix_field(v, "r")
        xi = self.load("form", v["xi"]) if "xi" in v else Form(self.n)
        return SectionQ(V, r, xi)

    def _load_aut(self, value) -> AutElement:
        v = self._fields(value, ("g",), ("B",))
        B = self.load("form", v["B"]) if "B" in v else Form(self.n)
        return AutElement(self.load("gauge", v["g"]), B)

    def _load_gauge_element(self, value) -> GaugeElement:
        v = self._fields(value, (), ("g", "a", "B"))
        g = self.load("gauge", v["g"]) if "g" in v else GaugeMap.identity(self.lie, self.n)
        B = self.load("form", v["B"]) if "B" in v else Form(self.n)
        return GaugeElement(g, self._matrix_field(v, "a"), B)

    def _load_leq(self, value) -> Form:
        if not isinstance(value, dict):
            return self.load("form", value)
        out = Form(self.n)
        for key, text in value.items():
            try:
                p, q = (int(s) for s in key.strip().strip("[]").split(","))
            except ValueError:
                raise LoadError(f"component key {key!r} must read [p,q]") from None
            f = self.load("form", text)
            if f.bidegrees() - {(p, q)}:
                raise LoadError(f"component {key} has bidegrees {sorted(f.bidegrees())}")
            out = out + f
        return out

    def _load_lelement(self, value) -> LElement:
        v = self._fields(value, ("degree",), ("alpha", "b"))
        k = v["degree"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise LoadError("degree must be an integer")
        b = self._load_leq(v["b"]) if "b" in v else Form(self.n)
        return LElement(k, self._matrix_field(v, "alpha"), b)

    def _load_tangent(self, value) -> TangentPair:
        v = self._fields(value, (), ("Hdot", "thetadot"))
        H = self.load("form", v["Hdot"]) if "Hdot" in v else Form(self.n)
        return TangentPair(H, self._matrix_field(v, "thetadot"))

    def _load_cover(self, value) -> Cover:
        if isinstance(value, int) and not isinstance(value, bool):
            return Cover.full(value)
        v = self._fields(value, ("m",), ("pairs", "triples", "full"))
        if v.get("full"):
            return Cover.full(v["m"])
        pairs = tuple(tuple(p) for p in v.get("pairs", []))
        triples = tuple(tuple(t) for t in v.get("triples", []))
        return Cover(v["m"], pairs, triples)

    @staticmethod
    def _index_key(key: str, size: int):
        try:
            parts = tuple(int(s) for s in key.split(","))
        except ValueError:
            parts = ()
        if len(parts) != size:
            raise LoadError(f"index key {key!r} must list {size} chart indices")
        return parts if size > 1 else parts[0]

    def _load_cochain1(self, value) -> Cochain1:
        v = self._fields(value, ("data",), ("theta0",))
        theta0 = self.load("connection", v["theta0"]) if "theta0" in v else None
        data = {self._index_key(k, 2): self.load("aut", x) for k, x in v["data"].items()}
        return Cochain1(data, theta0)

    def _load_cochain0(self, value) -> Cochain0:
        v = self._fields(value, ("data",))
        return Cochain0({self._index_key(k, 1): self.load("aut", x) for k, x in v["data"].items()})

    def _load_family(self, value) -> ConnectionFamily:
        v = self._fields(value, ("data",))
        return ConnectionFamily({self._index_key(k, 1): self.load("connection", x) for k, x in v["data"].items()})


def load_lie(value) -> LieAlgebraSpec:
    if value is None:
        return LieAlgebraSpec(2)
    if isinstance(value, int) and not isinstance(value, bool):
        return LieAlgebraSpec(value)
    if not isinstance(value, dict) or "size" not in value:
        raise LoadError("lie must be a matrix size or {size, pairing}")
    blocks = None
    if "pairing" in value:
        blocks = []
        for b in value["pairing"]:
            mu = b.get("mu", "1")
            try:
                c = textio.parse_poly(str(mu), 1)
            except textio.ParseError as e:
                raise LoadError(e.msg, where=str(mu), column=e.column) from None
            if not c.is_constant():
                raise LoadError("pairing weight must be a number", where=str(mu))
            blocks.append((b["block"], c.coeff(0)))
    return LieAlgebraSpec(int(value["size"]), blocks)


def kind_of(obj) -> str:
    table = [
        (Poly, "poly"), (Form, "form"), (LieForm, "matrix"), (VectorField10, "vector"),
        (Connection, "connection"), (GaugeMap, "gauge"), (StringData, "string_data"),
        (SectionQ, "section"), (AutElement, "aut"), (GaugeElement, "gauge_element"),
        (LElement, "lelement"), (TangentPair, "tangent"), (Cover, "cover"),
        (Cochain1, "cochain1"), (Cochain0, "cochain0"), (ConnectionFamily, "family"),
    ]
    for cls, name in table:
        if isinstance(obj, cls):
            return name
    return type(obj).__name__


def roundtrip_equal(a, b) -> bool:
    """Structural equality on dumped form (covers cochains, which lack __eq__)."""
    return dump(a) == dump(b)


def coerce(obj, kind: str, n: int):
    """Allow a poly where a form is wanted and a form of degree 0 where a poly is wanted."""
    if kind == "form" and isinstance(obj, Poly):
        return Form.scalar(n, obj)
    if kind == "poly" and isinstance(obj, Form) and obj.bidegrees() <= {(0, 0)}:
        return obj.scalar_part()
    return obj


__all__ = ["dump", "dump_lie", "load_lie", "Loader", "LoadError", "KINDS", "kind_of", "is_zero", "coerce", "roundtrip_equal"]
