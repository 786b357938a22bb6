"""Command-line front end: ``salab run <scenario>`` and ``salab fuzz``.

A scenario is a JSON file::

    {
      "n": 2,
      "lie": {"size": 2, "pairing": [{"block": [1, 2], "mu": "1"}]},
      "objects": {"d": {"type": "string_data", "theta10": [["z1*dz2", "0"], ["0", "0"]]}},
      "commands": [{"cmd": "check-courant", "data": "d", "sections": ["u", "v", "w"]}]
    }

Command arguments name objects (or results stored with ``"as"``). Where a
polynomial or form is expected, literal text is accepted too. Exit codes:
0 all pass, 1 some residual nonzero, 2 input, parse or type error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from . import algebroid as al
from . import cech as ce
from . import dgla as dg
from . import forms as fm
from . import fuzz as fz
from . import lie as lb
from . import morphisms as mo
from . import serialize as ser
from .errors import SalabError
from .forms import Form
from .lie import LieForm
from .poly import Poly


class ScenarioError(Exception):
    """Input problem; always maps to exit code 2."""

    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None):
        self.msg = msg
        self.line = line
        self.column = column
        loc = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(loc + msg)


def _line_col(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, needle: Optional[str], column: Optional[int]) -> Tuple[Optional[int], Optional[int]]:
    """Position of a string value inside the raw JSON text (first occurrence)."""
    if needle is None:
        return None, None
    for enc in (json.dumps(needle), json.dumps(needle, ensure_ascii=False)):
        k = text.find(enc)
        if k >= 0:
            return _line_col(text, k + (column or 1))
    return None, None


# -- scenario ---------------------------------------------------------------------------

@dataclass
class Scenario:
    n: int
    lie: lb.LieAlgebraSpec
    objects: Dict[str, Any]
    commands: List[dict]
    text: str = ""
    path: str = ""


def parse_scenario(text: str, path: str = "<scenario>") -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(raw, dict):
        raise ScenarioError("scenario must be a JSON object", 1, 1)
    extra = set(raw) - {"n", "lie", "objects", "commands", "description"}
    if extra:
        raise ScenarioError(f"unknown top-level fields {sorted(extra)}")
    n = raw.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ScenarioError("field 'n' must be a positive integer")
    try:
        lie = ser.load_lie(raw.get("lie"))
    except ser.LoadError as e:
        line, col = _locate(text, e.where, e.column)
        raise ScenarioError(f"lie: {e}", line, col) from None
    except (ValueError, TypeError, KeyError) as e:
        raise ScenarioError(f"lie: {e}") from None
    objects = raw.get("objects", {})
    commands = raw.get("commands", [])
    if not isinstance(objects, dict):
        raise ScenarioError("'objects' must be a JSON object")
    if not isinstance(commands, list) or any(not isinstance(c, dict) for c in commands):
        raise ScenarioError("'commands' must be a list of objects")
    return Scenario(n, lie, objects, commands, text, path)


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e.strerror}") from None
    return parse_scenario(text, path)


class Context:
    """Named objects, built on first use, plus stored command results."""

    def __init__(self, scn: Scenario):
        self.scn = scn
        self.built: Dict[str, Any] = {}
        self._building: List[str] = []
        self.loader = ser.Loader(scn.n, scn.lie, self._resolve)

    def _fail(self, name: str, err: Exception):
        if isinstance(err, ScenarioError):
            raise err
        if isinstance(err, ser.LoadError):
            line, col = _locate(self.scn.text, err.where, err.column)
            raise ScenarioError(f"object {name!r}: {err}", line, col) from None
        raise ScenarioError(f"object {name!r}: {err}") from None

    def _resolve(self, name: str, kind: str):
        return self.get(name, kind)

    def has(self, name: str) -> bool:
        return name in self.built or name in self.scn.objects

    def build(self, name: str):
        if name in self.built:
            return self.built[name]
        if name not in self.scn.objects:
            raise ScenarioError(f"unknown object {name!r}")
        if name in self._building:
            raise ScenarioError(f"object {name!r} refers to itself")
        spec = self.scn.objects[name]
        if isinstance(spec, str):
            kind, value = "form", spec
        elif isinstance(spec, dict) and "type" in spec:
            kind = spec["type"]
            value = spec["value"] if "value" in spec else {k: v for k, v in spec.items() if k != "type"}
        else:
            raise ScenarioError(f"object {name!r}: needs a 'type' field")
        if kind not in ser.KINDS:
            raise ScenarioError(f"object {name!r}: unknown type {kind!r}")
        self._building.append(name)
        try:
            obj = self.loader.load(kind, value)
        except Exception as e:  # any construction failure is an input error
            self._fail(name, e)
        finally:
            self._building.pop()
        self.built[name] = obj
        return obj

    def build_all(self):
        for name in self.scn.objects:
            self.build(name)

    def get(self, name: str, kind: str):
        obj = ser.coerce(self.build(name), kind, self.scn.n)
        if ser.kind_of(obj) != kind:
            raise ScenarioError(f"object {name!r} has type {ser.kind_of(obj)}, expected {kind}")
        return obj

    def value(self, value, kind: str, what: str):
        if isinstance(value, str):
            name = value[1:] if value.startswith("@") else value
            if self.has(name):
                return self.get(name, kind)
            if value.startswith("@") or kind not in ("poly", "form"):
                raise ScenarioError(f"{what}: unknown object {name!r}")
        try:
            return self.loader.load(kind, value)
        except ScenarioError:
            raise
        except ser.LoadError as e:
            line, col = _locate(self.scn.text, e.where, e.column)
            raise ScenarioError(f"{what}: {e}", line, col) from None
        except Exception as e:
            raise ScenarioError(f"{what}: {e}") from None


# -- commands ----------------------------------------------------------------------------

class Args:
    def __init__(self, ctx: Context, cmd: dict):
        self.ctx = ctx
        self.cmd = cmd
        self.name = cmd.get("cmd")

    def has(self, key: str) -> bool:
        return key in self.cmd

    def get(self, key: str, kind: str, default=None, required: bool = True):
        if key not in self.cmd:
            if default is not None or not required:
                return default
            raise ScenarioError(f"{self.name}: missing argument {key!r}")
        return self.ctx.value(self.cmd[key], kind, f"{self.name}.{key}")

    def get_list(self, key: str, kind: str, count: Optional[int] = None):
        vals = self.cmd.get(key)
        if not isinstance(vals, list):
            raise ScenarioError(f"{self.name}: argument {key!r} must be a list")
        if count is not None and len(vals) != count:
            raise ScenarioError(f"{self.name}: argument {key!r} needs {count} entries")
        return [self.ctx.value(v, kind, f"{self.name}.{key}") for v in vals]

    def get_int(self, key: str, default: int) -> int:
        v = self.cmd.get(key, default)
        if not isinstance(v, int) or isinstance(v, bool):
            raise ScenarioError(f"{self.name}: argument {key!r} must be an integer")
        return v


@dataclass
class Outcome:
    residuals: Dict[str, Any] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    produced: Any = None


def _integrability(d: al.StringData) -> Dict[str, Any]:
    try:
        r40, r31, r22 = al.integrability_residual(d)
    except al.NonIntegrableConnection:
        return {"F(0,2)": lb.curvature(d.theta).part(0, 2)}
    return {"(4,0)": r40, "(3,1)": r31, "(2,2)": r22}


def cmd_check_courant(a: Args) -> Outcome:
    d = a.get("data", "string_data")
    if a.has("sections"):
        u, v, w = a.get_list("sections", "section", 3)
    else:
        u, v, w = (a.get(k, "section") for k in ("u", "v", "w"))
    phi = a.get("phi", "poly", default=Poly.z(1))
    rep = al.courant_axioms_residual(d, u, v, w, phi, bracket=al.dorfman)
    return Outcome(rep.residuals())


def cmd_check_integrability(a: Args) -> Outcome:
    return Outcome(_integrability(a.get("data", "string_data")))


def cmd_iso_check(a: Args) -> Outcome:
    d, d2 = a.get("data", "string_data"), a.get("data2", "string_data")
    g, B = a.get("g", "gauge"), a.get("B", "form", default=Form(d.n))
    out = Outcome({"iso": mo.iso_residual(d, d2, g, B)})
    if a.has("sections"):
        secs = a.get_list("sections", "section")
        m = mo.morphism_from_certificate(d, d2, g, B)
        out.residuals.update(mo.morphism_report(d, d2, m, secs, bracket=al.dorfman))
    return out


def cmd_aut_check(a: Args) -> Outcome:
    theta = a.get("theta", "connection", required=False)
    g = a.get("g", "gauge")
    B = a.get("B", "form", default=Form(g.n))
    return Outcome({"aut": mo.aut_condition_residual(theta, g, B)}, produced=mo.AutElement(g, B))


def cmd_cs(a: Args) -> Outcome:
    theta = a.get("theta", "connection")
    F = lb.curvature(theta)
    cs = lb.chern_simons(theta)
    return Outcome({"dCS-c(F^F)": fm.ext_d(cs) - lb.pairing_c(F, F)}, {"CS": cs}, cs)


def cmd_cs_diff(a: Args) -> Outcome:
    theta, x = a.get("theta", "connection"), a.get("a", "matrix")
    moved = theta + x
    lhs = lb.chern_simons(moved) - lb.chern_simons(theta) - fm.ext_d(lb.pairing_c(moved.form, theta.form))
    val = lb.cs_difference(theta, x)
    return Outcome({"difference": lhs - val}, {"cs_difference": val}, val)


def cmd_sigma(a: Args) -> Outcome:
    theta = a.get("theta", "connection")
    g = a.get("g", "gauge")
    sg = lb.sigma_rep(g, theta)
    out = Outcome(values={"sigma(g)": sg}, produced=sg)
    if a.has("h"):
        h = a.get("h", "gauge")
        B = lb.sigma_product_potential(g, h, theta)
        out.values["B"] = B
        out.residuals["product"] = lb.sigma_rep(g @ h, theta) - sg - lb.sigma_rep(h, theta) - fm.ext_d(B)
    return out


def _cover(a: Args, m_hint: Optional[int] = None) -> ce.Cover:
    if a.has("cover"):
        return a.get("cover", "cover")
    if m_hint is None:
        raise ScenarioError(f"{a.name}: missing argument 'cover'")
    return ce.Cover.full(m_hint)


def _cocycle_residuals(c: ce.Cochain1, cov: ce.Cover) -> Dict[str, Any]:
    out = {}
    for (i, j, k), (g, B) in ce.cocycle_residual(c, cov).items():
        out[f"({i},{j},{k}) g"] = g
        out[f"({i},{j},{k}) B"] = B
    return out


def cmd_cech_cocycle(a: Args) -> Outcome:
    c = a.get("cochain", "cochain1")
    return Outcome(_cocycle_residuals(c, _cover(a)))


def cmd_cech_coboundary(a: Args) -> Outcome:
    h = a.get("h", "cochain0")
    cov = _cover(a, max(h.data) if h.data else None)
    if a.has("cochain"):
        c = a.get("cochain", "cochain1")
    else:
        any_x = next(iter(h.data.values()))
        c = ce.Cochain1.trivial(cov, any_x.g.lie, any_x.g.n)
    new = ce.coboundary_act(h, c, cov)
    res = _cocycle_residuals(new, cov) if ce.is_cocycle(c, cov) else {}
    return Outcome(res, {"cochain": new}, new)


def cmd_cech_assemble_h(a: Args) -> Outcome:
    c = a.get("cochain", "cochain1")
    fam = a.get("family", "family")
    cov = _cover(a)
    raw = a.cmd.get("C", {})
    if not isinstance(raw, dict):
        raise ScenarioError(f"{a.name}: argument 'C' must map chart indices to forms")
    C = {}
    for i in range(1, cov.m + 1):
        v = raw.get(str(i))
        C[i] = a.ctx.value(v, "form", f"{a.name}.C.{i}") if v is not None else Form(a.ctx.scn.n)
    rep = ce.assemble_H(c, fam, C, cov)
    res = {}
    for (i, j), v in rep.overlap_residual.items():
        res[f"overlap ({i},{j})"] = v
    for (i, j), v in rep.globality_residual.items():
        res[f"globality ({i},{j})"] = v
    for i, v in rep.integrability_residual.items():
        res[f"integrability {i}"] = v
    return Outcome(res, {f"H{i}": h for i, h in rep.H.items()})


def cmd_pontryagin(a: Args) -> Outcome:
    theta = a.get("theta", "connection")
    p = ce.pontryagin_rep(theta)
    out = Outcome({"closed": fm.ext_d(p)}, {"c(F^F)": p}, p)
    if a.has("theta2"):
        t2 = a.get("theta2", "connection")
        pot = ce.connection_change_potential(theta, t2)
        out.values["potential"] = pot
        out.residuals["change"] = ce.pontryagin_rep(t2) - p - fm.ext_d(pot)
    return out


def cmd_dq(a: Args) -> Outcome:
    d, x = a.get("data", "string_data"), a.get("x", "lelement")
    y = dg.d_Q(d, x)
    return Outcome({"d_Q^2": dg.d_Q(d, y)}, {"d_Q x": y}, y)


def cmd_dgla_axioms(a: Args) -> Outcome:
    d = a.get("data", "string_data")
    x, y, z = a.get_list("elements", "lelement", 3)
    w = {"base": d, "x": x, "y": y, "z": z}
    return Outcome(fz._run_dgla(w))


def cmd_mc_check(a: Args) -> Outcome:
    d, x = a.get("data", "string_data"), a.get("x", "lelement")
    res = dg.mc_residual(d, x)
    new = dg.hat_epsilon(d, x)
    out = Outcome({"mc": res})
    out.residuals.update({f"deformed {k}": v for k, v in _integrability(new).items()})
    if not res:
        out.residuals["curvature-shift"] = dg.curvature_shift_residual(d, x)
    return out


def cmd_deform(a: Args) -> Outcome:
    d, x = a.get("data", "string_data"), a.get("x", "lelement")
    res = dg.mc_residual(d, x)
    if res:
        return Outcome({"mc": res})
    new = dg.deformed_data(d, x, check=False)
    out = Outcome({"mc": res}, {"deformed": new}, new)
    out.residuals.update({f"deformed {k}": v for k, v in _integrability(new).items()})
    return out


def cmd_obstruction(a: Args) -> Outcome:
    d, alpha = a.get("data", "string_data"), a.get("alpha", "matrix")
    rep = dg.obstruction_rep(d, alpha)
    return Outcome({"closed": fm.ext_d(rep)}, {"obstruction": rep}, rep)


def cmd_gauge_act(a: Args) -> Outcome:
    x, d = a.get("x", "gauge_element"), a.get("data", "string_data")
    new = dg.gauge_act(x, d)
    g, B = dg.iso_certificate(x)
    out = Outcome({"iso": mo.iso_residual(d, new, g, B)}, {"result": new}, new)
    out.residuals.update({f"result {k}": v for k, v in _integrability(new).items()})
    return out


def cmd_gauge_infinitesimal(a: Args) -> Outcome:
    d = a.get("data", "string_data")
    alpha = a.get("alpha", "matrix", default=LieForm.zero(d.lie, d.n))
    x = a.get("a", "matrix", default=LieForm.zero(d.lie, d.n))
    b = a.get("b", "form", default=Form(d.n))
    first, zeroth = dg.dual_action_residual(d, alpha, x, b)
    L = dg.infinitesimal_action(d, alpha, x, b)
    return Outcome({"first-order": first, "zeroth-order": list(zeroth)}, {"L": L}, L)


def cmd_phi_epsilon(a: Args) -> Outcome:
    d = a.get("data", "string_data")
    out = Outcome()
    if a.has("x"):
        x = a.get("x", "lelement")
        out.residuals["phi(d eps0 x) - x"] = dg.phi_map(d, dg.d_hat_epsilon0(x)) - x
    if a.has("tangent"):
        t = a.get("tangent", "tangent")
        r0, r1 = dg.tangent_integrability_residual(d, t)
        out.residuals["tangent integrability"] = [r0, r1]
        img = dg.phi_map(d, t)
        out.values["phi(tangent)"] = img
        out.residuals["d_Q phi(tangent)"] = dg.d_Q(d, img)
    if a.has("alpha") or a.has("a") or a.has("b"):
        alpha = a.get("alpha", "matrix", default=LieForm.zero(d.lie, d.n))
        x = a.get("a", "matrix", default=LieForm.zero(d.lie, d.n))
        b = a.get("b", "form", default=Form(d.n))
        L = dg.infinitesimal_action(d, alpha, x, b)
        out.residuals["phi(L) + d_Q(alpha, b)"] = dg.phi_map(d, L) + dg.d_Q(d, dg.LElement(0, alpha, b))
    if not out.residuals:
        raise ScenarioError(f"{a.name}: give at least one of 'x', 'tangent' or 'alpha'/'a'/'b'")
    return out


def cmd_fuzz(a: Args) -> Outcome:
    cfg = fz.FuzzConfig(
        n=a.get_int("n", 2), size=a.get_int("size", 2), deg=a.get_int("deg", 2), cases=a.get_int("cases", 20)
    )
    rep = fz.run_fuzz(a.get_int("seed", 0), cfg)
    res = {}
    if rep.counterexample is not None:
        res = {f"{rep.counterexample.check} {k}": v for k, v in rep.counterexample.residuals.items()}
        return Outcome(res, {"fuzz": rep.to_dict()})
    return Outcome({}, {"cases_run": rep.cases_run, "checks_run": rep.checks_run})


COMMANDS: Dict[str, Callable[[Args], Outcome]] = {
    "check-courant": cmd_check_courant,
    "check-integrability": cmd_check_integrability,
    "iso-check": cmd_iso_check,
    "aut-check": cmd_aut_check,
    "cs": cmd_cs,
    "cs-diff": cmd_cs_diff,
    "sigma": cmd_sigma,
    "cech-cocycle": cmd_cech_cocycle,
    "cech-coboundary": cmd_cech_coboundary,
    "cech-assemble-h": cmd_cech_assemble_h,
    "pontryagin": cmd_pontryagin,
    "dq": cmd_dq,
    "dgla-axioms": cmd_dgla_axioms,
    "mc-check": cmd_mc_check,
    "deform": cmd_deform,
    "obstruction": cmd_obstruction,
    "gauge-act": cmd_gauge_act,
    "gauge-infinitesimal": cmd_gauge_infinitesimal,
    "phi-epsilon": cmd_phi_epsilon,
    "fuzz": cmd_fuzz,
}


# -- reports ----------------------------------------------------------------------------

@dataclass
class CommandReport:
    index: int
    cmd: str
    status: str
    residuals: Dict[str, Any] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0
    error: Optional[str] = None

    def to_dict(self, timing: bool = True):
        out = {
            "index": self.index,
            "cmd": self.cmd,
            "status": self.status,
            "residuals": {k: ser.dump(v) for k, v in self.residuals.items()},
            "values": {k: ser.dump(v) for k, v in self.values.items()},
        }
        if self.error is not None:
            out["error"] = self.error
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class Report:
    path: str
    commands: List[CommandReport] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.error is not None or any(c.status == "error" for c in self.commands):
            return 2
        if any(c.status == "fail" for c in self.commands):
            return 1
        return 0

    @property
    def status(self) -> str:
        return {0: "pass", 1: "fail", 2: "error"}[self.exit_code]

    def to_dict(self, timing: bool = True):
        out = {"scenario": self.path, "status": self.status, "exit_code": self.exit_code}
        if self.error is not None:
            out["error"] = self.error
        out["commands"] = [c.to_dict(timing) for c in self.commands]
        return out


def run_command(ctx: Context, index: int, cmd: dict) -> CommandReport:
    name = cmd.get("cmd")
    t0 = time.perf_counter()
    if name not in COMMANDS:
        return CommandReport(index, str(name), "error", error=f"unknown command {name!r}")
    try:
        out = COMMANDS[name](Args(ctx, cmd))
    except ScenarioError as e:
        return CommandReport(index, name, "error", error=str(e), seconds=time.perf_counter() - t0)
    except (SalabError, ValueError, TypeError) as e:
        return CommandReport(index, name, "error", error=f"{type(e).__name__}: {e}", seconds=time.perf_counter() - t0)
    dt = time.perf_counter() - t0
    status = "pass" if all(ser.is_zero(v) for v in out.residuals.values()) else "fail"
    target = cmd.get("as")
    if target is not None:
        if not isinstance(target, str) or target in ctx.scn.objects:
            return CommandReport(index, name, "error", error=f"cannot store result as {target!r}")
        if out.produced is None:
            return CommandReport(index, name, "error", error=f"{name} produces no object to store")
        ctx.built[target] = out.produced
    return CommandReport(index, name, status, out.residuals, out.values, dt)


def run_scenario(scn: Scenario, stop_on_fail: bool = False) -> Report:
    rep = Report(scn.path)
    ctx = Context(scn)
    try:
        ctx.build_all()
    except ScenarioError as e:
        rep.error = str(e)
        return rep
    for i, cmd in enumerate(scn.commands, 1):
        cr = run_command(ctx, i, cmd)
        rep.commands.append(cr)
        if stop_on_fail and cr.status != "pass":
            break
    return rep


def run(path: str, stop_on_fail: bool = False) -> Report:
    try:
        scn = load_scenario(path)
    except ScenarioError as e:
        return Report(path, error=str(e))
    return run_scenario(scn, stop_on_fail)


def format_text(rep: Report, timing: bool = True) -> str:
    lines = []
    if rep.error is not None:
        lines.append(f"error: {rep.path}: {rep.error}")
    for c in rep.commands:
        t = f" ({c.seconds:.3f} s)" if timing else ""
        lines.append(f"[{c.status.upper()}] {c.index} {c.cmd}{t}")
        if c.error:
            lines.append(f"    {c.error}")
        for k, v in c.residuals.items():
            if not ser.is_zero(v):
                lines.append(f"    {k}: {json.dumps(ser.dump(v))}")
    counts = {s: sum(1 for c in rep.commands if c.status == s) for s in ("pass", "fail", "error")}
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['error']} errors; exit {rep.exit_code}")
    return "\n".join(lines)


def format_fuzz_text(rep: fz.FuzzReport) -> str:
    d = rep.to_dict()
    head = f"fuzz seed={rep.seed} n={rep.config.n} size={rep.config.size} deg={rep.config.deg}"
    if rep.ok:
        return f"{head}: pass ({rep.cases_run} cases, {rep.checks_run} checks)"
    ce_ = d["counterexample"]
    lines = [f"{head}: counterexample in {ce_['check']} at case {ce_['case']} ({', '.join(ce_['failing'])})"]
    for k, v in ce_["residuals"].items():
        lines.append(f"    residual {k}: {json.dumps(v)}")
    for k, v in ce_["witness"].items():
        lines.append(f"    witness {k}: {json.dumps(v)}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="salab", description="Exact checks for split string algebroids.")
    sub = ap.add_subparsers(dest="command", required=True)
    pr = sub.add_parser("run", help="run a scenario file")
    pr.add_argument("file")
    pr.add_argument("--format", choices=("text", "json"), default="text")
    pr.add_argument("--stop-on-fail", action="store_true")
    pr.add_argument("--no-timing", action="store_true", help="omit timings so reports are byte-stable")
    pf = sub.add_parser("fuzz", help="run the randomized invariant suite")
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--n", type=int, default=2)
    pf.add_argument("--size", type=int, default=2)
    pf.add_argument("--deg", type=int, default=2)
    pf.add_argument("--cases", type=int, default=50)
    pf.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args(argv)

    if args.command == "run":
        rep = run(args.file, args.stop_on_fail)
        timing = not args.no_timing
        if args.format == "json":
            print(json.dumps(rep.to_dict(timing), indent=2))
        else:
            print(format_text(rep, timing))
        return rep.exit_code

    try:
        cfg = fz.FuzzConfig(n=args.n, size=args.size, deg=args.deg, cases=args.cases)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rep = fz.run_fuzz(args.seed, cfg)
    if args.format == "json":
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(format_fuzz_text(rep))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
