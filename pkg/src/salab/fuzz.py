"""Randomized invariant suite with a term-dropping shrinker.

Operations under test are always looked up as module attributes at call
time (``al.dorfman``, ``mo.s_product``, ``dg.dgla_bracket``...), so a patched
implementation is exercised by the same suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import algebroid as al
from . import dgla as dg
from . import forms as fm
from . import generate as gen
from . import lie as lb
from . import morphisms as mo
from . import serialize as ser
from .forms import Form, VectorField10
from .lie import LieAlgebraSpec, LieForm
from .poly import Poly


@dataclass(frozen=True)
class FuzzConfig:
    n: int = 2
    size: int = 2
    deg: int = 2
    cases: int = 50

    def __post_init__(self):
        if not 1 <= self.n <= 3:
            raise ValueError("n must be between 1 and 3")
        if not 1 <= self.size <= 3:
            raise ValueError("matrix size must be between 1 and 3")
        if not 0 <= self.deg <= 4:
            raise ValueError("polynomial degree must be between 0 and 4")
        if self.cases < 0:
            raise ValueError("cases must be non-negative")


@dataclass
class Check:
    name: str
    gen: Callable[[random.Random, FuzzConfig, LieAlgebraSpec], dict]
    run: Callable[[dict], Dict[str, object]]
    shrink: Tuple[str, ...] = ()
    pre: Callable[[dict], bool] = lambda w: True


@dataclass
class Counterexample:
    check: str
    case: int
    residuals: Dict[str, object]
    witness: Dict[str, object]
    dropped_terms: int = 0

    def to_dict(self):
        return {
            "check": self.check,
            "case": self.case,
            "failing": sorted(k for k, v in self.residuals.items() if not ser.is_zero(v)),
            "residuals": {k: ser.dump(v) for k, v in self.residuals.items() if not ser.is_zero(v)},
            "witness": {k: ser.dump(v) for k, v in self.witness.items()},
            "dropped_terms": self.dropped_terms,
        }


@dataclass
class FuzzReport:
    seed: int
    config: FuzzConfig
    cases_run: int = 0
    checks_run: int = 0
    counterexample: Optional[Counterexample] = None
    seconds: float = 0.0
    per_check: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self):
        out = {
            "seed": self.seed,
            "config": {"n": self.config.n, "size": self.config.size, "deg": self.config.deg, "cases": self.config.cases},
            "status": "pass" if self.ok else "fail",
            "cases_run": self.cases_run,
            "checks_run": self.checks_run,
            "seconds": round(self.seconds, 3),
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_dict()
        return out


# -- generators -------------------------------------------------------------------

def _sign(k: int) -> int:
    return -1 if k & 1 else 1


# -- checks ---------------------------------------------------------------------------

def _gen_exterior(rng, cfg, lie):
    n = cfg.n
    p, q = rng.randint(0, n), rng.randint(0, n)
    p2, q2 = rng.randint(0, n), rng.randint(0, n)
    return {"a": gen.rand_form(rng, n, p, q, cfg.deg, 2), "b": gen.rand_form(rng, n, p2, q2, cfg.deg, 2)}


def _run_exterior(w):
    a, b = w["a"], w["b"]
    da = fm.ext_d(a)
    k = a.degree if a else 0
    return {
        "d^2": fm.ext_d(da),
        "delbar^2": fm.delbar(fm.delbar(a)),
        "leibniz": fm.ext_d(fm.wedge(a, b)) - fm.wedge(da, b) - fm.wedge(a, fm.ext_d(b)) * _sign(k),
    }


def _gen_cs(rng, cfg, lie):
    n = cfg.n
    theta = gen.rand_connection(rng, lie, n, deg=1, integrable=rng.random() < 0.5)
    a = gen.rand_lieform(rng, lie, n, 1, 0, 1) + gen.rand_lieform(rng, lie, n, 0, 1, 1)
    return {"theta": theta, "a": a}


def _run_cs(w):
    theta, a = w["theta"], w["a"]
    F = lb.curvature(theta)
    moved = theta + a
    diff = lb.chern_simons(moved) - lb.chern_simons(theta) - fm.ext_d(lb.pairing_c(moved.form, theta.form))
    return {
        "dCS-c(F^F)": fm.ext_d(lb.chern_simons(theta)) - lb.pairing_c(F, F),
        "cs-difference": diff - lb.cs_difference(theta, a),
        "bianchi": lb.cov_d(theta, F),
    }


def _gen_courant(rng, cfg, lie):
    n = cfg.n
    d = al.random_string_data(rng, lie, n, deg=1)
    deg = min(cfg.deg, 2)
    secs = [al.random_section(rng, lie, n, deg) for _ in range(3)]
    phi = gen.rand_poly(rng, n, max(deg, 1), 2, min_deg=1)
    return {"data": d, "u": secs[0], "v": secs[1], "w": secs[2], "phi": phi}


def _run_courant(w):
    rep = al.courant_axioms_residual(w["data"], w["u"], w["v"], w["w"], w["phi"], bracket=al.dorfman)
    return rep.residuals()


def _gen_dolbeault(rng, cfg, lie):
    n = cfg.n
    return {
        "data": al.random_string_data(rng, lie, n, deg=1),
        "s1": al.random_section(rng, lie, n, min(cfg.deg, 2)),
        "s2": al.random_section(rng, lie, n, min(cfg.deg, 2)),
    }


def _run_dolbeault(w):
    d, s1, s2 = w["data"], w["s1"], w["s2"]
    n = d.n
    lhs = fm.delbar(Form.scalar(n, al.pairing_Q(s1, s2)))
    rhs = al.pairing_Q(al.dolbeault_Q(d, s1), s2) + al.pairing_Q(s1, al.dolbeault_Q(d, s2))
    return {
        "dbar_Q^2": al.dolbeault_Q(d, al.dolbeault_Q(d, s1)),
        "pairing": lhs - rhs,
    }


def _gen_aut(rng, cfg, lie):
    n = cfg.n
    return {"x": gen.aut_member(rng, lie, n), "y": gen.aut_member(rng, lie, n), "z": gen.aut_member(rng, lie, n)}


def _run_aut(w):
    x, y, z = w["x"], w["y"], w["z"]
    prod = mo.s_product
    xy = prod(x, y)
    left = prod(xy, z)
    right = prod(x, prod(y, z))
    one = mo.AutElement.identity(x.g.lie, x.g.n)
    inv = mo.s_inverse(x)
    ident = prod(x, inv)
    lid = prod(one, x)
    return {
        "product-membership": mo.aut_condition_residual(None, xy.g, xy.B),
        "associativity": list(mo.s_equal_residual(left, right)),
        "identity": list(mo.s_equal_residual(lid, x)),
        "inverse": list(mo.s_equal_residual(ident, one)),
    }


def _gen_gauge(rng, cfg, lie):
    n = cfg.n
    return {
        "p": al.random_string_data(rng, lie, n, deg=1),
        "x": gen.gauge_element(rng, lie, n),
        "y": gen.gauge_element(rng, lie, n),
        "z": gen.gauge_element(rng, lie, n),
    }


def _run_gauge(w):
    p, x, y, z = w["p"], w["x"], w["y"], w["z"]
    prod = dg.gauge_product
    xy = prod(x, y)
    act_l = dg.gauge_act(xy, p)
    act_r = dg.gauge_act(x, dg.gauge_act(y, p))
    left, right = prod(xy, z), prod(x, prod(y, z))
    one = dg.GaugeElement.identity(p.lie, p.n)
    ident = prod(x, dg.gauge_inverse(x))
    return {
        "action": list(dg.string_data_residual(act_l, act_r)),
        "associativity": [left.g.minus(right.g), left.a - right.a, left.B - right.B],
        "inverse": [ident.g.minus(one.g), ident.a, ident.B],
    }


def _gen_dgla(rng, cfg, lie):
    n = cfg.n
    base = al.random_string_data(rng, lie, n, deg=1, flat20=True)
    ks = [rng.randint(0, 2) for _ in range(3)]
    return {"base": base, "x": gen.l_element(rng, lie, n, ks[0]), "y": gen.l_element(rng, lie, n, ks[1]), "z": gen.l_element(rng, lie, n, ks[2])}


def _run_dgla(w):
    base, x, y, z = w["base"], w["x"], w["y"], w["z"]
    br = lambda u, v: dg.dgla_bracket(base, u, v)
    dq = lambda u: dg.d_Q(base, u)
    k, l = x.degree, y.degree
    return {
        "d_Q^2": dq(dq(x)),
        "skew": br(x, y) + br(y, x) * _sign(k * l),
        "jacobi": br(x, br(y, z)) - br(br(x, y), z) - br(y, br(x, z)) * _sign(k * l),
        "derivation": dq(br(x, y)) - br(dq(x), y) - br(x, dq(y)) * _sign(k),
    }


def _gen_mc(rng, cfg, lie):
    n = cfg.n
    return {"base": al.random_string_data(rng, lie, n, deg=1, flat20=True), "x": gen.gauge_element(rng, lie, n)}


def _run_mc(w):
    base = w["base"]
    wit, z = dg.mc_witness(base, w["x"])
    new = dg.hat_epsilon(base, wit)
    try:
        integ = list(al.integrability_residual(new))
    except al.NonIntegrableConnection:
        integ = [lb.curvature(new.theta).part(0, 2)]
    g, B = dg.iso_certificate(z)
    return {
        "mc": dg.mc_residual(base, wit),
        "deformed-integrability": integ,
        "curvature-shift": dg.curvature_shift_residual(base, wit),
        "iso-certificate": mo.iso_residual(base, new, g, B),
    }


def _gen_morphism(rng, cfg, lie):
    n = cfg.n
    d = al.random_string_data(rng, lie, n, deg=1)
    deg = min(cfg.deg, 2)
    return {
        "data": d,
        "x": gen.gauge_element(rng, lie, n),
        "s1": al.random_section(rng, lie, n, deg),
        "s2": al.random_section(rng, lie, n, deg),
    }


def _run_morphism(w):
    d, x = w["data"], w["x"]
    d2 = dg.gauge_act(x, d)
    g, B = dg.iso_certificate(x)
    m = mo.morphism_from_certificate(d, d2, g, B)
    rep = mo.morphism_report(d, d2, m, [w["s1"], w["s2"]], bracket=al.dorfman)
    rep["iso"] = mo.iso_residual(d, d2, g, B)
    return rep


CHECKS: List[Check] = [
    Check("exterior", _gen_exterior, _run_exterior, ("a", "b")),
    Check("chern-simons", _gen_cs, _run_cs, ("a",)),
    Check("courant", _gen_courant, _run_courant, ("u", "v", "w", "phi")),
    Check("dolbeault", _gen_dolbeault, _run_dolbeault, ("s1", "s2")),
    Check("morphism", _gen_morphism, _run_morphism, ("s1", "s2")),
    Check("aut-group", _gen_aut, _run_aut),
    Check("gauge-group", _gen_gauge, _run_gauge, ("x", "y", "z")),
    Check("dgla", _gen_dgla, _run_dgla, ("x", "y", "z")),
    Check("mc", _gen_mc, _run_mc, ("x",)),
]


# -- shrinking ------------------------------------------------------------------------

def _leaves(obj):
    """Flatten into a list of Poly leaves plus a rebuild function."""
    if isinstance(obj, Poly):
        return [obj], lambda l: l[0]
    if isinstance(obj, Form):
        keys = sorted(obj.terms)
        return [obj.terms[k] for k in keys], lambda l: Form(obj.n, {k: p for k, p in zip(keys, l) if p})
    if isinstance(obj, LieForm):
        parts = [_leaves(f) for row in obj.rows for f in row]
        return _combine(parts, lambda objs: LieForm(obj.lie, obj.n, [objs[i * obj.lie.size:(i + 1) * obj.lie.size] for i in range(obj.lie.size)]))
    if isinstance(obj, VectorField10):
        return list(obj.components), lambda l: VectorField10(obj.n, l)
    if isinstance(obj, al.SectionQ):
        return _combine([_leaves(obj.V), _leaves(obj.r), _leaves(obj.xi)], lambda o: al.SectionQ(*o))
    if isinstance(obj, dg.LElement):
        return _combine([_leaves(obj.alpha), _leaves(obj.b)], lambda o: dg.LElement(obj.degree, *o))
    if isinstance(obj, dg.GaugeElement):
        return _combine([_leaves(obj.a), _leaves(obj.B)], lambda o: dg.GaugeElement(obj.g, *o))
    return [], lambda l: obj


def _combine(parts, build):
    sizes = [len(p[0]) for p in parts]
    flat = [x for p in parts for x in p[0]]

    def rebuild(l):
        objs, i = [], 0
        for (leaves, rb), s in zip(parts, sizes):
            objs.append(rb(l[i:i + s]))
            i += s
        return build(objs)

    return flat, rebuild


def _drop(p: Poly, e: int) -> Poly:
    return Poly({k: v for k, v in p.re.items() if k != e}, {k: v for k, v in p.im.items() if k != e})


def _fails(check: Check, w: dict) -> Optional[Dict[str, object]]:
    try:
        if not check.pre(w):
            return None
        res = check.run(w)
    except Exception:
        return None
    return res if not all(ser.is_zero(v) for v in res.values()) else None


def shrink(check: Check, w: dict, budget: int = 400) -> Tuple[dict, Dict[str, object], int]:
    """Greedily drop monomials from the shrinkable inputs while the check still fails."""
    res = _fails(check, w)
    if res is None:
        return w, {}, 0
    dropped = 0
    changed = True
    while changed and budget > 0:
        changed = False
        for key in check.shrink:
            leaves, rebuild = _leaves(w[key])
            i = 0
            while i < len(leaves) and budget > 0:
                for e in sorted(leaves[i].exponents()):
                    if budget <= 0:
                        break
                    trial = list(leaves)
                    trial[i] = _drop(leaves[i], e)
                    try:
                        cand = dict(w)
                        cand[key] = rebuild(trial)
                    except Exception:
                        continue
                    budget -= 1
                    r = _fails(check, cand)
                    if r is not None:
                        w, res, leaves = cand, r, trial
                        dropped += 1
                        changed = True
                i += 1
    return w, res, dropped


# -- driver ----------------------------------------------------------------------------

def run_fuzz(seed: int = 0, config: Optional[FuzzConfig] = None, checks: Optional[List[str]] = None, do_shrink: bool = True) -> FuzzReport:
    cfg = config or FuzzConfig()
    lie = LieAlgebraSpec(cfg.size)
    selected = [c for c in CHECKS if checks is None or c.name in checks]
    report = FuzzReport(seed, cfg, per_check={c.name: 0 for c in selected})
    t0 = time.perf_counter()
    for case in range(cfg.cases):
        report.cases_run = case + 1
        for check in selected:
            rng = random.Random(f"{seed}:{case}:{check.name}")
            w = check.gen(rng, cfg, lie)
            try:
                res = check.run(w)
            except Exception as e:  # a crash is a counterexample too
                res = {"exception": f"{type(e).__name__}: {e}"}
            report.checks_run += 1
            report.per_check[check.name] += 1
            if not all(ser.is_zero(v) for v in res.values()):
                dropped = 0
                if do_shrink:
                    w2, res2, dropped = shrink(check, w)
                    if res2:  # crashes are not shrunk
                        w, res = w2, res2
                report.counterexample = Counterexample(check.name, case, res, w, dropped)
                report.seconds = time.perf_counter() - t0
                return report
    report.seconds = time.perf_counter() - t0
    return report
