"""Regenerate demo.json and non_mc.json from fixed seeds.

    python3 scenarios/make_demo.py
"""

import json
import os
import random

from salab import algebroid as al
from salab import dgla as dg
from salab import generate as gen
from salab import lie as lb
from salab import serialize as ser
from salab import textio
from salab.lie import LieAlgebraSpec

HERE = os.path.dirname(os.path.abspath(__file__))


def obj(kind, value):
    if isinstance(value, dict):
        return {"type": kind, **value}
    return {"type": kind, "value": value}


def demo(seed=7, n=2):
    rng = random.Random(seed)
    lie = LieAlgebraSpec(2)
    O = {}

    d = al.random_string_data(rng, lie, n, deg=1)
    O["d"] = obj("string_data", ser.dump(d))
    for k in ("u", "v", "w"):
        O[k] = obj("section", ser.dump(al.random_section(rng, lie, n, 1)))

    x = gen.gauge_element(rng, lie, n)
    d2 = dg.gauge_act(x, d)
    g, B = dg.iso_certificate(x)
    O["d2"] = obj("string_data", ser.dump(d2))
    O["g"] = obj("gauge", ser.dump(g))
    O["B"] = obj("form", ser.dump(B))

    m = gen.aut_member(rng, lie, n)
    O["aut_g"] = obj("gauge", ser.dump(m.g))
    O["aut_B"] = obj("form", ser.dump(m.B))

    theta = gen.rand_connection(rng, lie, n, deg=1)
    O["theta"] = obj("connection", ser.dump(theta))
    O["theta2"] = obj("connection", ser.dump(gen.rand_connection(rng, lie, n, deg=1)))
    O["a1"] = obj("matrix", ser.dump(gen.rand_lieform(rng, lie, n, 1, 0, 1) + gen.rand_lieform(rng, lie, n, 0, 1, 1)))

    th, h = gen.rand_gauged_pair(rng, lie, n)
    O["theta_s"] = obj("connection", ser.dump(th))
    O["sg"] = obj("gauge", ser.dump(gen.conjugate_map(h, gen.rand_gauge(rng, lie, n, 1, 1))))
    O["sh"] = obj("gauge", ser.dump(gen.conjugate_map(h, gen.rand_gauge(rng, lie, n, 1, 1))))

    c, fam, C, cov = gen.two_chart_fixture(rng, lie, n)
    O["c2"] = obj("cochain1", ser.dump(c))
    O["fam2"] = obj("family", ser.dump(fam))
    O["cov2"] = obj("cover", ser.dump(cov))
    O["C2"] = obj("form", ser.dump(C[2]))
    c3, fam3, cov3 = gen.three_chart_cocycle(rng, lie, n)
    O["c3"] = obj("cochain1", ser.dump(c3))
    O["cov3"] = obj("cover", ser.dump(cov3))
    O["h3"] = obj("cochain0", {"data": {str(i): ser.dump(gen.aut_member(rng, lie, n)) for i in (1, 2, 3)}})

    base = al.random_string_data(rng, lie, n, deg=1, flat20=True)
    O["base"] = obj("string_data", ser.dump(base))
    for name, k in (("x0", 0), ("x1", 1), ("x2", 1)):
        O[name] = obj("lelement", ser.dump(gen.l_element(rng, lie, n, k)))
    wit, _ = dg.mc_witness(base, gen.gauge_element(rng, lie, n))
    O["mc"] = obj("lelement", ser.dump(wit))
    O["beta_bar"] = obj("matrix", ser.dump(lb.delbar_theta(base.theta, gen.rand_lieform(rng, lie, n, 0, 0, 1))))
    O["xg"] = obj("gauge_element", ser.dump(gen.gauge_element(rng, lie, n)))
    O["al0"] = obj("matrix", ser.dump(gen.rand_lieform(rng, lie, n, 0, 0, 1)))
    O["a10"] = obj("matrix", ser.dump(gen.rand_lieform(rng, lie, n, 1, 0, 1)))
    O["b20"] = obj("form", ser.dump(gen.rand_form(rng, n, 2, 0, 1, 1)))
    O["tan"] = obj("tangent", ser.dump(gen.integrable_tangent(rng, base)))

    cmds = [
        {"cmd": "check-integrability", "data": "d"},
        {"cmd": "check-courant", "data": "d", "sections": ["u", "v", "w"], "phi": "z1*zb2+1"},
        {"cmd": "iso-check", "data": "d", "data2": "d2", "g": "g", "B": "B", "sections": ["u", "v", "w"]},
        {"cmd": "aut-check", "g": "aut_g", "B": "aut_B"},
        {"cmd": "cs", "theta": "theta", "as": "cs_theta"},
        {"cmd": "cs-diff", "theta": "theta", "a": "a1"},
        {"cmd": "sigma", "theta": "theta_s", "g": "sg", "h": "sh"},
        {"cmd": "cech-assemble-h", "cochain": "c2", "family": "fam2", "cover": "cov2", "C": {"2": "C2"}},
        {"cmd": "cech-cocycle", "cochain": "c3", "cover": "cov3"},
        {"cmd": "cech-coboundary", "h": "h3", "cochain": "c3", "cover": "cov3", "as": "c3h"},
        {"cmd": "cech-cocycle", "cochain": "c3h", "cover": "cov3"},
        {"cmd": "pontryagin", "theta": "theta", "theta2": "theta2"},
        {"cmd": "dq", "data": "base", "x": "x1", "as": "dx1"},
        {"cmd": "dgla-axioms", "data": "base", "elements": ["x0", "x1", "x2"]},
        {"cmd": "mc-check", "data": "base", "x": "mc"},
        {"cmd": "deform", "data": "base", "x": "mc", "as": "deformed"},
        {"cmd": "check-integrability", "data": "deformed"},
        {"cmd": "obstruction", "data": "base", "alpha": "beta_bar"},
        {"cmd": "gauge-act", "x": "xg", "data": "base", "as": "moved"},
        {"cmd": "gauge-infinitesimal", "data": "base", "alpha": "al0", "a": "a10", "b": "b20"},
        {"cmd": "phi-epsilon", "data": "base", "x": "x1", "tangent": "tan", "alpha": "al0", "a": "a10", "b": "b20"},
        {"cmd": "fuzz", "seed": 1, "n": 2, "deg": 1, "cases": 3},
    ]
    return {
        "description": "One command of every kind on seeded random data; every residual is zero.",
        "n": n,
        "lie": ser.dump_lie(lie),
        "objects": O,
        "commands": cmds,
    }


def non_mc(seed=11, n=2):
    rng = random.Random(seed)
    lie = LieAlgebraSpec(2)
    base = al.random_string_data(rng, lie, n, deg=1, flat20=True)
    wit, _ = dg.mc_witness(base, gen.gauge_element(rng, lie, n))
    # zb2 dz1^dz2^dzb1 is not dbar-closed, so the Maurer-Cartan equation breaks
    bad = dg.LElement(1, wit.alpha, wit.b + textio.parse_form("zb2*dz1^dz2^dzb1", n))
    return {
        "description": "A gauge-constructed Maurer-Cartan element with b perturbed: both checks fail.",
        "n": n,
        "lie": ser.dump_lie(lie),
        "objects": {"base": obj("string_data", ser.dump(base)), "x": obj("lelement", ser.dump(bad))},
        "commands": [{"cmd": "mc-check", "data": "base", "x": "x"}],
    }


if __name__ == "__main__":
    for name, scn in (("demo.json", demo()), ("non_mc.json", non_mc())):
        with open(os.path.join(HERE, name), "w") as fh:
            json.dump(scn, fh, indent=1)
            fh.write("\n")
