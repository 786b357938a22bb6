import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import F
from salab import algebroid as al
from salab import generate as gen
from salab import serialize as ser
from salab.cech import Cochain0, Cover
from salab.forms import Form
from salab.lie import Connection, LieAlgebraSpec
from salab.serialize import LoadError, Loader

seeds = st.integers(min_value=0, max_value=10**6)
GL2 = LieAlgebraSpec(2)
N = 2


def samples(rng):
    d = al.random_string_data(rng, GL2, N, deg=1)
    c, fam, cov = gen.three_chart_cocycle(rng, GL2, N)
    return {
        "poly": gen.rand_poly(rng, N),
        "form": gen.rand_form(rng, N, 1, 1),
        "matrix": gen.rand_lieform(rng, GL2, N, 1, 0, 1),
        "vector": gen.rand_vector(rng, N),
        "connection": gen.rand_connection(rng, GL2, N, deg=1),
        "gauge": gen.rand_gauge(rng, GL2, N, deg=1),
        "string_data": d,
        "section": al.random_section(rng, GL2, N),
        "aut": gen.aut_member(rng, GL2, N),
        "gauge_element": gen.gauge_element(rng, GL2, N),
        "lelement": gen.l_element(rng, GL2, N, rng.randint(0, 2)),
        "tangent": gen.integrable_tangent(rng, al.random_string_data(rng, GL2, N, deg=1, flat20=True)),
        "cover": cov,
        "cochain1": c,
        "cochain0": Cochain0({i: gen.aut_member(rng, GL2, N) for i in (1, 2)}),
        "family": fam,
    }


@given(seeds)
def test_roundtrip_every_kind(seed):
    loader = Loader(N, GL2)
    objs = samples(random.Random(seed))
    assert set(objs) == set(ser.KINDS)
    for kind, obj in objs.items():
        assert ser.kind_of(obj) == kind
        text = json.dumps(ser.dump(obj))
        back = loader.load(kind, json.loads(text))
        assert ser.roundtrip_equal(obj, back), kind


def test_roundtrip_preserves_equality():
    rng = random.Random(3)
    loader = Loader(N, GL2)
    for kind in ("poly", "form", "matrix", "vector", "string_data", "section", "aut"):
        obj = samples(rng)[kind]
        assert loader.load(kind, ser.dump(obj)) == obj


def test_references_resolve():
    seen = []

    def resolve(name, kind):
        seen.append((name, kind))
        return F("dz1")

    loader = Loader(N, GL2, resolve)
    s = loader.load("section", {"xi": "@w"})
    assert s.xi == F("dz1") and seen == [("w", "form")]
    with pytest.raises(LoadError):
        Loader(N, GL2).load("form", "@w")


def test_load_errors():
    loader = Loader(N, GL2)
    with pytest.raises(LoadError) as e:
        loader.load("form", "dz1 + * z1")
    assert e.value.where == "dz1 + * z1" and e.value.column is not None
    with pytest.raises(LoadError):
        loader.load("matrix", [["0"]])
    with pytest.raises(LoadError):
        loader.load("vector", ["1"])
    with pytest.raises(LoadError):
        loader.load("section", {"V": ["0", "0"], "bogus": 1})
    with pytest.raises(LoadError):
        loader.load("aut", {"B": "0"})
    with pytest.raises(LoadError):
        loader.load("lelement", {"degree": True})
    with pytest.raises(LoadError):
        loader.load("lelement", {"degree": 1, "b": {"[2,0]": "dz1^dzb1"}})
    with pytest.raises(LoadError):
        loader.load("cochain0", {"data": {"1,2": {"g": "@x"}}})
    with pytest.raises(LoadError):
        loader.load("widget", {})
    with pytest.raises(LoadError):
        loader.load("poly", True)


def test_string_data_theta_forms():
    loader = Loader(N, GL2)
    th = {"theta10": [["zb1*dz1", "0"], ["0", "0"]]}
    a = loader.load("string_data", {"theta": th})
    b = loader.load("string_data", th)
    assert a == b
    with pytest.raises(LoadError):
        loader.load("string_data", {"theta": th, "theta10": th["theta10"]})


def test_cover_shorthand():
    loader = Loader(N, GL2)
    assert loader.load("cover", 3).pairs == Cover.full(3).pairs
    assert loader.load("cover", {"m": 3, "full": True}).triples == ((1, 2, 3),)
    assert loader.load("cover", {"m": 2, "pairs": [[1, 2]]}).triples == ()


def test_load_lie_variants():
    assert ser.load_lie(None).size == 2
    assert ser.load_lie(3).size == 3
    lie = ser.load_lie({"size": 2, "pairing": [{"block": [1, 2], "mu": "1/2"}]})
    assert lie.size == 2
    assert ser.dump_lie(ser.load_lie(ser.dump_lie(lie))) == ser.dump_lie(lie)
    with pytest.raises(LoadError):
        ser.load_lie("big")
    with pytest.raises(LoadError):
        ser.load_lie({"size": 2, "pairing": [{"block": [1, 2], "mu": "z1"}]})


def test_is_zero_and_coerce():
    assert ser.is_zero([Form(N), {"a": Form(N)}, ()])
    assert not ser.is_zero([Form(N), F("dz1")])
    rep = al.courant_axioms_residual(al.StringData.trivial(GL2, N), *(al.random_section(random.Random(k), GL2, N) for k in range(3)), F("z1").scalar_part())
    assert ser.is_zero(rep)
    p = F("z1").scalar_part()
    assert ser.coerce(p, "form", N) == F("z1")
    assert ser.coerce(F("z1"), "poly", N) == p
    assert ser.coerce(F("dz1"), "poly", N) == F("dz1")


def test_dump_rejects_unknown():
    with pytest.raises(TypeError):
        ser.dump(object())
    assert ser.dump(Connection.trivial(GL2, N))["theta01"] == [["0", "0"], ["0", "0"]]
