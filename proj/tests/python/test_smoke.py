import math
import os

import pytest

import nkc

DATA = os.environ.get("NKC_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_a2_facets_from_file():
    q = nkc.Quiver.load(os.path.join(DATA, "a2.json"))
    facets, closed = nkc.facets(q)
    assert closed
    assert len(facets) == 5
    assert all(len(f) == 5 for f in facets)


def test_dict_round_trip():
    q = nkc.Quiver.load("cambrian:RL")
    assert nkc.Quiver.from_dict(q.to_dict()) == q
    assert q.koszul_dual().koszul_dual().isomorphic(q)


def test_flip_is_an_involution():
    q = nkc.Quiver.load("reversed:2")
    facets, _ = nkc.facets(q)
    f = facets[0]
    bending = [w for w in f if any(x != 0 for x in nkc.g_vector(q, w))]
    assert len(bending) == 2
    g, added = nkc.flip(q, f, bending[0])
    back, returned = nkc.flip(q, g, added)
    assert sorted(back) == sorted(f)
    assert returned == bending[0]


def test_vectors_are_dual():
    q = nkc.Quiver.load("cambrian:R")
    for f in nkc.facets(q)[0]:
        bending = [w for w in f if any(nkc.g_vector(q, w))]
        for w in bending:
            for v in bending:
                pairing = sum(a * b for a, b in zip(nkc.g_vector(q, w), nkc.c_vector(q, f, v)))
                assert pairing == (1 if w == v else 0)


def test_pentagon():
    p = nkc.polytope(nkc.Quiver.load("cambrian:R"))
    assert len(p["vertices"]) == 5
    assert p["defining"] == 5


def test_loop():
    q = nkc.Quiver.load(os.path.join(DATA, "loop.json"))
    assert nkc.surface(q)["punctures"] == 1
    walks, complete = nkc.walks(q, 6)
    assert not complete
    fan = nkc.fan(q)
    assert fan["ok"]
    with pytest.raises(nkc.GeometryError):
        nkc.polytope(q)


def test_infinite_kissing_number():
    q = nkc.Quiver.load("cycle:1")
    facets, _ = nkc.facets(q)
    keys = sorted({w for f in facets for w in f})
    values = [nkc.kissing_number(q, a, b) for a in keys for b in keys]
    assert any(math.isinf(v) for v in values)


def test_crossings_match_kisses():
    q = nkc.Quiver.load("cambrian:RR")
    walks, complete = nkc.walks(q, 12)
    assert complete
    for a in walks:
        for b in walks:
            assert nkc.crossing_count(q, a, b) == nkc.kissing_number(q, a, b)


def test_roundtrip():
    q = nkc.Quiver.load(os.path.join(DATA, "doublepath3.json"))
    assert nkc.roundtrip(q) == {"quiver_roundtrip": True, "koszul_swap": True, "dual_dissection": True}


def test_errors():
    with pytest.raises(ValueError):
        nkc.Quiver.from_dict({"vertices": ["1"], "arrows": [{"id": "a", "src": "1", "tgt": "2"}], "relations": []})
    with pytest.raises(nkc.WalkError):
        nkc.g_vector(nkc.Quiver.load("cambrian:R"), "not a walk")


def test_corpus_surfaces():
    for name in nkc.corpus():
        inv = nkc.surface(nkc.Quiver.load(name))
        assert inv["issues"] == []
