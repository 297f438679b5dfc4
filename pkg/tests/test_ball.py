import json

import numpy as np
import pytest

from triact import BudgetExceededError, ParameterError, ball, format_token, make
from triact.ball import distance

from conftest import SHIPPED
from oracles import naive_ball


def test_t3_sizes():
    b = ball(make("t3"), None, 6)
    assert b.sphere_sizes() == [1] + [3 * 2 ** (n - 1) for n in range(1, 7)]
    assert ball(make("t3"), None, 2).n == 10


def test_radius_zero():
    b = ball(make("t3"), None, 0)
    assert b.n == 1 and b.n_edges == 0


def test_negative_radius():
    with pytest.raises(ParameterError):
        ball(make("t3"), None, -1)


@pytest.mark.parametrize("family", SHIPPED)
def test_matches_naive_bfs(family):
    g = make(family)
    R = 3 if family == "rotation-tree(4)" else 5
    b = ball(g, None, R)
    depth, arcs = naive_ball(g, g.base, R)
    assert {t: int(b.depth[i]) for i, t in enumerate(b.tokens)} == depth
    got = set()
    for i in range(b.n):
        for k in range(b.indptr[i], b.indptr[i + 1]):
            got.add((b.tokens[i], b.tokens[b.indices[k]], int(b.color[k]), int(b.orient[k])))
    assert got == {(u, v, c, o) for (u, v), (c, o) in arcs.items()}


def test_strip_radius4_hand_count():
    # layers of the doubled Z x {0,1} strip: 1, 3, 5, 5, 4
    b = ball(make("strip"), None, 4)
    assert b.sphere_sizes() == [1, 3, 5, 5, 4]
    assert b.n == 18


@pytest.mark.parametrize("family", ["t3", "theta(1)", "oriented-t3", "joined-2ngons(2)"])
def test_restrict_matches_smaller_ball(family):
    g = make(family)
    big = ball(g, None, 5)
    for r in range(5):
        small, cut = ball(g, None, r), big.restrict(r)
        assert small.tokens == cut.tokens
        assert np.array_equal(small.indptr, cut.indptr)
        assert np.array_equal(small.indices, cut.indices)
        assert np.array_equal(small.color, cut.color)
        assert np.array_equal(small.orient, cut.orient)


def test_bfs_order_ties_by_token():
    b = ball(make("theta(2)"), None, 5)
    for r in range(1, 6):
        s = [b.tokens[i] for i in b.sphere(r)]
        assert s == sorted(s)


def test_distance_equals_depth():
    g = make("joined-ngons(3)")
    b = ball(g, None, 4)
    for i, t in enumerate(b.tokens):
        assert distance(g, g.base, t) == b.depth[i] == b.distance(t)


def test_token_canonicity_by_rediscovery():
    # every path to a vertex yields the same token: all neighbor lists mirror
    for family in ("colored-t3", "theta(1)", "joined-2ngons(3)", "oriented-t3"):
        g = make(family)
        b = ball(g, None, 6)
        for t in b.tokens[: 200]:
            for w, d in g.neighbors(t):
                assert (t, d.reversed()) in g.neighbors(w)


def test_budget():
    with pytest.raises(BudgetExceededError):
        ball(make("t3"), None, 12, budget=1000)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("TRIACT_BUDGET", "50")
    with pytest.raises(BudgetExceededError):
        ball(make("t3"), None, 5)
    monkeypatch.setenv("TRIACT_BUDGET", "vertices=oops")
    with pytest.raises(ParameterError):
        ball(make("t3"), None, 1)


def test_json_export():
    b = ball(make("oriented-t3"), None, 2)
    doc = json.loads(b.to_json())
    assert doc["family"] == "oriented-t3"
    assert doc["radius"] == 2 and doc["center"] == format_token(b.center)
    assert [v["index"] for v in doc["vertices"]] == list(range(b.n))
    assert all(e["u"] < e["v"] for e in doc["edges"])
    assert len(doc["arcs"]) == len(doc["edges"])
    assert "arcs" not in ball(make("t3"), None, 1).to_dict()
    assert b.to_json() == ball(make("oriented-t3"), None, 2).to_json()


def test_json_schema():
    jsonschema = pytest.importorskip("jsonschema")
    from triact.schemas import BALL

    for family in ("theta(1)", "oriented-t3", "t3"):
        jsonschema.validate(ball(make(family), None, 3).to_dict(), BALL)


def test_dot_export():
    dot = ball(make("theta(1)"), None, 3).to_dot()
    assert dot.startswith('graph "theta(1)" {')
    assert 'color="red"' in dot and 'color="blue"' in dot
    assert dot.rstrip().endswith("}")
    assert 'dir="forward"' in ball(make("delta-p(2)"), None, 1).to_dot()
