import dataclasses

import numpy as np
import pytest

from triact import Color, ColoringMismatchError, PreconditionError, ParameterError, ball, make
from triact.autos import (
    ball_autos_fixing_center,
    classify_case,
    find_isomorphism,
    local_action,
    local_orbit,
    recover_coloring,
    rooted_isomorphic,
)
from triact.ball import distance

from conftest import SHIPPED, TRIVALENT
from oracles import exhaustive_center_stabilizer_order, naive_orbit

SMALL_BALLS = [(f, r) for f in SHIPPED for r in (0, 1, 2, 3)
               if ball(make(f), None, r).n <= 12]


@pytest.mark.parametrize("family,radius", SMALL_BALLS)
@pytest.mark.parametrize("colors", [True, False])
def test_group_order_matches_exhaustive(family, radius, colors):
    g = make(family)
    b = ball(g, None, radius)
    cs = ball_autos_fixing_center(b, colors=colors)
    assert cs.order == exhaustive_center_stabilizer_order(g, g.base, radius, colors=colors)


def test_known_orders():
    assert ball_autos_fixing_center(ball(make("t3"), None, 2)).order == 48
    assert ball_autos_fixing_center(ball(make("colored-t3"), None, 2)).order == 4
    assert ball_autos_fixing_center(ball(make("t3"), None, 0)).order == 1
    big = ball_autos_fixing_center(ball(make("t3"), None, 4))
    assert big.order == 6 * 2 ** 3 * 2 ** 6 * 2 ** 12


def test_generators_are_automorphisms():
    b = ball(make("theta(1)"), None, 6)
    cs = ball_autos_fixing_center(b)
    edges = {(u, v, int(c)) for u, v, c in b.edges()}
    for p in cs.generators:
        assert p[0] == 0
        assert np.array_equal(b.depth[p], b.depth)
        moved = {(min(p[u], p[v]), max(p[u], p[v]), c) for u, v, c in edges}
        assert moved == edges


@pytest.mark.parametrize("family,n_max", [("t3", 6), ("oriented-t3", 6), ("colored-t3", 6)])
def test_tree_orbits(family, n_max):
    g = make(family)
    line = g.line
    for n in range(1, n_max + 1):
        orb = local_orbit(g, g.base, line.alpha(n), distance(g, g.base, line.alpha(n)))
        d = distance(g, g.base, line.alpha(n))
        orb2 = local_orbit(g, g.base, line.alpha(n), d + 2)
        assert orb == orb2
    t = make("t3")
    for n in range(1, 6):
        assert len(local_orbit(t, None, t.line.alpha(n), n)) == 3 * 2 ** (n - 1)
    o = make("oriented-t3")
    for n in range(1, 6):
        assert len(local_orbit(o, None, o.line.alpha(n), n)) == 2 ** n


@pytest.mark.parametrize("family", ["theta(0)", "theta(1)", "joined-2ngons(2)", "colored-t3",
                                    "joined-ngons(3)", "oriented-t3", "strip"])
def test_orbits_match_naive(family):
    g = make(family)
    for n in range(1, 5):
        t = g.line.alpha(n)
        R = distance(g, g.base, t) + 2
        assert local_orbit(g, g.base, t, R) == naive_orbit(g, g.base, t, R)


def test_orbit_monotone_in_radius():
    g = make("theta(1)")
    t = g.line.alpha(3)
    d = distance(g, g.base, t)
    sizes = [local_orbit(g, None, t, R) for R in range(d, d + 5)]
    for a, b in zip(sizes, sizes[1:]):
        assert b <= a


def test_orbit_outside_ball():
    g = make("t3")
    with pytest.raises(PreconditionError):
        local_orbit(g, None, g.line.alpha(5), 2)


def test_local_actions():
    r = local_action(make("t3"))
    assert r.order == 6 and r.fixed_neighbors == ()
    g = make("colored-t3")
    r = local_action(g)
    (red,) = [w for w, d in g.neighbors(g.base) if d.color is Color.RED]
    assert r.order == 2 and r.fixed_neighbors == (red,)
    g = make("oriented-t3")
    r = local_action(g)
    assert r.order == 2 and r.fixed_neighbors == (g.line.alpha(-1),)
    with pytest.raises(ParameterError):
        local_action(g, None, 0)


EXPECTED = {
    "t3": "CaseA",
    "oriented-t3": "CaseB",
    "colored-t3": "CaseC",
    "joined-ngons(3)": "CaseC",
    "joined-ngons(4)": "CaseC",
    "joined-2ngons(2)": "CaseC",
    "joined-2ngons(3)": "CaseC",
    "theta(0)": "CaseC",
    "theta(1)": "CaseC",
    "theta(2)": "CaseC",
    "strip": "CaseC",
    "rotation-tree(3)": "CaseA",
}


@pytest.mark.parametrize("family", sorted(EXPECTED))
def test_classify_radius_stable(family):
    g = make(family)
    for R in (3, 4):
        assert classify_case(g, R).label == EXPECTED[family]


def test_classify_details():
    c = classify_case(make("colored-t3"), 3)
    assert str(c) == "CaseC" and len(c.red_neighbors) == 1 and len(c.blue_neighbors) == 2
    assert c.to_dict()["case"] == "CaseC"
    with pytest.raises(ParameterError):
        classify_case(make("t3"), 2)
    with pytest.raises(PreconditionError):
        classify_case(make("delta-p(2)"), 3)


def test_classify_intrinsic():
    # without declared colors these graphs still show the red/blue split
    for f in ("joined-ngons(3)", "theta(1)"):
        assert classify_case(make(f), 3, intrinsic=True).label == "CaseC"
    # colored-t3 with colors erased is T_3
    assert classify_case(make("colored-t3"), 3, intrinsic=True).label == "CaseA"


def test_discrete_case():
    # joined-ngons(3) with an extra blue/red-blind view stays CaseC; a rigid graph is Discrete
    g = make("joined-2ngons(2)")
    r = local_action(g, None, 3, colors=False)
    assert r.order in (1, 2)


@pytest.mark.parametrize("family", ["colored-t3", "theta(1)", "joined-ngons(3)"])
def test_recover_coloring(family):
    g = make(family)
    rc = recover_coloring(g, 4, intrinsic=family != "colored-t3")
    assert rc.agrees_with_declared in (True, None)
    b = ball(g, None, 2)
    for u, v, c in b.edges():
        assert rc.color_of(b.tokens[u], b.tokens[v]) is c


def test_recover_coloring_mismatch():
    g = make("theta(1)")

    def swapped(v):
        return tuple((w, d._replace(color=Color.BLUE if d.color is Color.RED else Color.RED))
                     if w == g.line.alpha(0) or v == g.line.alpha(0) else (w, d)
                     for w, d in g.oracle(v))

    bad = dataclasses.replace(g, oracle=swapped)
    with pytest.raises((ColoringMismatchError, PreconditionError)):
        recover_coloring(bad, 4, intrinsic=True)


def test_recover_needs_case_c():
    with pytest.raises(PreconditionError):
        recover_coloring(make("t3"), 4)


def test_find_isomorphism_fixed_points():
    b = ball(make("t3"), None, 3)
    p = find_isomorphism(b, b, [1], [2])
    assert p is not None and p[1] == 2
    assert find_isomorphism(b, b, [1], [4]) is None  # depth 1 cannot go to depth 2
    a = ball(make("theta(0)"), None, 4)
    assert find_isomorphism(a, b) is None


def test_rooted_isomorphic_distinguishes():
    assert not rooted_isomorphic(make("theta(0)"), make("theta(1)"), 4)
    assert rooted_isomorphic(make("theta(1)"), make("theta(1)"), 5, center_h=make("theta(1)").line.alpha(3))
