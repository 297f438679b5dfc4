import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from triact.permgroup import StabilizerChain, elements, group_order, identity, inv, is_identity, mul, orbit


def test_basics():
    p, q = (1, 2, 0), (1, 0, 2)
    assert mul(p, inv(p)) == identity(3)
    assert mul(p, q) == tuple(q[i] for i in p)
    assert is_identity(identity(4))
    assert sorted(orbit(0, [p])) == [0, 1, 2]


def test_symmetric_groups():
    for n in range(1, 7):
        gens = [tuple([1, 0] + list(range(2, n)))] if n > 1 else []
        if n > 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        assert group_order(gens, n) == (1 if n < 2 else __import__("math").factorial(n))


perm = st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.permutations(list(range(n))), min_size=0, max_size=3))
)


@settings(max_examples=80, deadline=None)
@given(perm)
def test_order_matches_enumeration(data):
    n, gens = data
    gens = [tuple(g) for g in gens]
    chain = StabilizerChain(gens, n)
    els = elements(gens, n)
    assert chain.order() == len(els)
    for g in els:
        assert chain.contains(g)


def test_membership_rejects_outsiders():
    gens = [(1, 0, 2, 3)]
    chain = StabilizerChain(gens, 4)
    assert not chain.contains((0, 1, 3, 2))
    assert chain.contains((1, 0, 2, 3))
