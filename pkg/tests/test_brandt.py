import pytest

import oracles
from nearsyn.brandt import (THETA, IndexOutOfRange, brandt_add, brandt_semigroup, decode,
                            elements, encode, inverse)


def test_add_rule():
    assert brandt_add(2, (1, 2), (2, 1)) == (1, 1)
    assert brandt_add(2, (1, 2), (1, 2)) == THETA
    assert brandt_add(2, THETA, (2, 2)) == THETA
    assert brandt_add(2, (2, 2), THETA) == THETA


def test_add_rejects_out_of_range():
    with pytest.raises(IndexOutOfRange):
        brandt_add(2, (1, 3), (1, 1))


@pytest.mark.parametrize("n,identity", [(1, 0), (2, None), (3, None)])
def test_brandt_semigroup(n, identity):
    B = brandt_semigroup(n)
    t = B.table.tolist()
    assert B.size == n * n + 1
    assert oracles.is_associative(t)
    assert oracles.identities(t) == ([] if identity is None else [identity])
    assert B.identity == identity
    z = n * n
    assert all(t[z][x] == z and t[x][z] == z for x in range(B.size))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_encoding_round_trip(n):
    for i, a in enumerate(elements(n)):
        assert encode(n, a) == i and decode(n, i) == a
    assert encode(n, (1, n)) == n - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unique_inverses(n):
    els = [a for a in elements(n) if a != THETA]
    for a in els:
        invs = [x for x in elements(n)
                if brandt_add(n, brandt_add(n, a, x), a) == a
                and brandt_add(n, brandt_add(n, x, a), x) == x]
        assert invs == [inverse(n, a)] == [(a[1], a[0])]


def test_labels():
    assert brandt_semigroup(2).labels == ("(1,1)", "(1,2)", "(2,1)", "(2,2)", "theta")
