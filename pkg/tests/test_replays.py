import dataclasses
import itertools

import numpy as np
import pytest

from nearsyn.affine import perm_inverse, permutations
from nearsyn.brandt import THETA
from nearsyn.replays import additive_replays, multiplicative_replays
from nearsyn.semigroup import FiniteSemigroup

ADD_CASES = {"1.1", "1.2", "1.3", "1.4", "2.1", "2.2", "2.3", "3.1", "3.2"}
MUL_CASES = {"1-zero", "1-nsupport", "1-singleton", "1-constant", "2-constant", "2-singleton",
             "3-singleton", "3-zero"}


@pytest.fixture(params=[2, 3], scope="module")
def A(request, A2, A3):
    return {2: A2, 3: A3}[request.param]


def test_additive_replays(A):
    r = additive_replays(A)
    assert {c.case for c in r} == ADD_CASES
    assert all(c.ok for c in r), [c for c in r if not c.ok][:5]


def test_multiplicative_replays(A):
    r = multiplicative_replays(A)
    assert {c.case for c in r} == MUL_CASES
    assert all(c.ok for c in r), [c for c in r if not c.ok][:5]


def test_replay_counts(A2, A3):
    # frozen from a run of the replays; a change means a case lost or gained parameters
    assert (len(additive_replays(A2)), len(multiplicative_replays(A2))) == (568, 752)
    assert (len(additive_replays(A3)), len(multiplicative_replays(A3))) == (19629, 20331)


def test_constant_chain(A):
    n = A.n
    for p, q in itertools.product(range(1, n + 1), repeat=2):
        s = A.add.product(A.const((1, p)), A.const((p, q)), A.const((q, 2)))
        assert s == A.const((1, 2))


def test_nsupport_chain(A):
    n = A.n
    ident = tuple(range(1, n + 1))
    for p, q in itertools.product(range(1, n + 1), repeat=2):
        for sigma in permutations(n):
            m = A.mul.product(A.nsup(1, p, ident), A.nsup(p, q, sigma),
                              A.nsup(q, 1, perm_inverse(sigma)))
            assert m == A.nsup(1, 1, ident)


def test_replays_detect_a_broken_table(A2):
    t = np.array(A2.add.table)
    x, z = A2.const((1, 2)), A2.const(THETA)
    t[t == x] = z  # no sum ever reaches xi(1,2)
    broken = FiniteSemigroup(t, A2.add.labels, None)
    r = additive_replays(dataclasses.replace(A2, add=broken))
    assert any(not c.ok for c in r)
