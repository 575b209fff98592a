import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import small_corpus, transformation_semigroups
from nearsyn.brandt import THETA, brandt_semigroup
from nearsyn.semigroup import Congruence, find_isomorphism, is_compatible, quotient, validate_semigroup
from nearsyn.syntactic import (EMPTY, ContextMode, DisjunctiveCertificate, InvalidForN1,
                               Separation, atoms, decide_syntactic, is_disjunctive,
                               replay_certificate, subset_d, subset_p, syntactic_congruence)

MODES = list(ContextMode)


def as_pairs(c: Congruence):
    k = c.size
    return {(x, y) for x in range(k) for y in range(k) if c.related(x, y)}


@pytest.mark.parametrize("mode", MODES)
def test_whole_carrier_gives_universal(mode, A2):
    c = syntactic_congruence(A2.add, range(29), mode)
    assert c == Congruence.universal(29)


@pytest.mark.parametrize("mode", MODES)
def test_a1_add_singleton_subset_is_disjunctive(mode, A1):
    t = A1.add.table.tolist()
    D = [A1.nsup(1, 1)]
    assert oracles.is_disjunctive(t, D, monoid=mode is ContextMode.MONOID)
    assert syntactic_congruence(A1.add, D, mode).is_equality()


@pytest.mark.parametrize("mode", MODES)
def test_subset_p_equality(mode, A2):
    c = syntactic_congruence(A2.add, subset_p(A2), mode)
    assert c.block_count == 29
    q = quotient(A2.add, c)
    assert find_isomorphism(q, A2.add) is not None


def test_subset_p_oracle_n2(A2):
    t = A2.add.table.tolist()
    for monoid in (True, False):
        assert oracles.is_disjunctive(t, subset_p(A2), monoid)


def test_subset_d_oracle_n2(A2):
    t = A2.mul.table.tolist()
    for monoid in (True, False):
        assert oracles.is_disjunctive(t, subset_d(A2), monoid)


def test_subset_sizes(A1, A2, A3):
    assert len(subset_p(A2)) == 5 and len(subset_p(A3)) == 10
    assert len(subset_d(A2)) == 5 and len(subset_d(A3)) == 10
    with pytest.raises(InvalidForN1):
        subset_p(A1)
    assert subset_d(A1) == sorted([A1.nsup(1, 1), A1.const((1, 1))])
    assert A2.const(THETA) not in subset_d(A2)
    labels = {A2.add.labels[i] for i in subset_p(A2)}
    assert labels == {"xi(1,2)", "(1,1)->(1,1)", "(1,2)->(1,1)", "(2,1)->(1,1)", "(2,2)->(1,1)"}


@pytest.mark.parametrize("mode", MODES)
def test_empty_subset_not_disjunctive(mode):
    res = is_disjunctive(brandt_semigroup(2), [], mode)
    assert not res.disjunctive and res.merged == (0, 1)


@pytest.mark.parametrize("mode", MODES)
def test_disjunctive_certificates_replay(mode, A2):
    for S, D in ((A2.add, subset_p(A2)), (A2.mul, subset_d(A2))):
        res = is_disjunctive(S, D, mode)
        assert res.disjunctive
        cert = res.certificate
        assert len(cert.pairs) == 29 * 28 // 2
        assert replay_certificate(S, cert)
        again = DisjunctiveCertificate.from_json(json.loads(json.dumps(cert.to_json())))
        assert again == cert
        if mode is ContextMode.SEMIGROUP:
            assert all(p.u != EMPTY and p.v != EMPTY for p in cert.pairs)


def test_certificate_scan_order(A2):
    S, D = A2.add, set(subset_p(A2))
    cert = is_disjunctive(S, D).certificate
    ctx = [EMPTY] + list(range(S.size))

    def sand(u, x, v):
        r = x if u == EMPTY else S.mul(u, x)
        return r if v == EMPTY else S.mul(r, v)

    for p in cert.pairs[:60]:
        first = next((u, v) for u in ctx for v in ctx
                     if (sand(u, p.x, v) in D) != (sand(u, p.y, v) in D))
        assert (p.u, p.v) == first


def test_tampered_certificate_rejected(A2):
    cert = is_disjunctive(A2.add, subset_p(A2)).certificate
    p0 = cert.pairs[0]
    flipped = Separation(p0.x, p0.y, p0.u, p0.v, "y" if p0.in_d == "x" else "x")
    bad = DisjunctiveCertificate(cert.subset, cert.mode, (flipped,) + cert.pairs[1:])
    assert not replay_certificate(A2.add, bad)
    short = DisjunctiveCertificate(cert.subset, cert.mode, cert.pairs[1:])
    assert not replay_certificate(A2.add, short)
    semi = DisjunctiveCertificate(cert.subset, ContextMode.SEMIGROUP,
                                  tuple(p for p in cert.pairs))
    if any(p.u == EMPTY or p.v == EMPTY for p in cert.pairs):
        assert not replay_certificate(A2.add, semi)


@settings(max_examples=80, deadline=None)
@given(transformation_semigroups(max_size=7), st.data())
def test_syntactic_congruence_matches_definition(t, data):
    S = validate_semigroup(t)
    D = data.draw(st.sets(st.integers(0, len(t) - 1)))
    for mode in MODES:
        c = syntactic_congruence(S, D, mode)
        assert as_pairs(c) == oracles.syntactic_pairs(t, D, monoid=mode is ContextMode.MONOID)
        assert is_compatible(S, c)
    # monoid contexts refine semigroup contexts; both saturate D under monoid contexts
    cm = syntactic_congruence(S, D, ContextMode.MONOID)
    cs = syntactic_congruence(S, D, ContextMode.SEMIGROUP)
    assert cm.refines(cs)
    assert cm.saturates(D)


@settings(max_examples=40, deadline=None)
@given(transformation_semigroups(max_size=5), st.data())
def test_syntactic_congruence_is_largest_saturating(t, data):
    S = validate_semigroup(t)
    D = data.draw(st.sets(st.integers(0, len(t) - 1)))
    syn = syntactic_congruence(S, D, ContextMode.MONOID)
    for blocks in oracles.all_congruences(t):
        c = Congruence.from_labels(blocks)
        if c.saturates(D):
            assert c.refines(syn)


def test_atoms_are_minimal():
    B2 = brandt_semigroup(2)
    cons = [Congruence.from_labels(b) for b in oracles.all_congruences(B2.table.tolist())]
    nontrivial = [c for c in cons if not c.is_equality()]
    minimal = {c for c in nontrivial if not any(o != c and o.refines(c) for o in nontrivial)}
    assert set(atoms(B2)) == minimal


def test_decide_examples(A1):
    B2 = brandt_semigroup(2)
    assert oracles.exhaustive_syntactic(B2.table.tolist()) is not None
    for S in (A1.add, A1.mul, B2):
        d = decide_syntactic(S)
        assert d.decision == "yes"
        assert replay_certificate(S, d.certificate)


def test_decide_trivial_semigroup():
    d = decide_syntactic(validate_semigroup([[0]]))
    assert d.decision == "yes" and d.subset in ((), (0,))


def test_decide_non_syntactic():
    lz3 = [[0, 0, 0], [1, 1, 1], [2, 2, 2]]
    assert oracles.exhaustive_syntactic(lz3) is None
    assert decide_syntactic(validate_semigroup(lz3)).decision == "no"


def test_decide_budget_paths(A2):
    lz3 = validate_semigroup([[0, 0, 0], [1, 1, 1], [2, 2, 2]])
    # tiny budget: exhaustive screen takes over for small semigroups
    d = decide_syntactic(lz3, budget=1)
    assert d.decision == "no" and d.method == "exhaustive"
    d = decide_syntactic(A2.mul, budget=1, exhaustive_limit=10)
    assert d.decision == "unknown"


def test_decide_a2_mul(A2):
    d = decide_syntactic(A2.mul)
    assert d.decision == "yes"
    assert replay_certificate(A2.mul, d.certificate)


CORPUS = small_corpus()


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("mode", MODES)
def test_decide_matches_exhaustive(name, mode):
    t = CORPUS[name]
    S = validate_semigroup(t)
    want = oracles.exhaustive_syntactic(t, monoid=mode is ContextMode.MONOID)
    d = decide_syntactic(S, mode=mode)
    assert d.decision == ("yes" if want is not None else "no")
    if d.decision == "yes":
        assert oracles.is_disjunctive(t, d.subset, monoid=mode is ContextMode.MONOID)


def test_a2_small_disjunctive_subsets(A2):
    # found by decide_syntactic, confirmed by the brute-force oracle
    z, c11 = A2.const(THETA), A2.const((1, 1))
    for monoid in (True, False):
        assert oracles.is_disjunctive(A2.add.table.tolist(), [z], monoid)
    assert oracles.is_disjunctive(A2.mul.table.tolist(), [c11], True)
    assert decide_syntactic(A2.add).subset == (z,)
