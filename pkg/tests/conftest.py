import numpy as np
import pytest
from hypothesis import strategies as st

import oracles
from nearsyn.affine import construct_a_plus_bn
from nearsyn.brandt import brandt_semigroup
from nearsyn.semigroup import quotient, Congruence


@pytest.fixture(scope="session")
def A1():
    return construct_a_plus_bn(1)


@pytest.fixture(scope="session")
def A2():
    return construct_a_plus_bn(2)


@pytest.fixture(scope="session")
def A3():
    return construct_a_plus_bn(3)


def _random_associative_tables(seed=20261016, size=3, want=12, tries=200_000):
    rng = np.random.default_rng(seed)
    found = {}
    for _ in range(tries):
        t = rng.integers(0, size, (size, size))
        if oracles.is_associative(t.tolist()):
            found.setdefault(t.tobytes(), t.tolist())
            if len(found) == want:
                break
    return list(found.values())


def _random_transformation_semigroups(seed=7, want=10, max_size=8):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < want:
        d = int(rng.integers(2, 5))
        gens = [tuple(int(v) for v in rng.integers(0, d, d)) for _ in range(int(rng.integers(1, 3)))]
        t = oracles.transformation_semigroup(gens)
        if len(t) <= max_size:
            out.append(t)
    return out


def small_corpus():
    """Named semigroups of size <= 8 used for oracle comparisons."""
    B2 = brandt_semigroup(2)
    corpus = {
        "B1": brandt_semigroup(1).table.tolist(),
        "B2": B2.table.tolist(),
        "trivial": [[0]],
        "left-zero-2": [[0, 0], [1, 1]],
        "left-zero-3": [[0, 0, 0], [1, 1, 1], [2, 2, 2]],
        "right-zero-3": [[0, 1, 2]] * 3,
        "null-3": [[0, 0, 0]] * 3,
        "Z2": [[0, 1], [1, 0]],
        "Z3": [[(i + j) % 3 for j in range(3)] for i in range(3)],
        "chain-3": [[min(i, j) for j in range(3)] for i in range(3)],
    }
    A1 = construct_a_plus_bn(1)
    corpus["A+(B1)+"] = A1.add.table.tolist()
    corpus["A+(B1)o"] = A1.mul.table.tolist()
    for i, blocks in enumerate(oracles.all_congruences(B2.table.tolist())):
        corpus[f"B2/c{i}"] = quotient(B2, Congruence.from_labels(blocks)).table.tolist()
    for i, t in enumerate(_random_associative_tables()):
        corpus[f"random3-{i}"] = t
    for i, t in enumerate(_random_transformation_semigroups()):
        corpus[f"transf-{i}"] = t
    return corpus


@st.composite
def transformation_semigroups(draw, max_size=8):
    d = draw(st.integers(2, 4))
    gen = st.tuples(*[st.integers(0, d - 1)] * d)
    gens = draw(st.lists(gen, min_size=1, max_size=2))
    t = oracles.transformation_semigroup(gens)
    if draw(st.booleans()):
        t = [list(r) for r in zip(*t)]  # opposite semigroup
    if len(t) > max_size:
        t = oracles.transformation_semigroup(gens[:1])
    return t


# ---------------------------------------------------------------- acceptance summary

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _acceptance[report.nodeid.split("::")[-1]] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _acceptance.items():
        terminalreporter.write_line(f"{status}  {name}")
