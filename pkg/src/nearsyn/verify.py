"""One-shot verification of every computational claim about A+(B_n) at a given n."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import automata, starfree
from .affine import (APlusBn, Other, census_formula, construct_a_plus_bn, factorial,
                     generate_closure)
from .brandt import THETA
from .replays import additive_replays, multiplicative_replays
from .semigroup import FiniteSemigroup, find_isomorphism, is_aperiodic, power_cycle
from .syntactic import (ContextMode, decide_syntactic, is_disjunctive, replay_certificate,
                        subset_d, subset_p)

# Cayley tables of the transition monoids of automaton_b / automaton_a, with
# rows and columns in the order f_a, f_b, f_c (0, 1, 2).
AUTOMATON_B_TABLE = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
AUTOMATON_A_TABLE = [[0, 0, 2], [0, 1, 2], [0, 2, 2]]


@dataclass
class CheckRecord:
    name: str
    anchor: str
    status: str
    elapsed: float
    detail: str = ""
    artifacts: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    n: int
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {"n": self.n, "status": "pass" if self.passed else "fail",
                "checks": [asdict(c) for c in self.checks]}

    def to_text(self) -> str:
        lines = [f"{'PASS' if c.status == 'pass' else 'FAIL'}  {c.name:<32} {c.elapsed:7.3f}s  {c.detail}"
                 for c in self.checks]
        lines.append(f"suite: {'pass' if self.passed else 'fail'} (n = {self.n})")
        return "\n".join(lines)


def letter_table(tm: automata.TransitionMonoidResult, letters=("a", "b", "c")) -> list[list[int]]:
    """Cayley table of the letter elements, re-indexed by letter position."""
    idx = [tm.generator_map[a] for a in letters]
    pos = {e: i for i, e in enumerate(idx)}
    return [[pos[tm.monoid.mul(x, y)] for y in idx] for x in idx]


def reduct_table_b1(S: FiniteSemigroup, A: APlusBn) -> list[list[int]]:
    """Table of a reduct of A+(B_1) under f_a -> xi(1,1), f_b -> (1,1;id), f_c -> xi(theta)."""
    idx = [A.const((1, 1)), A.nsup(1, 1), A.const(THETA)]
    pos = {e: i for i, e in enumerate(idx)}
    return [[pos[S.mul(x, y)] for y in idx] for x in idx]


def left_distributive(A: APlusBn) -> bool:
    add, mul = A.add.table, A.mul.table
    lhs = mul[:, add]                       # f(g+h)  at [f, g, h]
    rhs = add[mul[:, :, None], mul[:, None, :]]  # fg + fh
    return bool(np.array_equal(lhs, rhs))


def language_semigroup_matches(A: APlusBn) -> tuple[bool, str]:
    """Syntactic semigroup of the language dfa maps onto A+(B_n)+ by summing letters.

    Each element of the transition semigroup of the minimised automaton is
    sent to the sum of the letters of a word inducing it; the map must be a
    well-defined bijective homomorphism onto the additive reduct.
    """
    L = automata.minimize(automata.language_L_dfa(A))
    tm = automata.transition_monoid(L)
    S, elems = automata.transition_semigroup(L)
    letter = {A.add.labels[i]: i for i in A.aff}
    image = []
    for e in elems:
        word = tm.words[e]
        image.append(A.add.product(*[letter[a] for a in word]))
    if sorted(image) != list(range(len(A))):
        return False, f"{S.size} classes vs {len(A)} elements"
    m = np.asarray(image)
    if not np.array_equal(m[S.table], A.add.table[np.ix_(m, m)]):
        return False, "letter sums are not a homomorphism"
    ap, _ = is_aperiodic(tm.monoid)
    return ap, f"{L.states} states, semigroup of size {S.size}, aperiodic={ap}"


def _write(out_dir: Optional[Path], name: str, data) -> list[str]:
    if out_dir is None:
        return []
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(json.dumps(data, separators=(",", ":")) + "\n")
    return [str(path)]


def run_verification(n: int, out_dir: Optional[Path] = None, max_n: int = 3,
                     log: Optional[Callable[[CheckRecord], None]] = None) -> VerificationReport:
    report = VerificationReport(n)
    out_dir = Path(out_dir) if out_dir is not None else None

    def check(name, anchor):
        def deco(fn):
            t0 = time.perf_counter()
            try:
                ok, detail, arts = fn()
            except Exception as exc:  # a crash is a failed check, not a crashed suite
                ok, detail, arts = False, f"{type(exc).__name__}: {exc}", []
            rec = CheckRecord(name, anchor, "pass" if ok else "fail",
                              time.perf_counter() - t0, detail, arts)
            report.checks.append(rec)
            if log:
                log(rec)
            return fn
        return deco

    state: dict = {}

    @check("census", "A+(B_n) element count and breakup")
    def _():
        A = construct_a_plus_bn(n, max_n)
        state["A"] = A
        c = A.census()
        want = ({"constant": 2, "singleton": 0, "nsupport": 1} if n == 1 else
                {"constant": n * n + 1, "singleton": n ** 4, "nsupport": factorial(n) * n * n})
        ok = len(A) == census_formula(n) and all(c[k] == v for k, v in want.items())
        closed = len(generate_closure(A.elements, "compose")) == len(A)
        return ok and closed, f"{len(A)} elements {c}, compose-closed={closed}", \
            _write(out_dir, f"aplus_b{n}.json", A.to_json())

    A: APlusBn = state.get("A")
    if A is None:
        return report

    @check("classification", "every element is constant, singleton or n-support")
    def _():
        bad = [i for i, k in enumerate(A.kinds) if isinstance(k, Other)]
        return not bad, f"{len(bad)} unclassified", []

    @check("left-distributivity", "a(b+c) = ab + ac")
    def _():
        return left_distributive(A), f"{len(A) ** 3} triples", []

    @check("aperiodic-additive", "additive reduct is aperiodic")
    def _():
        ok, w = is_aperiodic(A.add)
        return ok, "" if ok else f"witness {w}", []

    if n == 1:
        _verify_n1(A, check, out_dir)
    else:
        _verify_general(A, check, out_dir)
    return report


def _verify_n1(A, check, out_dir):
    Ab, Aa = automata.automaton_b(), automata.automaton_a()

    @check("table-additive", "additive reduct of A+(B_1) reproduces the T(A_b) table")
    def _():
        t1 = letter_table(automata.transition_monoid(Ab))
        ok = t1 == AUTOMATON_B_TABLE and reduct_table_b1(A.add, A) == AUTOMATON_B_TABLE
        return ok, str(t1), []

    @check("table-multiplicative", "multiplicative reduct of A+(B_1) reproduces the T(A_a) table")
    def _():
        t2 = letter_table(automata.transition_monoid(Aa))
        ok = t2 == AUTOMATON_A_TABLE and reduct_table_b1(A.mul, A) == AUTOMATON_A_TABLE
        return ok, str(t2), []

    @check("minimality", "A_b has 3 states, A_a has 2, both minimal")
    def _():
        mb, ma = automata.minimize(Ab), automata.minimize(Aa)
        ok = (mb.states, ma.states) == (3, 2) \
            and automata.dfa_equivalent(mb, Ab)[0] and automata.dfa_equivalent(ma, Aa)[0]
        return ok, f"{mb.states} and {ma.states} states", []

    @check("isomorphisms", "T(A_b) ~ additive reduct, T(A_a) ~ multiplicative reduct")
    def _():
        expected = [A.const((1, 1)), A.nsup(1, 1), A.const(THETA)]
        ok = True
        for D, S in ((Ab, A.add), (Aa, A.mul)):
            tm = automata.transition_monoid(D)
            w = find_isomorphism(tm.monoid, S)
            ok = ok and w is not None and \
                [w.mapping[tm.generator_map[a]] for a in "abc"] == expected
        return ok, "f_a -> xi(1,1), f_b -> (1,1;id), f_c -> xi(theta)", []

    @check("star-free", "star-free expressions recognise L_b and L_a; monoids aperiodic")
    def _():
        ok = True
        for expr, D in ((starfree.AT_LEAST_ONE_B_NO_C, Ab), (starfree.ENDS_IN_A_B_STAR, Aa)):
            C = starfree.compile_starfree(starfree.parse(expr), Ab.alphabet)
            ok = ok and automata.dfa_equivalent(C, D)[0] \
                and is_aperiodic(automata.transition_monoid(C).monoid)[0]
        return ok, "", []

    @check("aperiodic-multiplicative", "multiplicative reduct of A+(B_1) is aperiodic")
    def _():
        ok, w = is_aperiodic(A.mul)
        return ok, "" if ok else f"witness {w}", []

    @check("disjunctive-D", "D is disjunctive in the multiplicative reduct")
    def _():
        return _disjunctive(A.mul, subset_d(A), "D", A.n, out_dir)

    @check("decide", "both reducts of A+(B_1) are syntactic")
    def _():
        ds = [decide_syntactic(S).decision for S in (A.add, A.mul)]
        return ds == ["yes", "yes"], str(ds), []


def _disjunctive(S, D, name, n, out_dir):
    arts = []
    ok = True
    for mode in ContextMode:
        res = is_disjunctive(S, D, mode)
        if not res.disjunctive:
            return False, f"{mode.value}: pair {res.merged} not separated", arts
        ok = ok and replay_certificate(S, res.certificate)
        arts += _write(out_dir, f"cert_{name}_n{n}_{mode.value}.json", res.certificate.to_json())
    return ok, f"|{name}| = {len(D)}, {S.size * (S.size - 1) // 2} pairs certified per mode", arts


def _verify_general(A, check, out_dir):
    n = A.n

    @check("disjunctive-P", "P is disjunctive in the additive reduct")
    def _():
        return _disjunctive(A.add, subset_p(A), "P", n, out_dir)

    @check("disjunctive-D", "D is disjunctive in the multiplicative reduct")
    def _():
        return _disjunctive(A.mul, subset_d(A), "D", n, out_dir)

    @check("not-aperiodic-multiplicative", "multiplicative reduct has a non-trivial group")
    def _():
        ok, w = is_aperiodic(A.mul)
        if ok or w is None:
            return False, "no witness", []
        replay = power_cycle(A.mul, w.element)
        good = replay.period > 1 and A.mul.product(*([w.element] * (w.index + w.period))) == \
            A.mul.product(*([w.element] * w.index))
        return good, f"{A.mul.labels[w.element]} has period {w.period}", []

    @check("case-replays-additive", "separating contexts for P")
    def _():
        r = additive_replays(A)
        bad = [c for c in r if not c.ok]
        return not bad, f"{len(r)} contexts, {len(bad)} failed", []

    @check("case-replays-multiplicative", "separating contexts for D")
    def _():
        r = multiplicative_replays(A)
        bad = [c for c in r if not c.ok]
        return not bad, f"{len(r)} contexts, {len(bad)} failed", []

    @check("language-semigroup", "syntactic semigroup of L is A+(B_n)+ and aperiodic")
    def _():
        ok, detail = language_semigroup_matches(A)
        return ok, detail, []
