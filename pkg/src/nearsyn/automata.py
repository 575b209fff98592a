"""Complete deterministic automata, minimisation and transition monoids."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .affine import APlusBn
from .semigroup import FiniteSemigroup, validate_semigroup
from .syntactic import subset_p


class UnknownSymbol(ValueError):
    pass


class AlphabetMismatch(ValueError):
    pass


Word = Union[str, Sequence[str]]


@dataclass(frozen=True, eq=False)
class Dfa:
    """A complete DFA. ``delta[q, a]`` is the successor of state q on the a-th symbol."""

    states: int
    alphabet: tuple[str, ...]
    initial: int
    finals: frozenset
    delta: np.ndarray

    def __post_init__(self):
        d = np.array(self.delta, dtype=np.int64).reshape(self.states, len(self.alphabet))
        if d.size and (d.min() < 0 or d.max() >= self.states):
            raise ValueError("transition target out of range")
        if not 0 <= self.initial < self.states:
            raise ValueError("initial state out of range")
        if any(not 0 <= f < self.states for f in self.finals):
            raise ValueError("final state out of range")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("repeated alphabet symbol")
        d.setflags(write=False)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "finals", frozenset(int(f) for f in self.finals))

    def symbol_index(self, a: str) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise UnknownSymbol(f"{a!r} not in alphabet {self.alphabet}") from None

    def run(self, word: Word, state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        for a in word:
            q = int(self.delta[q, self.symbol_index(a)])
        return q

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.finals

    def to_json(self) -> dict:
        return {
            "states": self.states,
            "alphabet": list(self.alphabet),
            "initial": self.initial,
            "finals": sorted(self.finals),
            "delta": self.delta.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Dfa":
        return cls(int(data["states"]), tuple(data["alphabet"]), int(data["initial"]),
                   frozenset(data["finals"]), np.asarray(data["delta"], dtype=np.int64))

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point];']
        for q in range(self.states):
            shape = "doublecircle" if q in self.finals else "circle"
            lines.append(f'  q{q} [shape={shape}, label="q{q}"];')
        lines.append(f"  start -> q{self.initial};")
        for q in range(self.states):
            edges: dict[int, list[str]] = {}
            for i, a in enumerate(self.alphabet):
                edges.setdefault(int(self.delta[q, i]), []).append(a)
            for r, syms in edges.items():
                lines.append(f'  q{q} -> q{r} [label="{", ".join(syms)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dfa_accepts(A: Dfa, w: Word) -> bool:
    return A.accepts(w)


def reachable(A: Dfa) -> list[int]:
    """States reachable from the initial state, in breadth-first discovery order."""
    order = [A.initial]
    seen = {A.initial}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for r in A.delta[q].tolist():
            if r not in seen:
                seen.add(r)
                order.append(r)
    return order


def minimize(A: Dfa) -> Dfa:
    """Trim unreachable states, then merge equivalent ones by Moore refinement.

    States of the result are numbered in breadth-first order from the initial
    state, so equivalent automata minimise to identical tables.
    """
    keep = reachable(A)
    pos = {q: i for i, q in enumerate(keep)}
    d = np.array([[pos[int(r)] for r in A.delta[q]] for q in keep], dtype=np.int64)
    fin = np.array([q in A.finals for q in keep])
    first: dict[bool, int] = {}
    block = np.array([first.setdefault(bool(f), len(first)) for f in fin], dtype=np.int64)
    count = len(first)
    while True:
        keys = [(int(block[q]),) + tuple(block[d[q]].tolist()) for q in range(len(keep))]
        relabel: dict[tuple, int] = {}
        new = np.array([relabel.setdefault(k, len(relabel)) for k in keys], dtype=np.int64)
        if len(relabel) == count:
            break
        block, count = new, len(relabel)
    # quotient, then renumber breadth-first
    qd = np.zeros((count, len(A.alphabet)), dtype=np.int64)
    for q in range(len(keep)):
        qd[block[q]] = block[d[q]]
    qfin = {int(block[q]) for q in range(len(keep)) if fin[q]}
    Q = Dfa(count, A.alphabet, int(block[0]), frozenset(qfin), qd)
    order = reachable(Q)
    ren = {q: i for i, q in enumerate(order)}
    return Dfa(count, A.alphabet, 0, frozenset(ren[q] for q in qfin),
               np.array([[ren[int(r)] for r in qd[q]] for q in order], dtype=np.int64))


def dfa_equivalent(A: Dfa, B: Dfa) -> tuple[bool, Optional[tuple[str, ...]]]:
    """Compare languages; on difference return a shortest, lexicographically first witness."""
    if A.alphabet != B.alphabet:
        raise AlphabetMismatch(f"{A.alphabet} vs {B.alphabet}")
    start = (A.initial, B.initial)
    parent: dict[tuple[int, int], Optional[tuple]] = {start: None}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in A.finals) != (q in B.finals):
            word = []
            node = (p, q)
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            return False, tuple(reversed(word))
        for i, a in enumerate(A.alphabet):
            nxt = (int(A.delta[p, i]), int(B.delta[q, i]))
            if nxt not in parent:
                parent[nxt] = ((p, q), a)
                queue.append(nxt)
    return True, None


# ---------------------------------------------------------------- transition monoid


@dataclass(frozen=True, eq=False)
class TransitionMonoidResult:
    """Transition monoid of a DFA.

    ``functions[i]`` is the state map of element i, ``words[i]`` a shortest
    word inducing it, and ``generator_map[a]`` the element of the symbol a.
    Element 0 is the identity f_eps. ``monoid.table[i, j]`` is "i then j".
    """

    monoid: FiniteSemigroup
    generator_map: dict
    functions: tuple[tuple[int, ...], ...]
    words: tuple[tuple[str, ...], ...]

    def element_of(self, word: Word) -> int:
        x = 0
        for a in word:
            x = self.monoid.mul(x, self.generator_map[a])
        return x


def _word_label(w: Sequence[str]) -> str:
    if not w:
        return "f_eps"
    if all(len(a) == 1 for a in w):
        return "f_" + "".join(w)
    return "f_" + "".join("{" + a + "}" for a in w)


def transition_monoid(A: Dfa) -> TransitionMonoidResult:
    ident = tuple(range(A.states))
    gens = [tuple(int(v) for v in A.delta[:, i]) for i in range(len(A.alphabet))]
    index = {ident: 0}
    funcs = [ident]
    words: list[tuple[str, ...]] = [()]
    i = 0
    while i < len(funcs):
        f = funcs[i]
        for a, g in zip(A.alphabet, gens):
            h = tuple(g[q] for q in f)
            if h not in index:
                index[h] = len(funcs)
                funcs.append(h)
                words.append(words[i] + (a,))
        i += 1
    F = np.array(funcs, dtype=np.int64)
    m = len(funcs)
    table = np.empty((m, m), dtype=np.int64)
    for x in range(m):
        for y in range(m):
            table[x, y] = index[tuple(F[y][F[x]].tolist())]
    mon = validate_semigroup(table, [_word_label(w) for w in words])
    gmap = {a: index[g] for a, g in zip(A.alphabet, gens)}
    return TransitionMonoidResult(mon, gmap, tuple(funcs), tuple(words))


def transition_semigroup(A: Dfa) -> tuple[FiniteSemigroup, list[int]]:
    """Subsemigroup generated by the letters, i.e. the images of nonempty words.

    Returns the semigroup and, for each of its elements, the index of the
    corresponding element of the transition monoid. The identity survives only
    if some nonempty word acts as the identity.
    """
    tm = transition_monoid(A)
    t = tm.monoid.table
    elems = sorted(set(tm.generator_map.values()))
    seen = set(elems)
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in tm.generator_map.values():
            y = int(t[x, g])
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    elems.sort()
    pos = {x: k for k, x in enumerate(elems)}
    sub = [[pos[int(t[x, y])] for y in elems] for x in elems]
    return validate_semigroup(sub, [tm.monoid.labels[x] for x in elems]), elems


def syntactic_monoid_of(A: Dfa) -> FiniteSemigroup:
    return transition_monoid(minimize(A)).monoid


def syntactic_semigroup_of(A: Dfa) -> FiniteSemigroup:
    return transition_semigroup(minimize(A))[0]


# ---------------------------------------------------------------- concrete automata


def automaton_b() -> Dfa:
    """Words over {a, b} containing at least one b; c leads to a dead state."""
    #                 a  b  c
    delta = np.array([[0, 1, 2],
                      [1, 1, 2],
                      [2, 2, 2]])
    return Dfa(3, ("a", "b", "c"), 0, frozenset({1}), delta)


def automaton_a() -> Dfa:
    """Words whose last letter outside b is an a: x a b^n."""
    delta = np.array([[1, 0, 0],
                      [1, 1, 0]])
    return Dfa(2, ("a", "b", "c"), 0, frozenset({1}), delta)


def language_dfa(A: APlusBn, finals: Iterable[int]) -> Dfa:
    """DFA over the alphabet Aff(B_n) reading a word as the sum of its letters.

    States are the elements of A+(B_n) plus a fresh initial state (last).
    Reading f from the initial state goes to f; from s it goes to s + f.
    The empty word is rejected since the initial state is never final.
    """
    m = len(A)
    alphabet = tuple(A.add.labels[i] for i in A.aff)
    aff = np.asarray(A.aff, dtype=np.int64)
    delta = np.empty((m + 1, len(aff)), dtype=np.int64)
    delta[:m] = A.add.table[:, aff]
    delta[m] = aff
    return Dfa(m + 1, alphabet, m, frozenset(int(f) for f in finals), delta)


def language_L_dfa(A: APlusBn) -> Dfa:
    return language_dfa(A, subset_p(A))
