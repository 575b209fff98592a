"""Star-free expressions: parsing, direct semantics and compilation to DFAs.

Concrete syntax::

    expr   := term ('+' term)*
    term   := factor+                 juxtaposition is concatenation
    factor := atom ['^c']             ^c is complement in Sigma*
    atom   := '0' | 'e' | SYMBOL | '(' expr ')'

``0`` is the empty language, ``e`` the empty word, and SYMBOL is a single
letter or ``{name}`` for a multi-character symbol. Whitespace is ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .automata import Dfa, UnknownSymbol, minimize


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Union_:
    left: "StarFreeExpr"
    right: "StarFreeExpr"


@dataclass(frozen=True)
class Concat:
    left: "StarFreeExpr"
    right: "StarFreeExpr"


@dataclass(frozen=True)
class Complement:
    child: "StarFreeExpr"


StarFreeExpr = Union[Empty, Epsilon, Symbol, Union_, Concat, Complement]


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------- parsing


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()+":
            out.append((ch, ch))
            i += 1
        elif ch == "^":
            if text[i + 1:i + 2] != "c":
                raise ParseError(f"expected '^c' at position {i}")
            out.append(("^c", "^c"))
            i += 2
        elif ch == "{":
            j = text.find("}", i)
            if j < 0 or j == i + 1:
                raise ParseError(f"unterminated or empty symbol at position {i}")
            out.append(("sym", text[i + 1:j]))
            i = j + 1
        elif ch == "0":
            out.append(("0", ch))
            i += 1
        elif ch == "e":
            out.append(("e", ch))
            i += 1
        elif ch.isalpha():
            out.append(("sym", ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} at position {i}")
    return out


def parse(text: str) -> StarFreeExpr:
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def expr():
        nonlocal pos
        node = term()
        while peek() == "+":
            pos += 1
            node = Union_(node, term())
        return node

    def term():
        node = factor()
        while peek() in ("(", "0", "e", "sym"):
            node = Concat(node, factor())
        return node

    def factor():
        nonlocal pos
        node = atom()
        if peek() == "^c":
            pos += 1
            node = Complement(node)
        return node

    def atom():
        nonlocal pos
        kind = peek()
        if kind is None:
            raise ParseError("unexpected end of expression")
        val = toks[pos][1]
        pos += 1
        if kind == "0":
            return Empty()
        if kind == "e":
            return Epsilon()
        if kind == "sym":
            return Symbol(val)
        if kind == "(":
            node = expr()
            if peek() != ")":
                raise ParseError("missing ')'")
            pos += 1
            return node
        raise ParseError(f"unexpected token {val!r}")

    node = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at token {toks[pos][1]!r}")
    return node


def _sym(name: str) -> str:
    return name if len(name) == 1 and name not in "0e" else "{" + name + "}"


def to_string(e: StarFreeExpr) -> str:
    """Render in the concrete syntax; parse(to_string(e)) == e."""
    if isinstance(e, Empty):
        return "0"
    if isinstance(e, Epsilon):
        return "e"
    if isinstance(e, Symbol):
        return _sym(e.name)
    if isinstance(e, Union_):
        return f"({to_string(e.left)}+{to_string(e.right)})"
    if isinstance(e, Concat):
        return f"({to_string(e.left)}{to_string(e.right)})"
    return f"({to_string(e.child)})^c"


def symbols(e: StarFreeExpr) -> set[str]:
    if isinstance(e, Symbol):
        return {e.name}
    if isinstance(e, (Union_, Concat)):
        return symbols(e.left) | symbols(e.right)
    if isinstance(e, Complement):
        return symbols(e.child)
    return set()


def parse_alphabet(text: str) -> tuple[str, ...]:
    """Alphabet string: single letters, ``{name}`` groups, optional commas/spaces."""
    out = []
    for kind, val in _tokens(text.replace(",", " ")):
        if kind == "sym":
            out.append(val)
        elif kind in ("0", "e"):
            out.append(val)
        else:
            raise ParseError(f"unexpected {val!r} in alphabet")
    return tuple(out)


# ---------------------------------------------------------------- semantics


def evaluate(e: StarFreeExpr, word: Sequence[str], alphabet: Sequence[str]) -> bool:
    """Membership of ``word`` by structural recursion on the expression."""
    word = tuple(word)
    if any(a not in alphabet for a in word):
        raise UnknownSymbol(f"word {word} leaves the alphabet")

    @lru_cache(maxsize=None)
    def mem(node, i, j) -> bool:
        if isinstance(node, Empty):
            return False
        if isinstance(node, Epsilon):
            return i == j
        if isinstance(node, Symbol):
            return j == i + 1 and word[i] == node.name
        if isinstance(node, Union_):
            return mem(node.left, i, j) or mem(node.right, i, j)
        if isinstance(node, Concat):
            return any(mem(node.left, i, k) and mem(node.right, k, j) for k in range(i, j + 1))
        return not mem(node.child, i, j)

    return mem(e, 0, len(word))


# ---------------------------------------------------------------- compilation


def _atom_dfa(alphabet, accept_word) -> Dfa:
    k = len(alphabet)
    if accept_word is None:
        return Dfa(1, alphabet, 0, frozenset(), np.zeros((1, k), dtype=np.int64))
    if accept_word == ():
        d = np.ones((2, k), dtype=np.int64)
        return Dfa(2, alphabet, 0, frozenset({0}), d)
    (a,) = accept_word
    d = np.full((3, k), 2, dtype=np.int64)
    d[0, alphabet.index(a)] = 1
    return Dfa(3, alphabet, 0, frozenset({1}), d)


def _union(A: Dfa, B: Dfa) -> Dfa:
    states = {}
    order = []

    def sid(p):
        if p not in states:
            states[p] = len(order)
            order.append(p)
        return states[p]

    sid((A.initial, B.initial))
    rows = []
    i = 0
    while i < len(order):
        p, q = order[i]
        rows.append([sid((int(A.delta[p, a]), int(B.delta[q, a]))) for a in range(len(A.alphabet))])
        i += 1
    finals = {s for (p, q), s in states.items() if p in A.finals or q in B.finals}
    return Dfa(len(order), A.alphabet, 0, frozenset(finals), np.array(rows, dtype=np.int64))


def _complement(A: Dfa) -> Dfa:
    return Dfa(A.states, A.alphabet, A.initial,
               frozenset(set(range(A.states)) - A.finals), A.delta)


def _concat(A: Dfa, B: Dfa) -> Dfa:
    # subset construction over (state of A, set of active states of B)
    def close(p, bs):
        return (p, frozenset(bs | ({B.initial} if p in A.finals else set())))

    start = close(A.initial, set())
    states = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        p, bs = order[i]
        row = []
        for a in range(len(A.alphabet)):
            nxt = close(int(A.delta[p, a]), {int(B.delta[b, a]) for b in bs})
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            row.append(states[nxt])
        rows.append(row)
        i += 1
    finals = {s for (p, bs), s in states.items() if bs & B.finals}
    return Dfa(len(order), A.alphabet, 0, frozenset(finals), np.array(rows, dtype=np.int64))


def compile_starfree(e: StarFreeExpr, alphabet: Sequence[str]) -> Dfa:
    """Minimal complete DFA for the expression's language over ``alphabet``*."""
    alphabet = tuple(alphabet)
    unknown = symbols(e) - set(alphabet)
    if unknown:
        raise UnknownSymbol(f"symbols {sorted(unknown)} not in alphabet {alphabet}")

    def go(node) -> Dfa:
        if isinstance(node, Empty):
            return _atom_dfa(alphabet, None)
        if isinstance(node, Epsilon):
            return _atom_dfa(alphabet, ())
        if isinstance(node, Symbol):
            return _atom_dfa(alphabet, (node.name,))
        if isinstance(node, Union_):
            return minimize(_union(go(node.left), go(node.right)))
        if isinstance(node, Concat):
            return minimize(_concat(go(node.left), go(node.right)))
        return minimize(_complement(go(node.child)))

    return minimize(go(e))


# The two languages over {a, b, c} used throughout, in the concrete syntax.
AT_LEAST_ONE_B_NO_C = "(0^c c 0^c)^c b (0^c c 0^c)^c"
ENDS_IN_A_B_STAR = "0^c a (0^c (a+c) 0^c)^c"
