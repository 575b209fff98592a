"""Syntactic congruences, disjunctive subsets and the syntactic-semigroup decision.

Two context conventions are supported. ``MONOID`` lets the left and right
context range over S^1, so an empty side is allowed; ``SEMIGROUP`` restricts
both sides to elements of S. In certificates the empty side is written -1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .affine import APlusBn
from .semigroup import (Congruence, FiniteSemigroup, principal_congruence)

EMPTY = -1


class ContextMode(enum.Enum):
    MONOID = "monoid"
    SEMIGROUP = "semigroup"


class InvalidForN1(ValueError):
    pass


def _contexts(S: FiniteSemigroup, mode: ContextMode):
    """Extended table with a fresh identity at index ``size`` plus the context list."""
    k = S.size
    ext = np.empty((k + 1, k + 1), dtype=np.int64)
    ext[:k, :k] = S.table
    ext[k, :] = np.arange(k + 1)
    ext[:, k] = np.arange(k + 1)
    ctx = np.arange(k) if mode is ContextMode.SEMIGROUP else np.concatenate(([k], np.arange(k)))
    return ext, ctx


def _mask(S: FiniteSemigroup, D: Iterable[int]) -> np.ndarray:
    m = np.zeros(S.size + 1, dtype=bool)
    for d in D:
        if not 0 <= d < S.size:
            raise ValueError(f"{d} is not an element index")
        m[d] = True
    return m


def context_signatures(S: FiniteSemigroup, D: Iterable[int],
                       mode: ContextMode = ContextMode.MONOID) -> np.ndarray:
    """Boolean array ``sig[x, i, j]``: is ``u_i x v_j`` in D, contexts in scan order."""
    ext, ctx = _contexts(S, mode)
    inD = _mask(S, D)
    ux = ext[ctx][:, :S.size]  # ux[i, x] = u_i x
    # uxv[i, x, j] = (u_i x) v_j
    uxv = ext[ux[:, :, None], ctx[None, None, :]]
    return np.ascontiguousarray(inD[uxv].transpose(1, 0, 2))


def syntactic_congruence(S: FiniteSemigroup, D: Iterable[int],
                         mode: ContextMode = ContextMode.MONOID) -> Congruence:
    """x ~ y iff u x v in D <=> u y v in D for every context (u, v) of the mode."""
    sig = context_signatures(S, D, mode)
    packed = np.packbits(sig.reshape(S.size, -1), axis=1)
    return Congruence.from_labels(row.tobytes() for row in packed)


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class Separation:
    x: int
    y: int
    u: int
    v: int
    in_d: str  # "x" or "y": which of u x v, u y v lies in D

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "u": self.u, "v": self.v, "in_D": self.in_d}


@dataclass(frozen=True)
class DisjunctiveCertificate:
    subset: tuple[int, ...]
    mode: ContextMode
    pairs: tuple[Separation, ...]

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "mode": self.mode.value,
            "pairs": [p.to_json() for p in self.pairs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DisjunctiveCertificate":
        pairs = tuple(Separation(int(p["x"]), int(p["y"]), int(p["u"]), int(p["v"]),
                                 str(p["in_D"])) for p in data["pairs"])
        return cls(tuple(int(d) for d in data["subset"]), ContextMode(data["mode"]), pairs)


def _sandwich(S: FiniteSemigroup, u: int, x: int, v: int) -> int:
    out = x
    if u != EMPTY:
        out = S.mul(u, out)
    if v != EMPTY:
        out = S.mul(out, v)
    return out


def replay_certificate(S: FiniteSemigroup, cert: DisjunctiveCertificate) -> bool:
    """Recheck a certificate against the Cayley table, one product chain per side.

    Every unordered pair of distinct elements must be covered by a context
    that is legal for the certificate's mode and really separates the pair.
    """
    D = set(cert.subset)
    if not all(0 <= d < S.size for d in D):
        return False
    covered = set()
    for p in cert.pairs:
        if not (0 <= p.x < S.size and 0 <= p.y < S.size) or p.x == p.y:
            return False
        for side in (p.u, p.v):
            if side == EMPTY and cert.mode is ContextMode.SEMIGROUP:
                return False
            if side != EMPTY and not 0 <= side < S.size:
                return False
        a = _sandwich(S, p.u, p.x, p.v) in D
        b = _sandwich(S, p.u, p.y, p.v) in D
        if a == b or (p.in_d == "x") != a or p.in_d not in ("x", "y"):
            return False
        covered.add((min(p.x, p.y), max(p.x, p.y)))
    return len(covered) == S.size * (S.size - 1) // 2


@dataclass(frozen=True)
class DisjunctivityResult:
    disjunctive: bool
    certificate: Optional[DisjunctiveCertificate] = None
    merged: Optional[tuple[int, int]] = None

    def __bool__(self):
        return self.disjunctive


def is_disjunctive(S: FiniteSemigroup, D: Iterable[int],
                   mode: ContextMode = ContextMode.MONOID) -> DisjunctivityResult:
    """Decide whether the syntactic congruence of D is equality.

    On success every pair x < y gets the first separating context in scan
    order (u ascending, then v ascending, the empty side -1 first). On
    failure the first pair that no context separates is returned.
    """
    D = tuple(sorted(set(D)))
    sig = context_signatures(S, D, mode)
    _, ctx = _contexts(S, mode)
    names = np.where(ctx == S.size, EMPTY, ctx)
    nv = len(ctx)
    flat = sig.reshape(S.size, -1)
    pairs = []
    for x in range(S.size):
        diff = flat[x][None, :] != flat[x + 1:]
        has = diff.any(axis=1)
        if not has.all():
            y = x + 1 + int(np.argmin(has))
            return DisjunctivityResult(False, merged=(x, y))
        first = diff.argmax(axis=1)
        for off, f in enumerate(first.tolist()):
            y = x + 1 + off
            i, j = divmod(f, nv)
            pairs.append(Separation(x, y, int(names[i]), int(names[j]),
                                    "x" if flat[x, f] else "y"))
    return DisjunctivityResult(True, DisjunctiveCertificate(D, mode, tuple(pairs)))


# ---------------------------------------------------------------- named subsets


def subset_p(A: APlusBn) -> list[int]:
    """xi(1,2) together with every singleton map (k,l) -> (1,1)."""
    if A.n < 2:
        raise InvalidForN1("the language subset is defined for n >= 2")
    out = {A.const((1, 2))}
    out.update(A.sing((k, l), (1, 1)) for k in range(1, A.n + 1) for l in range(1, A.n + 1))
    return sorted(out)


def subset_d(A: APlusBn) -> list[int]:
    """(1,1;id) together with every full-support constant xi(p,q)."""
    out = {A.nsup(1, 1)}
    out.update(A.const((p, q)) for p in range(1, A.n + 1) for q in range(1, A.n + 1))
    return sorted(out)


# ---------------------------------------------------------------- decision


def atoms(S: FiniteSemigroup) -> list[Congruence]:
    """Minimal non-trivial congruences. Every atom is principal."""
    seen: dict[tuple, Congruence] = {}
    for x in range(S.size):
        for y in range(x + 1, S.size):
            c = principal_congruence(S, x, y)
            seen.setdefault(c.blocks, c)
    cands = sorted(seen.values(), key=lambda c: -c.block_count)
    out = []
    for c in cands:
        if not any(o != c and o.refines(c) for o in cands):
            out.append(c)
    return out


@dataclass
class Decision:
    decision: str  # "yes", "no" or "unknown"
    subset: Optional[tuple[int, ...]] = None
    certificate: Optional[DisjunctiveCertificate] = None
    nodes: int = 0
    method: str = "search"


class _NodeBudget(Exception):
    pass


def _search(S: FiniteSemigroup, classes_per_atom: list[list[list[int]]],
            mode: ContextMode, budget: int, stats: dict) -> Optional[tuple[int, ...]]:
    k = S.size
    val: list[Optional[bool]] = [None] * k

    def status(classes) -> str:
        dead = True
        for cl in classes:
            vs = [val[x] for x in cl]
            if True in vs and False in vs:
                return "sat"
            if None in vs:
                dead = False
        return "dead" if dead else "open"

    def dfs() -> Optional[tuple[int, ...]]:
        stats["nodes"] += 1
        if stats["nodes"] > budget:
            raise _NodeBudget
        target = None
        for classes in classes_per_atom:
            st = status(classes)
            if st == "dead":
                return None
            if st == "open" and target is None:
                target = classes
        if target is None:
            D = tuple(x for x in range(k) if val[x])
            if syntactic_congruence(S, D, mode).is_equality():
                return D
            return None
        cl = next(c for c in target if None in (val[x] for x in c))
        e = next(x for x in cl if val[x] is None)
        decided = [val[x] for x in cl if val[x] is not None]
        first = (not decided[0]) if decided else True
        for choice in (first, not first):
            val[e] = choice
            found = dfs()
            if found is not None:
                return found
        val[e] = None
        return None

    return dfs()


def _exhaustive(S: FiniteSemigroup, classes_per_atom, mode: ContextMode) -> Optional[tuple[int, ...]]:
    masks = np.arange(1 << S.size, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    for classes in classes_per_atom:
        sat = np.zeros(len(masks), dtype=bool)
        for cl in classes:
            cm = sum(1 << x for x in cl)
            hit = masks & cm
            sat |= (hit != 0) & (hit != cm)
        ok &= sat
    for m in np.flatnonzero(ok).tolist():
        D = tuple(x for x in range(S.size) if m >> x & 1)
        if syntactic_congruence(S, D, mode).is_equality():
            return D
    return None


def decide_syntactic(S: FiniteSemigroup, budget: int = 10_000_000,
                     mode: ContextMode = ContextMode.MONOID,
                     exhaustive_limit: int = 20) -> Decision:
    """Search for a disjunctive subset of S.

    A subset is disjunctive exactly when it splits some class of every atom of
    the congruence lattice (for monoid contexts; for semigroup contexts this is
    necessary and each candidate is verified). Membership is chosen by
    backtracking, one atom at a time. If the node budget runs out and
    ``|S| <= exhaustive_limit`` all subsets are screened instead.
    """
    classes_per_atom = [[cl for cl in a.classes() if len(cl) > 1] for a in atoms(S)]
    stats = {"nodes": 0}
    method = "search"
    try:
        D = _search(S, classes_per_atom, mode, budget, stats)
    except _NodeBudget:
        if S.size > exhaustive_limit:
            return Decision("unknown", nodes=stats["nodes"])
        method = "exhaustive"
        D = _exhaustive(S, classes_per_atom, mode)
    if D is None:
        return Decision("no", nodes=stats["nodes"], method=method)
    res = is_disjunctive(S, D, mode)
    assert res.disjunctive
    return Decision("yes", D, res.certificate, stats["nodes"], method)
