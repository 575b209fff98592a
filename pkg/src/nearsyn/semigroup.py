"""Finite semigroups given by Cayley tables.

Elements are dense indices ``0..size-1``; ``table[i, j]`` is the index of
``x_i * x_j``. Labels are carried alongside for printing and JSON only.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class SemigroupError(ValueError):
    pass


class NonAssociative(SemigroupError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"(x{i}*x{j})*x{k} != x{i}*(x{j}*x{k})")
        self.witness = (i, j, k)


class OutOfRangeEntry(SemigroupError):
    pass


class IncompatiblePartition(SemigroupError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _freeze(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """A validated finite semigroup. Build instances with :func:`validate_semigroup`."""

    table: np.ndarray
    labels: tuple[str, ...]
    identity: Optional[int] = None

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def product(self, *xs: int) -> int:
        acc = xs[0]
        for x in xs[1:]:
            acc = int(self.table[acc, x])
        return acc

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def idempotents(self) -> list[int]:
        d = self.table[np.arange(self.size), np.arange(self.size)]
        return [int(x) for x in np.flatnonzero(d == np.arange(self.size))]

    def __eq__(self, other):
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return np.array_equal(self.table, other.table) and self.labels == other.labels

    def __hash__(self):
        return hash((self.table.tobytes(), self.labels))

    def __repr__(self):
        return f"FiniteSemigroup(size={self.size}, identity={self.identity})"

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "labels": list(self.labels),
            "table": self.table.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteSemigroup":
        try:
            table = data["table"]
        except (KeyError, TypeError):
            raise SemigroupError("semigroup JSON needs a 'table' field") from None
        sem = validate_semigroup(table, data.get("labels"))
        if "size" in data and data["size"] != sem.size:
            raise SemigroupError(f"declared size {data['size']} != table size {sem.size}")
        return sem


def find_identity(table: np.ndarray) -> Optional[int]:
    r = np.arange(table.shape[0])
    for e in range(table.shape[0]):
        if np.array_equal(table[e], r) and np.array_equal(table[:, e], r):
            return e
    return None


def validate_semigroup(table, labels: Optional[Sequence[str]] = None) -> FiniteSemigroup:
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError):
        raise SemigroupError("table is not a rectangular integer matrix") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise SemigroupError(f"table must be a non-empty square matrix, got shape {arr.shape}")
    k = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= k))
    if len(bad):
        i, j = bad[0]
        raise OutOfRangeEntry(f"table[{i}][{j}] = {arr[i, j]} not in [0, {k})")
    # left[i,j,k] = (ij)k, right[i,j,k] = i(jk)
    left = arr[arr]
    right = arr[:, arr]
    diff = np.argwhere(left != right)
    if len(diff):
        raise NonAssociative(*map(int, diff[0]))
    if labels is None:
        labels = [f"x{i}" for i in range(k)]
    labels = tuple(str(l) for l in labels)
    if len(labels) != k:
        raise SemigroupError(f"{len(labels)} labels for {k} elements")
    arr.setflags(write=False)
    return FiniteSemigroup(arr, labels, find_identity(arr))


def adjoin_identity(S: FiniteSemigroup, label: str = "1") -> FiniteSemigroup:
    """Return ``S`` if it is a monoid, else ``S`` with a fresh identity appended last."""
    if S.identity is not None:
        return S
    k = S.size
    t = np.empty((k + 1, k + 1), dtype=np.int64)
    t[:k, :k] = S.table
    t[k, :] = np.arange(k + 1)
    t[:, k] = np.arange(k + 1)
    return FiniteSemigroup(_freeze(t), S.labels + (label,), k)


def translation_table(S: FiniteSemigroup) -> tuple[np.ndarray, int]:
    """Cayley table of S^1 together with the index of its identity."""
    T = adjoin_identity(S)
    return T.table, T.identity


# ---------------------------------------------------------------- congruences


@dataclass(frozen=True)
class Congruence:
    """Partition of a carrier; ``blocks[x]`` is the block id of element x.

    Block ids are normalised to first-appearance order, so equal partitions
    compare equal.
    """

    blocks: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels) -> "Congruence":
        seen: dict = {}
        return cls(tuple(seen.setdefault(b.item() if isinstance(b, np.generic) else b, len(seen))
                         for b in labels))

    @classmethod
    def equality(cls, size: int) -> "Congruence":
        return cls(tuple(range(size)))

    @classmethod
    def universal(cls, size: int) -> "Congruence":
        return cls((0,) * size)

    @property
    def block_count(self) -> int:
        return max(self.blocks) + 1 if self.blocks else 0

    @property
    def size(self) -> int:
        return len(self.blocks)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, b in enumerate(self.blocks):
            out[b].append(x)
        return out

    def is_equality(self) -> bool:
        return self.block_count == self.size

    def related(self, x: int, y: int) -> bool:
        return self.blocks[x] == self.blocks[y]

    def refines(self, other: "Congruence") -> bool:
        """True if every block of self lies inside a block of other."""
        img: dict[int, int] = {}
        for a, b in zip(self.blocks, other.blocks):
            if img.setdefault(a, b) != b:
                return False
        return True

    def saturates(self, subset) -> bool:
        subset = set(subset)
        for cls_ in self.classes():
            inside = [x in subset for x in cls_]
            if any(inside) and not all(inside):
                return False
        return True


def is_compatible(S: FiniteSemigroup, c: Congruence) -> bool:
    b = np.asarray(c.blocks)
    t = S.table
    # x ~ y  =>  sx ~ sy and xs ~ ys: block of a product depends only on blocks of factors
    for blocks_of in (b[t], b[t.T]):
        # blocks_of[x, s] = block(x s) (or block(s x) for the transpose)
        rep: dict[int, np.ndarray] = {}
        for x in range(S.size):
            r = rep.setdefault(b[x], blocks_of[x])
            if not np.array_equal(r, blocks_of[x]):
                return False
    return True


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            rx, ry = ry, rx
        self.parent[rx] = ry
        return True


def congruence_closure(S: FiniteSemigroup, pairs) -> Congruence:
    """Smallest congruence containing every pair in ``pairs``."""
    uf = _UnionFind(S.size)
    t = S.table
    queue = deque()
    for x, y in pairs:
        if uf.union(x, y):
            queue.append((x, y))
    while queue:
        x, y = queue.popleft()
        for a, b in zip(t[x], t[y]):
            if uf.union(int(a), int(b)):
                queue.append((int(a), int(b)))
        for a, b in zip(t[:, x], t[:, y]):
            if uf.union(int(a), int(b)):
                queue.append((int(a), int(b)))
    return Congruence.from_labels(uf.find(x) for x in range(S.size))


def principal_congruence(S: FiniteSemigroup, x: int, y: int) -> Congruence:
    return congruence_closure(S, [(x, y)])


def quotient(S: FiniteSemigroup, c: Congruence) -> FiniteSemigroup:
    if c.size != S.size:
        raise IncompatiblePartition(f"partition has {c.size} entries, semigroup has {S.size}")
    classes = c.classes()
    b = np.asarray(c.blocks)
    k = c.block_count
    t = np.full((k, k), -1, dtype=np.int64)
    for x in range(S.size):
        for y in range(S.size):
            bx, by, bp = b[x], b[y], b[S.table[x, y]]
            if t[bx, by] == -1:
                t[bx, by] = bp
            elif t[bx, by] != bp:
                raise IncompatiblePartition(
                    f"x{x}*x{y} lands in block {bp}, expected {t[bx, by]}")
    labels = ["{" + ",".join(S.labels[x] for x in cl) + "}" for cl in classes]
    t.setflags(write=False)
    return FiniteSemigroup(t, tuple(labels), find_identity(t))


# ---------------------------------------------------------------- periodicity


@dataclass(frozen=True)
class PowerCycle:
    """Powers x, x^2, ... of an element; ``x^index == x^(index+period)``."""

    element: int
    index: int
    period: int
    powers: tuple[int, ...]


def power_cycle(S: FiniteSemigroup, x: int) -> PowerCycle:
    seen: dict[int, int] = {}
    powers: list[int] = []
    p = x
    while p not in seen:
        seen[p] = len(powers) + 1
        powers.append(p)
        p = int(S.table[p, x])
    index = seen[p]
    return PowerCycle(x, index, len(powers) + 1 - index, tuple(powers))


def is_aperiodic(S: FiniteSemigroup) -> tuple[bool, Optional[PowerCycle]]:
    """Check x^k = x^(k+1) for some k <= |S|, for every x.

    On failure the first element (in index order) whose powers enter a cycle
    longer than one is returned.
    """
    for x in range(S.size):
        pc = power_cycle(S, x)
        if pc.period > 1:
            return False, pc
    return True, None


# ---------------------------------------------------------------- Green


@dataclass(frozen=True)
class GreenClasses:
    R: Congruence
    L: Congruence
    J: Congruence
    H: Congruence


def _ideal_keys(t1: np.ndarray, k: int):
    # t1 is the S^1 table; only the first k rows/columns are elements of S
    right = [frozenset(int(v) for v in t1[x, :] if v < k) | {x} for x in range(k)]
    left = [frozenset(int(v) for v in t1[:, x] if v < k) | {x} for x in range(k)]
    two = []
    for x in range(k):
        vals = set()
        for y in left[x]:
            vals.update(int(v) for v in t1[y, :k])
        two.append(frozenset(vals | left[x] | right[x]))
    return right, left, two


def green_classes(S: FiniteSemigroup) -> GreenClasses:
    right, left, two = _ideal_keys(S.table, S.size)
    R = Congruence.from_labels(right)
    L = Congruence.from_labels(left)
    J = Congruence.from_labels(two)
    H = Congruence.from_labels(zip(R.blocks, L.blocks))
    return GreenClasses(R, L, J, H)


def is_j_trivial(S: FiniteSemigroup) -> bool:
    return green_classes(S).J.is_equality()


# ---------------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class IsoWitness:
    mapping: tuple[int, ...]

    def check(self, S: FiniteSemigroup, T: FiniteSemigroup) -> bool:
        m = np.asarray(self.mapping)
        if sorted(self.mapping) != list(range(T.size)):
            return False
        return bool(np.array_equal(m[S.table], T.table[np.ix_(m, m)]))


def _profiles(S: FiniteSemigroup) -> list[tuple]:
    t = S.table
    right, left, two = _ideal_keys(t, S.size)
    sq = np.bincount(t[np.arange(S.size), np.arange(S.size)], minlength=S.size)
    out = []
    for x in range(S.size):
        pc = power_cycle(S, x)
        out.append((
            pc.index, pc.period, len(right[x]), len(left[x]), len(two[x]),
            int(sq[x]), int(np.sum(t[x] == x)), int(np.sum(t[:, x] == x)),
            len(set(t[x].tolist())), len(set(t[:, x].tolist())),
        ))
    return out


def find_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup,
                     node_budget: int = 1_000_000) -> Optional[IsoWitness]:
    """Search for an isomorphism S -> T.

    Candidates are pruned by an invariant profile (power index/period, ideal
    sizes, ...) and every assignment is propagated through products of
    already-assigned elements. Raises BudgetExceeded if the search visits more
    than ``node_budget`` nodes without deciding.
    """
    if S.size != T.size:
        return None
    ps, pt = _profiles(S), _profiles(T)
    if sorted(ps) != sorted(pt):
        return None
    cand = [[y for y in range(T.size) if pt[y] == ps[x]] for x in range(S.size)]
    n = S.size
    phi = [-1] * n
    used = [False] * n
    s_tab, t_tab = S.table, T.table
    nodes = 0

    def assign(x: int, y: int, trail: list[int]) -> bool:
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if phi[a] != -1:
                if phi[a] != b:
                    return False
                continue
            if used[b] or pt[b] != ps[a]:
                return False
            phi[a] = b
            used[b] = True
            trail.append(a)
            assigned = trail_all()
            for c in assigned:
                for p, q in ((a, c), (c, a)):
                    stack.append((int(s_tab[p, q]), int(t_tab[phi[p], phi[q]])))
        return True

    def trail_all():
        return [i for i in range(n) if phi[i] != -1]

    def undo(trail: list[int]):
        for a in trail:
            used[phi[a]] = False
            phi[a] = -1

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"isomorphism search exceeded {node_budget} nodes")
        free = [x for x in range(n) if phi[x] == -1]
        if not free:
            return True
        x = min(free, key=lambda e: sum(not used[y] for y in cand[e]))
        for y in cand[x]:
            if used[y]:
                continue
            trail: list[int] = []
            if assign(x, y, trail) and search():
                return True
            undo(trail)
        return False

    if not search():
        return None
    w = IsoWitness(tuple(phi))
    assert w.check(S, T)
    return w
