"""Self-maps of B_n and the affine near-semiring A+(B_n).

Maps act on the right of their argument: ``x(f o g) = (xf)g`` and
``x(f + g) = xf + xg``. A map is stored as the tuple of encoded images of
all n^2+1 elements of B_n (see :mod:`nearsyn.brandt` for the encoding).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from . import brandt
from .brandt import THETA, BrandtElement
from .semigroup import BudgetExceeded, FiniteSemigroup, validate_semigroup

MAX_N = 3


class DimensionMismatch(ValueError):
    pass


class CensusMismatch(RuntimeError):
    pass


Perm = tuple[int, ...]


def perm_then(s: Perm, t: Perm) -> Perm:
    """Product ``s.t``: apply s, then t. Permutations are 1-based image tuples."""
    return tuple(t[s[i] - 1] for i in range(len(s)))


def perm_inverse(s: Perm) -> Perm:
    inv = [0] * len(s)
    for i, v in enumerate(s, start=1):
        inv[v - 1] = i
    return tuple(inv)


def perm_identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def permutations(n: int) -> list[Perm]:
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def perm_label(s: Perm) -> str:
    return "id" if s == perm_identity(len(s)) else "".join(map(str, s))


# ---------------------------------------------------------------- maps


@dataclass(frozen=True)
class MapOnBn:
    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        m = self.n * self.n + 1
        if len(self.images) != m or not all(0 <= v < m for v in self.images):
            raise ValueError(f"bad image table for B_{self.n}: {self.images}")

    def __call__(self, x: BrandtElement) -> BrandtElement:
        return apply(self, x)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def __str__(self):
        return map_label(self)


@dataclass(frozen=True)
class Constant:
    c: BrandtElement


@dataclass(frozen=True)
class SingletonSupport:
    src: tuple[int, int]
    dst: tuple[int, int]


@dataclass(frozen=True)
class NSupport:
    p: int
    q: int
    sigma: Perm


@dataclass(frozen=True)
class Other:
    pass


MapKind = Union[Constant, SingletonSupport, NSupport, Other]


def from_function(n: int, fn) -> MapOnBn:
    return MapOnBn(n, tuple(brandt.encode(n, fn(x)) for x in brandt.elements(n)))


def constant(n: int, c: BrandtElement) -> MapOnBn:
    return MapOnBn(n, (brandt.encode(n, c),) * (n * n + 1))


def singleton(n: int, src: tuple[int, int], dst: tuple[int, int]) -> MapOnBn:
    return from_function(n, lambda x: dst if x == tuple(src) else THETA)


def nsupport(n: int, p: int, q: int, sigma: Perm) -> MapOnBn:
    """The map (i, p) -> (i sigma, q), everything else to theta."""
    sigma = tuple(sigma)

    def fn(x):
        if x != THETA and x[1] == p:
            return (sigma[x[0] - 1], q)
        return THETA
    return from_function(n, fn)


def identity_map(n: int) -> MapOnBn:
    return MapOnBn(n, tuple(range(n * n + 1)))


def apply(f: MapOnBn, x: BrandtElement) -> BrandtElement:
    return brandt.decode(f.n, f.images[brandt.encode(f.n, x)])


def _same_n(f: MapOnBn, g: MapOnBn) -> int:
    if f.n != g.n:
        raise DimensionMismatch(f"maps on B_{f.n} and B_{g.n}")
    return f.n


def pointwise_add(f: MapOnBn, g: MapOnBn) -> MapOnBn:
    n = _same_n(f, g)
    t = brandt.add_table(n)
    return MapOnBn(n, tuple(int(t[a, b]) for a, b in zip(f.images, g.images)))


def compose(f: MapOnBn, g: MapOnBn) -> MapOnBn:
    """f first, then g."""
    n = _same_n(f, g)
    return MapOnBn(n, tuple(g.images[a] for a in f.images))


def support(f: MapOnBn) -> set:
    z = f.n * f.n
    return {brandt.decode(f.n, x) for x, v in enumerate(f.images) if v != z}


def classify(f: MapOnBn) -> MapKind:
    n = f.n
    z = n * n
    imgs = f.images
    if len(set(imgs)) == 1:
        return Constant(brandt.decode(n, imgs[0]))
    supp = [x for x, v in enumerate(imgs) if v != z]
    # n-support is tried before singleton support: at n = 1 the map (1,1;id)
    # has a one-point support and is conventionally named as an n-support map.
    if len(supp) == n:
        cols = {brandt.decode(n, x)[1] for x in supp if x != z}
        if z not in supp and len(cols) == 1:
            p = cols.pop()
            dst = [brandt.decode(n, imgs[brandt.encode(n, (i, p))]) for i in range(1, n + 1)]
            qs = {d[1] for d in dst}
            sigma = tuple(d[0] for d in dst)
            if len(qs) == 1 and sorted(sigma) == list(range(1, n + 1)):
                return NSupport(p, qs.pop(), sigma)
    if len(supp) == 1 and supp[0] != z:
        return SingletonSupport(brandt.decode(n, supp[0]), brandt.decode(n, imgs[supp[0]]))
    return Other()


def kind_name(k: MapKind) -> str:
    return {Constant: "constant", SingletonSupport: "singleton",
            NSupport: "nsupport", Other: "other"}[type(k)]


def map_label(f: MapOnBn) -> str:
    k = classify(f)
    if isinstance(k, Constant):
        return f"xi{brandt.label(k.c)}" if k.c != THETA else "xi(theta)"
    if isinstance(k, SingletonSupport):
        return f"{brandt.label(k.src)}->{brandt.label(k.dst)}"
    if isinstance(k, NSupport):
        return f"({k.p},{k.q};{perm_label(k.sigma)})"
    return "[" + ",".join(brandt.label(brandt.decode(f.n, v)) for v in f.images) + "]"


def kind_json(k: MapKind) -> dict:
    if isinstance(k, Constant):
        return {"kind": "constant", "c": brandt.label(k.c)}
    if isinstance(k, SingletonSupport):
        return {"kind": "singleton", "from": list(k.src), "to": list(k.dst)}
    if isinstance(k, NSupport):
        return {"kind": "nsupport", "p": k.p, "q": k.q, "sigma": list(k.sigma)}
    return {"kind": "other"}


# ---------------------------------------------------------------- enumeration


def _check_budget(n: int, max_n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise BudgetExceeded(f"n = {n} exceeds the configured limit n <= {max_n}")


def _generators(n: int) -> list[BrandtElement]:
    if n == 1:
        # (1,1) alone does not reach theta
        return [(1, 1), THETA]
    return [(i, i % n + 1) for i in range(1, n + 1)]


def _words(n: int, gens: list[BrandtElement]) -> list[list[int]]:
    """For every element of B_n, a word over generator positions summing to it."""
    t = brandt.add_table(n)
    gi = [brandt.encode(n, g) for g in gens]
    words: dict[int, list[int]] = {}
    frontier = []
    for pos, g in enumerate(gi):
        if g not in words:
            words[g] = [pos]
            frontier.append(g)
    while frontier:
        nxt = []
        for e in frontier:
            for pos, g in enumerate(gi):
                s = int(t[e, g])
                if s not in words:
                    words[s] = words[e] + [pos]
                    nxt.append(s)
        frontier = nxt
    if len(words) != n * n + 1:
        raise AssertionError("generator set does not generate B_n")
    return [words[x] for x in range(n * n + 1)]


def endomorphisms(n: int, max_n: int = MAX_N) -> list[MapOnBn]:
    """All additive endomorphisms of B_n, sorted by image table.

    Images are chosen for a generating set and propagated to every element
    along a fixed word; a candidate is kept when the homomorphism law holds on
    all pairs.
    """
    _check_budget(n, max_n)
    t = brandt.add_table(n)
    m = n * n + 1
    gens = _generators(n)
    words = _words(n, gens)
    found = set()
    for choice in itertools.product(range(m), repeat=len(gens)):
        img = np.empty(m, dtype=np.int64)
        for x, w in enumerate(words):
            acc = choice[w[0]]
            for pos in w[1:]:
                acc = t[acc, choice[pos]]
            img[x] = acc
        if np.array_equal(img[t], t[img[:, None], img[None, :]]):
            found.add(tuple(int(v) for v in img))
    return [MapOnBn(n, im) for im in sorted(found)]


def constants(n: int) -> list[MapOnBn]:
    return [constant(n, c) for c in brandt.elements(n)]


def affine_maps(n: int, max_n: int = MAX_N) -> list[MapOnBn]:
    """Pointwise sums g + h, g an endomorphism and h constant; sorted by image table."""
    out = {pointwise_add(g, h) for g in endomorphisms(n, max_n) for h in constants(n)}
    return sorted(out, key=lambda f: f.images)


def generate_closure(gens: Iterable[MapOnBn], op: str = "add",
                     max_elements: int = 100_000) -> list[MapOnBn]:
    """Least set containing ``gens`` and closed under ``op`` ("add" or "compose").

    Returned in discovery order (generators first, deduplicated).
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator set")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise DimensionMismatch("generators live on different B_n")
    if op == "add":
        t = brandt.add_table(n)
        prod = lambda a, b: t[a, b]  # noqa: E731
    elif op == "compose":
        prod = lambda a, b: b[a]  # noqa: E731
    else:
        raise ValueError(f"unknown operation {op!r}")
    seen: dict[tuple, int] = {}
    elems: list[np.ndarray] = []

    def push(arr) -> None:
        key = tuple(int(v) for v in arr)
        if key not in seen:
            if len(elems) >= max_elements:
                raise BudgetExceeded(f"closure exceeds {max_elements} elements")
            seen[key] = len(elems)
            elems.append(np.asarray(key, dtype=np.int64))

    for g in gens:
        push(g.images)
    done = 0
    while done < len(elems):
        a = elems[done]
        for j in range(done + 1):
            b = elems[j]
            push(prod(a, b))
            push(prod(b, a))
        done += 1
    return [MapOnBn(n, tuple(int(v) for v in e)) for e in elems]


def canonical_elements(n: int) -> list[MapOnBn]:
    """The classified enumeration of A+(B_n) in canonical order.

    Constants (B_n order), then singleton-support maps by (k,l,p,q), then
    n-support maps by (p,q,sigma). At n = 1 the single n-support map is
    (1,1;id) and there are no separate singleton-support maps.
    """
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    out = constants(n)
    if n >= 2:
        out += [singleton(n, s, d) for s in pairs for d in pairs]
    out += [nsupport(n, p, q, s) for p in range(1, n + 1) for q in range(1, n + 1)
            for s in permutations(n)]
    return out


def census_formula(n: int) -> int:
    if n == 1:
        return 3
    return (factorial(n) + 1) * n * n + n ** 4 + 1


def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------- A+(B_n)


def _product_tables(E: np.ndarray, n: int, index: dict) -> tuple[np.ndarray, np.ndarray]:
    m = len(E)
    t = brandt.add_table(n)
    sums = t[E[:, None, :], E[None, :, :]]
    comps = E[np.arange(m)[None, :, None], E[:, None, :]]
    add = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            try:
                add[i, j] = index[tuple(sums[i, j].tolist())]
                mul[i, j] = index[tuple(comps[i, j].tolist())]
            except KeyError as exc:
                raise CensusMismatch(f"product of elements {i}, {j} leaves the carrier") from exc
    return add, mul


@dataclass(frozen=True, eq=False)
class APlusBn:
    """A+(B_n) with both semigroup reducts.

    ``add`` is (A+(B_n), +), ``mul`` is (A+(B_n), o) with ``mul.table[i, j]``
    the index of "element i, then element j". ``aff`` indexes Aff(B_n).
    """

    n: int
    elements: tuple[MapOnBn, ...]
    kinds: tuple[MapKind, ...]
    add: FiniteSemigroup
    mul: FiniteSemigroup
    aff: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def index_of(self, f: MapOnBn) -> int:
        return self._index[f.images]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {f.images: i for i, f in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def const(self, c: BrandtElement) -> int:
        return self.index_of(constant(self.n, c))

    def sing(self, src, dst) -> int:
        return self.index_of(singleton(self.n, tuple(src), tuple(dst)))

    def nsup(self, p: int, q: int, sigma: Optional[Perm] = None) -> int:
        sigma = perm_identity(self.n) if sigma is None else tuple(sigma)
        return self.index_of(nsupport(self.n, p, q, sigma))

    def labels(self) -> tuple[str, ...]:
        return self.add.labels

    def census(self) -> dict[str, int]:
        out = {"constant": 0, "singleton": 0, "nsupport": 0, "other": 0}
        for k in self.kinds:
            out[kind_name(k)] += 1
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "elements": [kind_json(k) for k in self.kinds],
            "add_table": self.add.table.tolist(),
            "mul_table": self.mul.table.tolist(),
            "aff": list(self.aff),
        }


def construct_a_plus_bn(n: int, max_n: int = MAX_N) -> APlusBn:
    """Generate A+(B_n) as the additive closure of Aff(B_n) and check it.

    The generated set must coincide with the classified enumeration of
    constants, singleton-support and n-support maps, and must be closed
    under composition; otherwise CensusMismatch is raised.
    """
    _check_budget(n, max_n)
    aff = affine_maps(n, max_n)
    generated = {f.images for f in generate_closure(aff, "add")}
    canon = canonical_elements(n)
    if generated != {f.images for f in canon} or len(canon) != census_formula(n):
        raise CensusMismatch(
            f"additive closure of Aff(B_{n}) has {len(generated)} elements, "
            f"classified enumeration has {len(canon)}")
    kinds = tuple(classify(f) for f in canon)
    if any(isinstance(k, Other) for k in kinds):
        raise CensusMismatch("generated element of unexpected kind")
    index = {f.images: i for i, f in enumerate(canon)}
    E = np.array([f.images for f in canon], dtype=np.int64)
    add, mul = _product_tables(E, n, index)
    labels = [map_label(f) for f in canon]
    return APlusBn(
        n=n,
        elements=tuple(canon),
        kinds=kinds,
        add=validate_semigroup(add, labels),
        mul=validate_semigroup(mul, labels),
        aff=tuple(sorted(index[f.images] for f in aff)),
    )
