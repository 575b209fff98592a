"""Table-driven replays of the separating contexts used to prove disjunctivity.

For the additive reduct with the subset P, each pair x != y is separated by
elements u, v with u+x+v in P and u+y+v not in P; for the multiplicative
reduct with the subset D, by h, h' with exactly one of h f h', h g h' in D.
Every replay computes the products from the Cayley tables of a constructed
:class:`~nearsyn.affine.APlusBn` and compares them with the closed-form value
predicted for that case, over all admissible parameters.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .affine import APlusBn, SingletonSupport, classify, perm_inverse, perm_then, permutations
from .brandt import THETA
from .syntactic import subset_d, subset_p


@dataclass(frozen=True)
class CaseCheck:
    case: str
    params: tuple
    ok: bool


def _pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def additive_replays(A: APlusBn) -> list[CaseCheck]:
    n = A.n
    P = set(subset_p(A))
    S = A.add
    Z = A.const(THETA)
    pairs = _pairs(n)
    perms = permutations(n)
    out: list[CaseCheck] = []

    def s3(u, x, v):
        return S.product(u, x, v)

    def sep(case, params, u, x, v, y, x_val, y_val=None):
        # x side must hit x_val in P; y side must equal y_val (when given) and miss P
        rx, ry = s3(u, x, v), s3(u, y, v)
        ok = rx == x_val and rx in P and ry not in P
        if y_val is not None:
            ok = ok and ry == y_val
        out.append(CaseCheck(case, params, ok))

    # x of full support xi(p,q)
    for p, q in pairs:
        x = A.const((p, q))
        u, v = A.const((1, p)), A.const((q, 2))
        target = A.const((1, 2))
        sep("1.1", (p, q), u, x, v, Z, target, Z)
        for r, s in pairs:
            if (r, s) != (p, q):
                sep("1.2", (p, q, r, s), u, x, v, A.const((r, s)), target, Z)
        for (k, l), sigma in itertools.product(pairs, perms):
            j = perm_inverse(sigma)[p - 1]
            want = Z if l != q else A.sing((j, k), (1, 2))
            sep("1.3", (p, q, k, l, sigma), u, x, v, A.nsup(k, l, sigma), target, want)
        for (k, l), (r, s) in itertools.product(pairs, pairs):
            want = Z if (p != r or q != s) else A.sing((k, l), (1, 2))
            sep("1.4", (p, q, k, l, r, s), u, x, v, A.sing((k, l), (r, s)), target, want)

    # x of n-support (p,q;sigma)
    for (p, q), sigma in itertools.product(pairs, perms):
        x = A.nsup(p, q, sigma)
        v = A.const((q, 1))
        for (k, l), tau in itertools.product(pairs, perms):
            if (k, l, tau) == (p, q, sigma):
                continue
            if p != k or q != l:
                j = l
            else:
                j = next(i for i in range(1, n + 1) if sigma[i - 1] != tau[i - 1])
            u = A.sing((j, p), (1, sigma[j - 1]))
            sep("2.1", (p, q, sigma, k, l, tau), u, x, v, A.nsup(k, l, tau),
                A.sing((j, p), (1, 1)), Z)
        for (j, k), (m, r) in itertools.product(pairs, pairs):
            for l in range(1, n + 1):
                if sigma[l - 1] == m:
                    continue
                u = A.sing((l, p), (1, sigma[l - 1]))
                sep("2.2", (p, q, sigma, j, k, m, r, l), u, x, v, A.sing((j, k), (m, r)),
                    A.sing((l, p), (1, 1)), Z)
        for l in range(1, n + 1):
            u = A.sing((l, p), (1, sigma[l - 1]))
            sep("2.3", (p, q, sigma, l), u, x, v, Z, A.sing((l, p), (1, 1)), Z)

    # x of singleton support (p,q) -> (r,s)
    for (p, q), (r, s) in itertools.product(pairs, pairs):
        x = A.sing((p, q), (r, s))
        u, v = A.sing((p, q), (1, r)), A.sing((p, q), (s, 1))
        target = A.sing((p, q), (1, 1))
        for (j, k), (l, m) in itertools.product(pairs, pairs):
            if ((j, k), (l, m)) != ((p, q), (r, s)):
                sep("3.1", (p, q, r, s, j, k, l, m), u, x, v, A.sing((j, k), (l, m)), target, Z)
        sep("3.2", (p, q, r, s), u, x, v, Z, target, Z)
    return out


def multiplicative_replays(A: APlusBn) -> list[CaseCheck]:
    n = A.n
    D = set(subset_d(A))
    M = A.mul
    Z = A.const(THETA)
    pairs = _pairs(n)
    perms = permutations(n)
    ident = tuple(range(1, n + 1))
    out: list[CaseCheck] = []

    def sep(case, params, h, f, hp, g, f_val, g_val=None, g_check=None):
        rf, rg = M.product(h, f, hp), M.product(h, g, hp)
        ok = rf == f_val and (rf in D) != (rg in D)
        if g_val is not None:
            ok = ok and rg == g_val
        if g_check is not None:
            ok = ok and g_check(rg)
        out.append(CaseCheck(case, params, ok))

    # f of n-support (p,q;sigma)
    for (p, q), sigma in itertools.product(pairs, perms):
        f = A.nsup(p, q, sigma)
        h, hp = A.nsup(1, p, ident), A.nsup(q, 1, perm_inverse(sigma))
        one = A.nsup(1, 1, ident)
        sep("1-zero", (p, q, sigma), h, f, hp, Z, one, Z)
        for (k, l), tau in itertools.product(pairs, perms):
            if (k, l, tau) == (p, q, sigma):
                continue
            want = Z if (p != k or q != l) else A.nsup(1, 1, perm_then(tau, perm_inverse(sigma)))
            sep("1-nsupport", (p, q, sigma, k, l, tau), h, f, hp, A.nsup(k, l, tau), one, want)
        for (r, s), (u, v) in itertools.product(pairs, pairs):
            sep("1-singleton", (p, q, sigma, r, s, u, v), h, f, hp, A.sing((r, s), (u, v)), one,
                g_check=lambda g: g == Z or isinstance(classify(A.elements[g]), SingletonSupport))
        for (k, l), (s, t) in itertools.product(pairs, pairs):
            # roles swap: here g lands in D and f does not
            h2, hp2 = Z, A.sing((k, l), (s, t))
            sep("1-constant", (p, q, sigma, k, l, s, t), h2, f, hp2, A.const((k, l)), Z,
                A.const((s, t)))

    # f of full support xi(p,q)
    for p, q in pairs:
        f = A.const((p, q))
        for c in pairs + [THETA]:
            if c == (p, q):
                continue
            for u, v in pairs:
                h, hp = A.const((p, q)), A.sing((p, q), (u, v))
                sep("2-constant", (p, q, c, u, v), h, f, hp, A.const(c), A.const((u, v)), Z)
        for (r, s), (u, v) in itertools.product(pairs, pairs):
            sep("2-singleton", (p, q, r, s, u, v), Z, f, A.nsup(q, q, ident),
                A.sing((r, s), (u, v)), A.const((p, q)), Z)

    # f of singleton support (p,q) -> (r,s)
    for (p, q), (r, s) in itertools.product(pairs, pairs):
        f = A.sing((p, q), (r, s))
        h = A.const((p, q))
        for (k, l), (u, v) in itertools.product(pairs, pairs):
            hp = A.sing((r, s), (u, v))
            g = A.sing((k, l), (u, v))
            if g != f:
                sep("3-singleton", (p, q, r, s, k, l, u, v), h, f, hp, g, A.const((u, v)), Z)
        for u, v in pairs:
            sep("3-zero", (p, q, r, s, u, v), h, f, A.sing((r, s), (u, v)), Z, A.const((u, v)), Z)
    return out
