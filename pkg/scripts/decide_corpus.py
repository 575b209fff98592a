"""Decide syntacticity for a corpus of small semigroups.

Builds every quotient of B_2, both reducts of A+(B_1) and A+(B_2), the
small named semigroups and a batch of random transformation semigroups, then
reports the decision, the subset found and the time taken.
"""
import argparse
import time
from dataclasses import dataclass

import numpy as np

from nearsyn.affine import construct_a_plus_bn
from nearsyn.brandt import brandt_semigroup
from nearsyn.semigroup import Congruence, congruence_closure, quotient, validate_semigroup
from nearsyn.syntactic import ContextMode, decide_syntactic


@dataclass
class CorpusConfig:
    seed: int = 0
    random_count: int = 20
    max_degree: int = 4
    budget: int = 1_000_000
    mode: str = "monoid"


def transformation_table(gens):
    elems = list(dict.fromkeys(gens))
    i = 0
    while i < len(elems):
        for g in list(elems):
            h = tuple(g[v] for v in elems[i])
            if h not in elems:
                elems.append(h)
        i += 1
    idx = {e: j for j, e in enumerate(elems)}
    return [[idx[tuple(b[v] for v in a)] for b in elems] for a in elems]


def corpus(cfg: CorpusConfig):
    B2 = brandt_semigroup(2)
    yield "B2", B2
    seen = set()
    for x in range(5):
        for y in range(x + 1, 5):
            c = congruence_closure(B2, [(x, y)])
            if c.blocks not in seen:
                seen.add(c.blocks)
                yield f"B2/{c.blocks}", quotient(B2, c)
    for n in (1, 2):
        A = construct_a_plus_bn(n)
        yield f"A+(B{n})+", A.add
        yield f"A+(B{n})o", A.mul
    yield "left-zero-3", validate_semigroup([[0, 0, 0], [1, 1, 1], [2, 2, 2]])
    yield "null-3", validate_semigroup([[0, 0, 0]] * 3)
    yield "Z3", validate_semigroup([[(i + j) % 3 for j in range(3)] for i in range(3)])
    rng = np.random.default_rng(cfg.seed)
    for i in range(cfg.random_count):
        d = int(rng.integers(2, cfg.max_degree + 1))
        gens = [tuple(int(v) for v in rng.integers(0, d, d)) for _ in range(2)]
        yield f"transf-{i}", validate_semigroup(transformation_table(gens))


def main(cfg: CorpusConfig) -> None:
    for name, S in corpus(cfg):
        t0 = time.perf_counter()
        d = decide_syntactic(S, budget=cfg.budget, mode=ContextMode(cfg.mode))
        sub = "" if d.subset is None else " ".join(S.labels[x] for x in d.subset)
        print(f"{name:<24} |S|={S.size:<4} {d.decision:<8} {d.method:<12} "
              f"{time.perf_counter() - t0:6.2f}s  {sub}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-count", type=int, default=20)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--mode", choices=[m.value for m in ContextMode], default="monoid")
    a = p.parse_args()
    main(CorpusConfig(seed=a.seed, random_count=a.random_count, budget=a.budget, mode=a.mode))
