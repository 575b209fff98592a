"""Print the element census of A+(B_n) for n = 1..max_n, with timings."""
import argparse
import time
from dataclasses import dataclass

from nearsyn.affine import census_formula, construct_a_plus_bn, endomorphisms, affine_maps


@dataclass
class CensusConfig:
    max_n: int = 3


def main(cfg: CensusConfig) -> None:
    print(f"{'n':>2} {'End':>4} {'Aff':>4} {'|A+|':>5} {'formula':>7} {'const':>5} {'sing':>5} {'nsup':>5}  time")
    for n in range(1, cfg.max_n + 1):
        t0 = time.perf_counter()
        A = construct_a_plus_bn(n, cfg.max_n)
        dt = time.perf_counter() - t0
        c = A.census()
        print(f"{n:>2} {len(endomorphisms(n, cfg.max_n)):>4} {len(affine_maps(n, cfg.max_n)):>4} "
              f"{len(A):>5} {census_formula(n):>7} {c['constant']:>5} {c['singleton']:>5} "
              f"{c['nsupport']:>5}  {dt:.2f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=3)
    main(CensusConfig(p.parse_args().max_n))
