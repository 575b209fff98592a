"""Run the verification suite for every n up to max_n and write reports."""
import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from nearsyn.verify import run_verification


@dataclass
class VerifyConfig:
    max_n: int = 3
    out_dir: Optional[Path] = None


def main(cfg: VerifyConfig) -> int:
    ok = True
    for n in range(1, cfg.max_n + 1):
        out = cfg.out_dir / f"n{n}" if cfg.out_dir else None
        report = run_verification(n, out, cfg.max_n)
        print(report.to_text())
        print()
        ok &= report.passed
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--out-dir", type=Path, default=None)
    a = p.parse_args()
    sys.exit(main(VerifyConfig(a.max_n, a.out_dir)))
