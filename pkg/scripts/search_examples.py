"""Enumerate controllable subdirect products B <= S x S for a few small S.

    python scripts/search_examples.py --groups Z2 Z3 Z2xZ2 S3 D4 --min-ell 2 --out hits/
"""

import argparse
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from gtrellis.groups import eta, group_from_spec
from gtrellis.search import search_subdirect
from gtrellis.textio import dump_section


@dataclass
class SearchConfig:
    groups: list = field(default_factory=lambda: ["Z2", "Z3", "Z2xZ2", "Z4", "S3"])
    min_ell: int = 0
    nonabelian: bool = False
    out: str | None = None


def run(cfg: SearchConfig) -> None:
    outdir = Path(cfg.out) if cfg.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    print(f"{'S':>8} {'|B|':>5} {'ell':>4} {'eta':>4} {'abelian':>8}")
    for name in cfg.groups:
        S = group_from_spec(name)
        t0 = time.perf_counter()
        hits = search_subdirect(S, nonabelian=cfg.nonabelian, min_ell=cfg.min_ell)
        for i, h in enumerate(hits):
            print(f"{name:>8} {h.section.B.order:>5} {h.ell:>4} {eta(h.section.B):>4} {str(h.abelian):>8}")
            if outdir:
                sec = replace(h.section, name=f"{name}_hit{i}")
                (outdir / f"{name}_hit{i}.sec").write_text(dump_section(sec, provenance="search hit"))
        print(f"# {name}: {len(hits)} hits in {time.perf_counter() - t0:.2f}s")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--groups", nargs="+", default=SearchConfig().groups)
    p.add_argument("--min-ell", type=int, default=0)
    p.add_argument("--nonabelian", action="store_true")
    p.add_argument("--out")
    a = p.parse_args()
    run(SearchConfig(a.groups, a.min_ell, a.nonabelian, a.out))


if __name__ == "__main__":
    main()
