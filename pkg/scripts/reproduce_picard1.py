"""Print the real forms admitting an equivariant real structure on each
smooth projective horospherical variety of Picard number one.

    python scripts/reproduce_picard1.py --max-rank 8
"""
import argparse
import time
from dataclasses import dataclass

from hororeal.picard1 import classify_triple, triples


@dataclass(frozen=True)
class Config:
    max_rank: int = 8


def run(cfg: Config) -> None:
    start = time.perf_counter()
    rows = [(t, classify_triple(t)) for t in triples(cfg.max_rank)]
    elapsed = time.perf_counter() - start
    family = None
    for t, results in rows:
        if t.family != family:
            family = t.family
            print(f"family ({family})")
        forms = ", ".join(f"{r.label} [{r.num_classes}]" for r in results)
        print(f"  {t.describe():18s} {forms}")
    print(f"{len(rows)} triples in {elapsed:.3f}s; bracketed numbers are class counts")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--max-rank", type=int, default=Config.max_rank)
    run(Config(p.parse_args().max_rank))
