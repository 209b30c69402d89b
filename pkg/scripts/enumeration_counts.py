"""Count real group structures and quasi-split classes on products of simple groups."""
import argparse
from dataclasses import dataclass

from hororeal.realform import enumerate_real_structures, quasi_split_classes
from hororeal.rootsys import GroupSpec


@dataclass(frozen=True)
class Config:
    groups: tuple[str, ...] = ("A1", "A1xA1", "A1xA1xA1", "A1xA1xA1xA1", "A2xA2", "D4", "E6", "E6xE6", "A3xD4")
    verbose: bool = False


def run(cfg: Config) -> None:
    for name in cfg.groups:
        g = GroupSpec.parse(name)
        structures = enumerate_real_structures(g)
        print(f"{name:14s} structures {len(structures):4d}   quasi-split classes {len(quasi_split_classes(g))}")
        if cfg.verbose:
            for s in structures:
                print(f"    {s.describe()}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("groups", nargs="*")
    p.add_argument("-v", "--verbose", action="store_true")
    a = p.parse_args()
    run(Config(tuple(a.groups) or Config.groups, a.verbose))
