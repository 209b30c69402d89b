"""SL4 with H cut out by I = {alpha_2} and M = Z(lambda_1 - lambda_3).

For each of the five real forms: Tits class, existence, number of classes,
and which colored fans in N = Z are Galois-stable.
"""
from dataclasses import dataclass, field

from hororeal.fans import ColoredFan, fan_is_stable
from hororeal.horospherical import HorosphericalDatum, existence_report
from hororeal.realform import RealStructureSpec, record
from hororeal.rootsys import DynkinType, GroupSpec


@dataclass(frozen=True)
class Config:
    forms: tuple[str, ...] = ("SL(4,R)", "SL(2,H)", "SU(2,2)", "SU(3,1)", "SU(4)")
    fans: dict = field(
        default_factory=lambda: {
            "point": [],
            "half-line": [([[1]], [])],
            "line": [([[1]], []), ([[-1]], [])],
            "colored line": [([[1]], [0]), ([[-1]], [2])],
        }
    )


def main(cfg: Config = Config()) -> None:
    g = GroupSpec.parse("A3")
    datum = HorosphericalDatum.make(g, {1}, [[1, 0, -1]])
    fans = {name: ColoredFan.make(cones) for name, cones in cfg.fans.items()}
    print(f"{'form':10s} {'tits':8s} {'exists':7s} classes  stable fans")
    for label in cfg.forms:
        s = RealStructureSpec.make(g, [label])
        rep = existence_report(s, datum)
        tits = "trivial" if record(DynkinType("A", 3), label).tits_trivial else "nontriv"
        stable = [name for name, f in fans.items() if fan_is_stable(s, datum, f)]
        print(f"{label:10s} {tits:8s} {str(rep.exists):7s} {rep.num_classes!s:8s} {', '.join(stable)}")


if __name__ == "__main__":
    main()
