"""Smooth projective horospherical varieties of Picard number one.

Each is built from a triple (type, w_Y, w_Z) of a simple type and two
fundamental weights. The open orbit is G/H with H the stabilizer of the line
through v_Y + v_Z, whose datum is (S minus {Y, Z}, Z(w_Y - w_Z)).

Node indices in a triple are 0-based and in the numbering of the
as-written type, so the C2 family keeps symplectic numbering.
"""
from __future__ import annotations

from dataclasses import dataclass

from .horospherical import HorosphericalDatum, existence_report
from .lattice import Sublattice
from .realform import RealStructureSpec, catalog, display_label
from .rootsys import DynkinType, GroupSpec, canonical_type


@dataclass(frozen=True)
class Picard1Triple:
    family: int
    dynkin: DynkinType
    y_node: int
    z_node: int
    params: tuple[int, ...] = ()

    def describe(self) -> str:
        return f"({self.dynkin}, w{self.y_node + 1}, w{self.z_node + 1})"


def triples(max_rank: int) -> list[Picard1Triple]:
    """The five families, listed by family and then rank."""
    out = []
    for n in range(3, max_rank + 1):
        out.append(Picard1Triple(1, DynkinType("B", n), n - 2, n - 1, (n,)))
    if max_rank >= 3:
        out.append(Picard1Triple(2, DynkinType("B", 3), 0, 2, (3,)))
    for n in range(2, max_rank + 1):
        for m in range(2, n + 1):
            out.append(Picard1Triple(3, DynkinType("C", n), m - 1, m - 2, (n, m)))
    if max_rank >= 4:
        out.append(Picard1Triple(4, DynkinType("F", 4), 1, 2))
    if max_rank >= 2:
        out.append(Picard1Triple(5, DynkinType("G", 2), 0, 1))
    return out


def datum_of_triple(t: Picard1Triple) -> HorosphericalDatum:
    canon, node_map = canonical_type(t.dynkin)
    g = GroupSpec((canon,))
    y, z = node_map[t.y_node], node_map[t.z_node]
    chi = [0] * canon.rank
    chi[y] += 1
    chi[z] -= 1
    nodes = frozenset(range(canon.rank)) - {y, z}
    return HorosphericalDatum(g, nodes, Sublattice(canon.rank, (tuple(chi),)))


@dataclass(frozen=True)
class Picard1Result:
    label: str
    num_classes: int


def classify_triple(t: Picard1Triple) -> list[Picard1Result]:
    """Real forms of G that admit an equivariant real structure on the variety, with counts."""
    d = datum_of_triple(t)
    out = []
    for rec in catalog(d.group.factors[0]):
        rep = existence_report(RealStructureSpec.make(d.group, [rec.label]), d)
        if rep.exists:
            out.append(Picard1Result(display_label(t.dynkin, rec), rep.num_classes))
    return out
