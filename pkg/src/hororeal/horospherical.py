"""Horospherical data (I, M) and the existence criterion for real structures on G/H."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cohomology import CenterClassReport, delta_trivial
from .errors import DegenerateBasis, GroupMismatch, InvalidDatum, OrthogonalityViolated
from .lattice import (
    Sublattice,
    as_matrix,
    involution_invariants,
    rank,
    restrict_involution,
    sublattices_equal,
)
from .realform import RealStructureSpec, gamma_action_matrix, node_involution
from .rootsys import GroupSpec


@dataclass(frozen=True)
class HorosphericalDatum:
    """The pair (I, M): nodes of the parabolic and the lattice of characters."""

    group: GroupSpec
    I: frozenset[int]
    M: Sublattice

    def __post_init__(self):
        nodes = frozenset(int(i) for i in self.I)
        object.__setattr__(self, "I", nodes)
        n = self.group.total_rank
        if self.group.is_torus and nodes:
            raise InvalidDatum("a torus has no simple roots")
        bad = [i for i in nodes if not 0 <= i < n]
        if bad:
            raise InvalidDatum(f"nodes {sorted(bad)} out of range 0..{n - 1}")
        if self.M.ambient_rank != n:
            raise InvalidDatum(f"M lives in rank {self.M.ambient_rank}, the weight lattice has rank {n}")

    @classmethod
    def make(cls, group: GroupSpec, I: Iterable[int], m_basis) -> "HorosphericalDatum":
        return cls(group, frozenset(I), Sublattice(group.total_rank, as_matrix(m_basis)))

    @property
    def colors(self) -> tuple[int, ...]:
        """Nodes outside I (empty for a torus)."""
        return tuple(i for i in range(0 if self.group.is_torus else self.group.total_rank) if i not in self.I)


def validate_datum(d: HorosphericalDatum) -> None:
    """Raise if some row of M pairs nontrivially with a coroot of I."""
    basis = d.M.basis
    if basis and rank(basis) < len(basis):
        raise DegenerateBasis("basis of M is linearly dependent")
    for r, row in enumerate(basis):
        for node in sorted(d.I):
            if row[node]:
                raise OrthogonalityViolated(node, r)


def _check_group(sigma: RealStructureSpec, d: HorosphericalDatum):
    if sigma.group != d.group:
        raise GroupMismatch(f"structure on {sigma.group} applied to a datum on {d.group}")


def apply_gamma_to_datum(sigma: RealStructureSpec, d: HorosphericalDatum) -> HorosphericalDatum:
    """The datum of the conjugate subgroup sigma_qs(H)."""
    _check_group(sigma, d)
    a = gamma_action_matrix(sigma)
    nodes = frozenset() if d.group.is_torus else frozenset(node_involution(sigma)(i) for i in d.I)
    return HorosphericalDatum(d.group, nodes, d.M.image(a))


def datum_is_stable(sigma: RealStructureSpec, d: HorosphericalDatum) -> bool:
    image = apply_gamma_to_datum(sigma, d)
    return image.I == d.I and sublattices_equal(image.M, d.M)


@dataclass(frozen=True)
class ExistenceReport:
    datum_stable: bool
    exists_quasi_split: bool
    delta: CenterClassReport | None
    exists: bool
    num_classes: int | None
    torus_invariants: tuple[int, int, int] | None
    reason: str = ""


def existence_report(sigma: RealStructureSpec, d: HorosphericalDatum) -> ExistenceReport:
    """Decide whether G/H carries a (G, sigma)-equivariant real structure, and count them."""
    _check_group(sigma, d)
    validate_datum(d)
    if not datum_is_stable(sigma, d):
        return ExistenceReport(
            datum_stable=False,
            exists_quasi_split=False,
            delta=None,
            exists=False,
            num_classes=None,
            torus_invariants=None,
            reason="the datum (I, M) is not stable under the Galois action",
        )
    r = restrict_involution(gamma_action_matrix(sigma), d.M)
    inv = involution_invariants(r).triple
    delta = delta_trivial(d.group, sigma, d.M)
    if not delta.is_trivial:
        return ExistenceReport(
            datum_stable=True,
            exists_quasi_split=True,
            delta=delta,
            exists=False,
            num_classes=None,
            torus_invariants=inv,
            reason=f"Delta_H is nontrivial: {delta.detail}",
        )
    return ExistenceReport(
        datum_stable=True,
        exists_quasi_split=True,
        delta=delta,
        exists=True,
        num_classes=2 ** inv[1],
        torus_invariants=inv,
        reason=f"datum is stable and Delta_H is trivial; M has n1 = {inv[1]} sign summands",
    )


def count_classes_torus(a) -> int:
    """Number of equivariant real structures on a homogeneous space with torus T_M."""
    return 2 ** involution_invariants(a).n1


def datum_of_flag(g: GroupSpec, I: Iterable[int]) -> HorosphericalDatum:
    """Datum of G/P_I."""
    return HorosphericalDatum(g, frozenset(I), Sublattice(g.total_rank, ()))


def datum_of_maximal_unipotent(g: GroupSpec) -> HorosphericalDatum:
    """Datum of G/U: no nodes, the full weight lattice."""
    return HorosphericalDatum(g, frozenset(), Sublattice.full(g.total_rank))
