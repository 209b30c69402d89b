"""Tate cohomology of real tori and of finite centers, and the obstruction Delta_H.

Convention: for a Galois action theta on characters (v -> v @ theta), a
central element with values q acquires sigma(q) = -theta q. Fixed elements
satisfy z = -theta z and norms are a + sigma(a) = a - theta a.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotCentral, NotFixed
from .lattice import (
    GammaLatticeInvariants,
    Matrix,
    Sublattice,
    as_matrix,
    check_involution,
    involution_invariants,
    restrict_involution,
    vecmat,
)
from .realform import RealStructureSpec, gamma_action_matrix, tits_representative
from .rootsys import CenterElement, GroupSpec, center_elements


@dataclass(frozen=True)
class GammaTorus:
    """Real torus given by the involution on its character lattice."""

    character_lattice_rank: int
    action: Matrix

    def __post_init__(self):
        a = check_involution(self.action)
        if len(a) != self.character_lattice_rank:
            raise DimensionMismatch("action size does not match the lattice rank")
        object.__setattr__(self, "action", a)

    @classmethod
    def of(cls, action: Sequence[Sequence[int]]) -> "GammaTorus":
        a = as_matrix(action)
        return cls(len(a), a)

    @property
    def invariants(self) -> GammaLatticeInvariants:
        return involution_invariants(self.action)


def torus_h1_order(t: GammaTorus) -> int:
    """|H^1(Gamma, T)| = 2^n1."""
    return 2 ** t.invariants.n1


def torus_h2_order(t: GammaTorus) -> int:
    """|H^2(Gamma, T)| = 2^n0."""
    return 2 ** t.invariants.n0


@dataclass(frozen=True)
class CenterClassReport:
    is_trivial: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def __post_init__(self):
        if (self.witness is None) != self.is_trivial:
            raise ValueError("a witness is present exactly when the class is nontrivial")


def is_fixed(z: CenterElement, theta: Matrix) -> bool:
    return z.permuted(theta) == -z


def center_norms(g: GroupSpec, theta: Matrix) -> set[CenterElement]:
    return {a - a.permuted(theta) for a in center_elements(g)}


def center_class_trivial(g: GroupSpec, theta: Sequence[Sequence[int]], z: CenterElement) -> bool:
    """Whether the class of z in H^2(Gamma, Z(G)) vanishes."""
    theta = as_matrix(theta)
    if not z.satisfies_root_relations(g):
        raise NotCentral(f"{z} violates the root relations of {g}")
    if not is_fixed(z, theta):
        raise NotFixed(f"{z} is not fixed by the Galois action")
    return z in center_norms(g, theta)


def delta_trivial_for(theta: Matrix, z: CenterElement, m: Sublattice) -> CenterClassReport:
    """Evaluate Delta_H from the action, a Tits representative and M."""
    r = restrict_involution(theta, m)
    inv = involution_invariants(r)
    for coords in inv.trivial_vectors():
        e = vecmat(coords, m.basis)
        v = z.value(e)
        if v == Fraction(1, 2):
            return CenterClassReport(False, tuple(e), f"character {list(e)} is Galois-fixed and takes the value -1")
        if v != 0:
            raise ArithmeticError(f"fixed character {e} has value {v} on a fixed central element")
    if inv.n0 == 0:
        return CenterClassReport(True, None, "M has no trivial summand, so H^2 vanishes")
    return CenterClassReport(True, None, "every Galois-fixed summand of M is trivial on the Tits class")


def delta_trivial(g: GroupSpec, sigma: RealStructureSpec, m: Sublattice) -> CenterClassReport:
    """Whether Delta_H(sigma) vanishes for the horospherical lattice M."""
    if sigma.group != g:
        raise DimensionMismatch("structure and group differ")
    if g.is_torus:
        restrict_involution(gamma_action_matrix(sigma), m)
        return CenterClassReport(True, None, "tori have no Tits obstruction")
    return delta_trivial_for(gamma_action_matrix(sigma), tits_representative(sigma), m)
