import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elementary_unimodular
from hororeal.cohomology import (
    CenterClassReport,
    GammaTorus,
    center_class_trivial,
    center_norms,
    delta_trivial,
    delta_trivial_for,
    is_fixed,
    torus_h1_order,
    torus_h2_order,
)
from hororeal.errors import NotCentral, NotFixed, NotInvolution, NotStable
from hororeal.lattice import Sublattice, identity, restrict_involution, vecmat
from hororeal.realform import RealStructureSpec, enumerate_real_structures, gamma_action_matrix, tits_representative
from hororeal.rootsys import CenterElement, GroupSpec, center_elements
from oracles import saturated_fixed_basis

A3 = GroupSpec.parse("A3")
FLIP3 = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
HALF = F(1, 2)


@pytest.mark.parametrize(
    "action, h1, h2",
    [
        ([[1]], 1, 2),
        ([[-1]], 2, 1),
        ([[0, 1], [1, 0]], 1, 1),
        ([[1, 0, 0], [0, -1, 0], [0, 0, -1]], 4, 2),
    ],
)
def test_torus_cohomology_orders(action, h1, h2):
    t = GammaTorus.of(action)
    assert torus_h1_order(t) == h1 and torus_h2_order(t) == h2


def test_torus_rejects_non_involution():
    with pytest.raises(NotInvolution):
        GammaTorus.of([[0, 1], [-1, 0]])


def test_center_class_examples():
    z = CenterElement((HALF, 0, HALF))
    # identity action: fixed elements are the 2-torsion, norms a - a vanish
    assert not center_class_trivial(A3, identity(3), z)
    assert center_class_trivial(A3, identity(3), CenterElement((0, 0, 0)))
    # flip: every element is fixed and the norms are 2a
    assert center_class_trivial(A3, FLIP3, z)
    assert not center_class_trivial(A3, FLIP3, CenterElement((F(1, 4), HALF, F(3, 4))))


def test_center_class_errors():
    with pytest.raises(NotCentral):
        center_class_trivial(A3, identity(3), CenterElement((0, HALF, 0)))
    with pytest.raises(NotFixed):
        center_class_trivial(A3, identity(3), CenterElement((F(1, 4), HALF, F(3, 4))))


def test_center_norms_examples():
    assert center_norms(A3, identity(3)) == {CenterElement((0, 0, 0))}
    assert center_norms(A3, FLIP3) == {CenterElement((0, 0, 0)), CenterElement((HALF, 0, HALF))}


def test_report_invariant():
    with pytest.raises(ValueError):
        CenterClassReport(False, None)
    with pytest.raises(ValueError):
        CenterClassReport(True, (1, 0))


def test_delta_examples_sl4():
    quat = RealStructureSpec.make(A3, ["SL(2,H)"])
    full = Sublattice.full(3)
    rep = delta_trivial(A3, quat, full)
    assert not rep.is_trivial and quat.group == A3
    assert tits_representative(quat).value(rep.witness) == HALF
    assert delta_trivial(A3, quat, Sublattice(3, ((0, 1, 0),))).is_trivial
    assert not delta_trivial(A3, quat, Sublattice(3, ((1, 0, 0), (0, 0, 1)))).is_trivial
    su31 = RealStructureSpec.make(A3, ["SU(3,1)"])
    assert not delta_trivial(A3, su31, full).is_trivial
    assert delta_trivial(A3, su31, Sublattice(3, ((1, 0, -1),))).is_trivial
    with pytest.raises(NotStable):
        delta_trivial(A3, su31, Sublattice(3, ((1, 0, 0),)))


def test_delta_torus_is_trivial():
    t = GroupSpec.parse("T2")
    s = RealStructureSpec.torus([[1, 0], [0, 1]])
    assert delta_trivial(t, s, Sublattice.full(2)).is_trivial


# ---------------------------------------------------------------- properties

NAMES = ["A1", "A3", "A1xA1xA1", "A2xA2", "D4", "A5", "D5", "E6", "E7", "B3xA1", "C4", "A3xA3"]
STRUCTS = [(GroupSpec.parse(n), s) for n in NAMES for s in enumerate_real_structures(GroupSpec.parse(n))]


def stable_lattice(theta, n, rng, k):
    """Random Gamma-stable sublattice generated by k vectors and their images."""
    gens = []
    for _ in range(k):
        v = tuple(rng.randint(-3, 3) for _ in range(n))
        gens += [v, vecmat(v, theta)]
    return Sublattice.from_generators(n, gens)


def oracle_delta(theta, z, m):
    """Trivial iff z is killed by every Galois-fixed character of M."""
    r = restrict_involution(theta, m)
    for coords in saturated_fixed_basis([list(x) for x in r]):
        if z.value(vecmat(coords, m.basis)) != 0:
            return False
    return True


@given(st.sampled_from(STRUCTS), st.integers(0, 2**31), st.integers(1, 3))
def test_delta_against_fixed_character_oracle(gs, seed, k):
    g, s = gs
    theta = gamma_action_matrix(s)
    z = tits_representative(s)
    m = stable_lattice(theta, g.total_rank, random.Random(seed), k)
    assert delta_trivial_for(theta, z, m).is_trivial == oracle_delta(theta, z, m)


@given(st.sampled_from(STRUCTS), st.integers(0, 2**31))
def test_delta_independent_of_basis_and_representative(gs, seed):
    g, s = gs
    rng = random.Random(seed)
    theta = gamma_action_matrix(s)
    z = tits_representative(s)
    m = stable_lattice(theta, g.total_rank, rng, rng.randint(1, 3))
    base = delta_trivial_for(theta, z, m).is_trivial
    if m.rank:
        gmat, _ = elementary_unimodular(m.rank, rng)
        assert delta_trivial_for(theta, z, m.rebased(gmat)).is_trivial == base
    for a in center_elements(g):
        assert delta_trivial_for(theta, z + a - a.permuted(theta), m).is_trivial == base


@pytest.mark.parametrize("gs", STRUCTS, ids=lambda gs: f"{gs[0]}:{gs[1].describe()}")
def test_full_lattice_delta_is_center_class(gs):
    """For M = weight lattice, Delta_H is the Tits class in H^2(Gamma, Z)."""
    g, s = gs
    theta = gamma_action_matrix(s)
    z = tits_representative(s)
    assert is_fixed(z, theta)
    assert delta_trivial(g, s, Sublattice.full(g.total_rank)).is_trivial == center_class_trivial(g, theta, z)


@pytest.mark.parametrize("gs", STRUCTS, ids=lambda gs: f"{gs[0]}:{gs[1].describe()}")
def test_regular_summands_never_obstruct(gs):
    """Fixed characters x + x^sigma always vanish on a fixed central element."""
    g, s = gs
    theta = gamma_action_matrix(s)
    z = tits_representative(s)
    for i in range(g.total_rank):
        e = tuple(int(i == j) for j in range(g.total_rank))
        f = vecmat(e, theta)
        if f != e:
            assert z.value(tuple(a + b for a, b in zip(e, f))) == 0


def test_injective_character_map_detects_exactly_the_center_class():
    """When M^Gamma is a direct summand of the fixed weights, Delta_H equals the center class."""
    for g, s in STRUCTS:
        theta = gamma_action_matrix(s)
        z = tits_representative(s)
        full = Sublattice.full(g.total_rank)
        fixed = Sublattice(g.total_rank, tuple(tuple(r) for r in saturated_fixed_basis([list(x) for x in theta])))
        assert delta_trivial_for(theta, z, fixed).is_trivial == center_class_trivial(g, theta, z)
        assert delta_trivial_for(theta, z, full).is_trivial == center_class_trivial(g, theta, z)
