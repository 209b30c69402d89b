from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hororeal.errors import InvalidType, NotSemisimple
from hororeal.lattice import determinant
from hororeal.realform import all_types
from hororeal.rootsys import (
    CenterElement,
    DynkinType,
    GroupSpec,
    NodeInvolution,
    canonical_type,
    cartan_matrix,
    center_elements,
    diagram_automorphisms,
    diagram_involutions,
    group_cartan,
    minuscule_nodes,
    weight_pairing,
)
from oracles import (
    cartan_from_roots,
    center_by_grid,
    diagram_automorphisms_brute,
    involution_classes_brute,
    minuscule_by_roots,
)


def _types(max_rank=8):
    out = []
    for f in "ABCDEFG":
        for n in range(1, max_rank + 1):
            try:
                out.append(DynkinType(f, n))
            except InvalidType:
                pass
    return out


TYPES = _types()


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_cartan_matches_root_realization(t):
    assert [list(r) for r in cartan_matrix(t)] == cartan_from_roots(t.family, t.rank)


def test_cartan_examples():
    assert cartan_matrix(DynkinType("A", 1)) == ((2,),)
    a3 = cartan_matrix(DynkinType("A", 3))
    assert a3 == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert determinant(a3) == 4
    b3 = cartan_matrix(DynkinType("B", 3))
    # <alpha_2, alpha_3^vee> = -2 because alpha_3 is short
    assert b3[2][1] == -2 and b3[1][2] == -1
    assert determinant(b3) == 2


@pytest.mark.parametrize("family, rank", [("A", 0), ("B", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 3)])
def test_invalid_types(family, rank):
    with pytest.raises(InvalidType):
        DynkinType(family, rank)


def test_low_rank_aliases():
    b2, m = canonical_type(DynkinType("C", 2))
    assert b2 == DynkinType("B", 2) and m == (1, 0)
    # long/short pattern is preserved by the renumbering
    c2 = cartan_matrix(DynkinType("C", 2))
    cb = cartan_matrix(b2)
    assert all(c2[i][j] == cb[m[i]][m[j]] for i in range(2) for j in range(2))
    a3, m = canonical_type(DynkinType("D", 3))
    d3 = cartan_matrix(DynkinType("D", 3))
    ca = cartan_matrix(a3)
    assert all(d3[i][j] == ca[m[i]][m[j]] for i in range(3) for j in range(3))
    assert GroupSpec.parse("D2").factors == (DynkinType("A", 1),) * 2
    assert GroupSpec.parse("C2").factors == (DynkinType("B", 2),)


def test_weight_pairing():
    assert weight_pairing((1, 0, 0), 1) == 0
    assert weight_pairing((1, 0, -1), 1) == 0
    assert weight_pairing((0, 1, 0), 1) == 1
    with pytest.raises(IndexError):
        weight_pairing((1, 0, 0), 3)


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_center_order_is_determinant(t):
    g = GroupSpec((t,))
    z = center_elements(g)
    assert len(z) == determinant(cartan_matrix(t))
    assert all(x.satisfies_root_relations(g) for x in z)


@pytest.mark.parametrize("t", [t for t in TYPES if determinant(cartan_matrix(t)) ** t.rank <= 200000], ids=str)
def test_center_against_grid(t):
    t = canonical_type(t)[0]
    d = determinant(cartan_matrix(t))
    grid = center_by_grid([list(r) for r in cartan_matrix(t)], d)
    assert {x.q for x in center_elements(GroupSpec((t,)))} == grid


def test_center_examples():
    assert len(center_elements(GroupSpec.parse("A3"))) == 4
    d4 = center_elements(GroupSpec.parse("D4"))
    assert len(d4) == 4 and all((x + x).is_zero() for x in d4)
    assert len(center_elements(GroupSpec.parse("G2"))) == 1
    assert len(center_elements(GroupSpec.parse("A1xA2"))) == 6
    with pytest.raises(NotSemisimple):
        center_elements(GroupSpec(torus_rank=2))


@given(st.sampled_from(["A3", "D4", "D5", "E6", "A1xA2", "B3xC3"]), st.data())
def test_center_is_a_group(name, data):
    z = center_elements(GroupSpec.parse(name))
    zs = set(z)
    a = data.draw(st.sampled_from(z))
    b = data.draw(st.sampled_from(z))
    assert a + b in zs and -a in zs


def test_center_element_normalizes_mod_one():
    z = CenterElement((F(5, 4), F(-1, 2)))
    assert z.q == (F(1, 4), F(1, 2))
    assert z.value((2, 1)) == 0


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_minuscule_against_root_enumeration(t):
    assert set(minuscule_nodes(t)) == minuscule_by_roots([list(r) for r in cartan_matrix(t)])


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_diagram_automorphisms_against_brute_force(t):
    brute = diagram_automorphisms_brute(cartan_matrix(t))
    assert sorted(diagram_automorphisms(t)) == sorted(brute)


@pytest.mark.parametrize(
    "name, classes",
    [("A3", 2), ("A2xA2", 4), ("D4", 2), ("A1xA1", 2), ("A1xA1xA1", 2), ("E6", 2), ("E8", 1), ("B2xB2xA2", 4), ("A2xA2xA2", 6)],
)
def test_involution_class_counts(name, classes):
    assert len(diagram_involutions(GroupSpec.parse(name))) == classes


@pytest.mark.parametrize("name", ["A3", "A2xA2", "D4", "A1xA1xA1", "A2xA1xA2", "D4xA1", "A3xA3"])
def test_involution_classes_against_brute_force(name):
    g = GroupSpec.parse(name)
    ours = [{x.perm for x in cls} for cls in diagram_involutions(g)]
    brute = involution_classes_brute(group_cartan(g))
    assert sorted(map(sorted, ours)) == sorted(map(sorted, brute))
    for cls in diagram_involutions(g):
        for inv in cls:
            assert inv.preserves(g)


def test_node_involution_validation():
    with pytest.raises(InvalidType):
        NodeInvolution((1, 2, 0))
    assert NodeInvolution((2, 1, 0)).matrix() == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_group_spec_layout():
    g = GroupSpec.parse("A2 x B3 x G2")
    assert g.total_rank == 7 and g.offsets == (0, 2, 5)
    assert g.node_factor(4) == 1 and list(g.factor_nodes(2)) == [5, 6]
    assert GroupSpec.parse("T3").torus_rank == 3
    with pytest.raises(InvalidType):
        GroupSpec()


def test_all_types_excludes_duplicates():
    names = [str(t) for t in all_types(4)]
    assert "C2" not in names and "D3" not in names and "B2" in names and "A3" in names
