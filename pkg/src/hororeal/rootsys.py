"""Root data of simply connected semisimple groups.

Weights are integer tuples in the fundamental-weight basis, nodes are
0-based global indices (factor offset + Bourbaki index - 1), and the Cartan
matrix has C[i][j] = <alpha_j, alpha_i^vee>, so column j is alpha_j written
in fundamental weights.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidType, NotSemisimple
from .lattice import Matrix, as_matrix

FAMILIES = "ABCDEFG"
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
_MAX_RANK = {"E": 8, "F": 4, "G": 2}


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        fam = str(self.family).upper()
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise InvalidType(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < _MIN_RANK[fam] or self.rank > _MAX_RANK.get(fam, self.rank):
            raise InvalidType(f"rank {self.rank} is not allowed for family {fam}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise InvalidType(f"cannot parse Dynkin type {text!r}")
        return cls(m.group(1), int(m.group(2)))


# Low-rank coincidences. Maps send as-written node index to canonical index.
_ALIASES: dict[tuple[str, int], tuple[DynkinType, tuple[int, ...]]] = {
    ("C", 2): (DynkinType("B", 2), (1, 0)),
    ("D", 3): (DynkinType("A", 3), (1, 0, 2)),
}


def canonical_type(t: DynkinType) -> tuple[DynkinType, tuple[int, ...]]:
    """Canonical representative of a type and the node renumbering into it."""
    if (t.family, t.rank) in _ALIASES:
        return _ALIASES[(t.family, t.rank)]
    return t, tuple(range(t.rank))


def expand_factor(family: str, rank: int) -> list[tuple[DynkinType, tuple[int, ...]]]:
    """Factor list for an as-written type; D2 splits into A1 x A1."""
    if str(family).upper() == "D" and rank == 2:
        a1 = DynkinType("A", 1)
        return [(a1, (0,)), (a1, (0,))]
    return [canonical_type(DynkinType(family, rank))]


@dataclass(frozen=True)
class GroupSpec:
    """Simply connected semisimple group as ordered simple factors, or a torus.

    Factors are stored in canonical form (C2 becomes B2, D3 becomes A3);
    callers holding as-written node indices translate them with
    canonical_type first.
    """

    factors: tuple[DynkinType, ...] = ()
    torus_rank: int = 0

    def __post_init__(self):
        factors = tuple(canonical_type(f)[0] for f in self.factors)
        object.__setattr__(self, "factors", factors)
        if factors and self.torus_rank:
            raise NotSemisimple("a group is either semisimple or a torus, not both")
        if not factors and self.torus_rank < 1:
            raise InvalidType("group needs at least one factor or a positive torus rank")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse 'A2xA2', 'B3 x G2', 'T3' (torus of rank 3)."""
        parts = [p for p in re.split(r"\s*[x×*]\s*", text.strip()) if p]
        if len(parts) == 1 and re.fullmatch(r"[Tt]\s*(\d+)", parts[0]):
            return cls(torus_rank=int(parts[0][1:]))
        factors: list[DynkinType] = []
        for p in parts:
            m = re.fullmatch(r"([A-Ga-g])_?(\d+)", p)
            if not m:
                raise InvalidType(f"cannot parse Dynkin type {p!r}")
            factors += [f for f, _ in expand_factor(m.group(1), int(m.group(2)))]
        return cls(tuple(factors))

    @property
    def is_torus(self) -> bool:
        return not self.factors

    @property
    def total_rank(self) -> int:
        return self.torus_rank if self.is_torus else sum(f.rank for f in self.factors)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, k = [], 0
        for f in self.factors:
            out.append(k)
            k += f.rank
        return tuple(out)

    def factor_nodes(self, i: int) -> range:
        start = self.offsets[i]
        return range(start, start + self.factors[i].rank)

    def node_factor(self, node: int) -> int:
        for i, off in enumerate(self.offsets):
            if off <= node < off + self.factors[i].rank:
                return i
        raise IndexError(f"node {node} out of range 0..{self.total_rank - 1}")

    def require_semisimple(self):
        if self.is_torus:
            raise NotSemisimple("operation needs a semisimple group, got a torus")

    def __str__(self) -> str:
        if self.is_torus:
            return f"T{self.torus_rank}"
        return "x".join(str(f) for f in self.factors)


WeightVector = tuple[int, ...]


def fundamental_weight(g: GroupSpec, node: int) -> WeightVector:
    if not 0 <= node < g.total_rank:
        raise IndexError(f"node {node} out of range")
    return tuple(int(i == node) for i in range(g.total_rank))


def weight_pairing(chi: Sequence[int], coroot_node: int) -> int:
    """<chi, alpha_node^vee> for chi in fundamental-weight coordinates."""
    if not 0 <= coroot_node < len(chi):
        raise IndexError(f"node {coroot_node} out of range for a weight of length {len(chi)}")
    return int(chi[coroot_node])


@lru_cache(maxsize=None)
def cartan_matrix(t: DynkinType) -> Matrix:
    n = t.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, ij=-1, ji=-1):
        # C[i][j] = <alpha_j, alpha_i^vee>
        c[i][j], c[j][i] = ij, ji

    fam = t.family
    if fam in "ABCD":
        chain = n - 1 if fam != "D" else n - 2
        for i in range(chain - 1):
            link(i, i + 1)
        if fam == "A" and n > 1:
            link(n - 2, n - 1)
        elif fam == "B":
            link(n - 2, n - 1, ij=-1, ji=-2)  # alpha_n short
        elif fam == "C":
            link(n - 2, n - 1, ij=-2, ji=-1)  # alpha_n long
        elif fam == "D":
            link(n - 3, n - 2)
            link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, ij=-1, ji=-2)  # alpha_2 long, alpha_3 short
        link(2, 3)
    elif fam == "G":
        link(0, 1, ij=-3, ji=-1)  # alpha_1 short
    return as_matrix(c)


def group_cartan(g: GroupSpec) -> Matrix:
    g.require_semisimple()
    n = g.total_rank
    rows = [[0] * n for _ in range(n)]
    for f, off in zip(g.factors, g.offsets):
        for i, row in enumerate(cartan_matrix(f)):
            rows[off + i][off : off + f.rank] = row
    return as_matrix(rows)


@lru_cache(maxsize=None)
def minuscule_nodes(t: DynkinType) -> tuple[int, ...]:
    n = t.rank
    return {
        "A": tuple(range(n)),
        "B": (n - 1,),
        "C": (0,),
        "D": (0, n - 2, n - 1),
        "E": {6: (0, 5), 7: (6,), 8: ()}.get(n, ()),
    }.get(t.family, ())


def minuscule_weights(g: GroupSpec) -> tuple[int, ...]:
    """Global nodes whose fundamental weight is minuscule."""
    out = []
    for f, off in zip(g.factors, g.offsets):
        out += [off + k for k in minuscule_nodes(f)]
    return tuple(out)


def _frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=True)
class CenterElement:
    """Element of Z(G) recorded by the values lambda_k(z) in Q/Z."""

    q: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(_frac_mod1(Fraction(x)) for x in self.q))

    @classmethod
    def zero(cls, n: int) -> "CenterElement":
        return cls((Fraction(0),) * n)

    def __add__(self, other: "CenterElement") -> "CenterElement":
        if len(self.q) != len(other.q):
            raise DimensionMismatch("center elements of different groups")
        return CenterElement(tuple(a + b for a, b in zip(self.q, other.q)))

    def __neg__(self) -> "CenterElement":
        return CenterElement(tuple(-a for a in self.q))

    def __sub__(self, other: "CenterElement") -> "CenterElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.q)

    def value(self, chi: Sequence[int]) -> Fraction:
        """chi(z) written additively in Q/Z."""
        if len(chi) != len(self.q):
            raise DimensionMismatch("weight and center element have different lengths")
        return _frac_mod1(sum((c * x for c, x in zip(chi, self.q)), Fraction(0)))

    def permuted(self, theta: Sequence[Sequence[int]]) -> "CenterElement":
        """theta @ q as a column vector."""
        return CenterElement(tuple(sum((theta[k][j] * self.q[j] for j in range(len(self.q))), Fraction(0)) for k in range(len(self.q))))

    def satisfies_root_relations(self, g: GroupSpec) -> bool:
        c = group_cartan(g)
        n = len(c)
        if len(self.q) != n:
            return False
        return all(_frac_mod1(sum((c[i][j] * self.q[i] for i in range(n)), Fraction(0))) == 0 for j in range(n))

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.q) + ")"


def _inverse_rows(c: Matrix) -> list[list[Fraction]]:
    n = len(c)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(c)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def _simple_center(t: DynkinType) -> tuple[CenterElement, ...]:
    # rows of C^-1 satisfy the root relations and generate all solutions
    gens = [CenterElement(tuple(row)) for row in _inverse_rows(cartan_matrix(t))]
    seen = {CenterElement.zero(t.rank)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for z in frontier:
            for gen in gens:
                w = z + gen
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen))


def center_elements(g: GroupSpec) -> list[CenterElement]:
    """All of Z(G), as the product of the factor centers."""
    g.require_semisimple()
    out = []
    for combo in itertools.product(*(_simple_center(f) for f in g.factors)):
        out.append(CenterElement(tuple(x for z in combo for x in z.q)))
    return sorted(out)


@dataclass(frozen=True)
class NodeInvolution:
    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(len(perm))):
            raise InvalidType(f"{perm} is not a permutation")
        if any(perm[perm[i]] != i for i in range(len(perm))):
            raise InvalidType(f"{perm} is not an involution")

    @classmethod
    def identity(cls, n: int) -> "NodeInvolution":
        return cls(tuple(range(n)))

    def __call__(self, node: int) -> int:
        return self.perm[node]

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def matrix(self) -> Matrix:
        """Permutation matrix with a[k][perm[k]] = 1, so e_k @ a = e_perm(k)."""
        n = len(self.perm)
        return tuple(tuple(int(j == self.perm[k]) for j in range(n)) for k in range(n))

    def preserves(self, g: GroupSpec) -> bool:
        c = group_cartan(g)
        n = len(c)
        return len(self.perm) == n and all(c[self.perm[i]][self.perm[j]] == c[i][j] for i in range(n) for j in range(n))


@lru_cache(maxsize=None)
def diagram_automorphisms(t: DynkinType) -> tuple[tuple[int, ...], ...]:
    """Aut of the Dynkin diagram of a simple type, as node permutations."""
    n = t.rank
    ident = tuple(range(n))
    if t.family == "A" and n > 1:
        return (ident, tuple(reversed(ident)))
    if t.family == "D" and n == 4:
        outer = (0, 2, 3)
        out = []
        for img in itertools.permutations(outer):
            p = list(ident)
            for a, b in zip(outer, img):
                p[a] = b
            out.append(tuple(p))
        return tuple(sorted(out))
    if t.family == "D":
        return (ident, ident[:-2] + (n - 1, n - 2))
    if t.family == "E" and n == 6:
        return (ident, (5, 1, 4, 3, 2, 0))
    return (ident,)


def simple_involution_class(t: DynkinType, perm: Sequence[int]) -> int:
    """Conjugacy class of an involutive diagram automorphism: 0 identity, 1 otherwise.

    Every simple type has at most one class of nontrivial involutions.
    """
    return int(any(i != p for i, p in enumerate(perm)))


def default_outer_involution(t: DynkinType) -> tuple[int, ...]:
    """Chosen representative of the nontrivial involution class (identity if none)."""
    n = t.rank
    autos = [p for p in diagram_automorphisms(t) if simple_involution_class(t, p)]
    invols = [p for p in autos if all(p[p[i]] == i for i in range(n))]
    if not invols:
        return tuple(range(n))
    if t.family == "D" and n == 4:
        return (0, 1, 3, 2)
    return invols[0]


def _matchings(items: Sequence[int]) -> Iterable[list[tuple[int, int]]]:
    """All sets of disjoint pairs from items."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for m in _matchings(rest):
        yield m
    for i, other in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + m


def involution_class_key(g: GroupSpec, inv: NodeInvolution) -> tuple:
    """Conjugacy invariant under Aut(Dyn): per factor type, (#swapped pairs, sorted fixed classes)."""
    g.require_semisimple()
    fperm = factor_permutation(g, inv)
    key = []
    for t in sorted(set(g.factors)):
        idx = [i for i, f in enumerate(g.factors) if f == t]
        pairs = sum(1 for i in idx if fperm[i] > i)
        fixed = sorted(
            simple_involution_class(t, [inv.perm[g.offsets[i] + k] - g.offsets[i] for k in range(t.rank)])
            for i in idx
            if fperm[i] == i
        )
        key.append((str(t), pairs, tuple(fixed)))
    return tuple(key)


def factor_permutation(g: GroupSpec, inv: NodeInvolution) -> tuple[int, ...]:
    return tuple(g.node_factor(inv.perm[off]) for off in g.offsets)


def diagram_involutions(g: GroupSpec) -> list[list[NodeInvolution]]:
    """All involutive diagram automorphisms, grouped by Aut(Dyn)-conjugacy class.

    Classes are ordered by key; each class lists its members in sorted order.
    """
    g.require_semisimple()
    by_type: dict[DynkinType, list[int]] = {}
    for i, f in enumerate(g.factors):
        by_type.setdefault(f, []).append(i)

    def factor_choices(t: DynkinType, idx: list[int]):
        autos = diagram_automorphisms(t)
        invols = [p for p in autos if all(p[p[k]] == k for k in range(t.rank))]
        inverse = {p: tuple(sorted(range(t.rank), key=lambda k: p[k])) for p in autos}
        for matching in _matchings(idx):
            paired = {i for pair in matching for i in pair}
            fixed = [i for i in idx if i not in paired]
            for twists in itertools.product(autos, repeat=len(matching)):
                for local in itertools.product(invols, repeat=len(fixed)):
                    assignment = {}
                    for (i, j), a in zip(matching, twists):
                        assignment[i] = (j, a)
                        assignment[j] = (i, inverse[a])
                    for i, p in zip(fixed, local):
                        assignment[i] = (i, p)
                    yield assignment

    groups = list(by_type.items())
    classes: dict[tuple, set[NodeInvolution]] = {}
    for combo in itertools.product(*(list(factor_choices(t, idx)) for t, idx in groups)):
        perm = [0] * g.total_rank
        for assignment in combo:
            for i, (j, p) in assignment.items():
                for k in range(g.factors[i].rank):
                    perm[g.offsets[i] + k] = g.offsets[j] + p[k]
        inv = NodeInvolution(tuple(perm))
        classes.setdefault(involution_class_key(g, inv), set()).add(inv)
    return [sorted(classes[k], key=lambda x: x.perm) for k in sorted(classes)]
