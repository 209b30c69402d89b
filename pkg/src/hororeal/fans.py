"""Colored fans of horospherical embeddings and their Galois stability.

N = Hom(M, Z) has coordinates dual to the basis rows of M. The color of a
simple root alpha outside I maps to rho(alpha) = (<b_k, alpha^vee>)_k.
Polyhedral questions are decided exactly by Fourier-Motzkin elimination
over Fractions, which is plenty for the handful of rays that occur here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidFan, NotAColor, NotStable
from .horospherical import ExistenceReport, HorosphericalDatum, datum_is_stable, existence_report, validate_datum
from .lattice import Matrix, restrict_involution, transpose, vecmat
from .realform import RealStructureSpec, gamma_action_matrix, node_involution

Vector = tuple[int, ...]


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise InvalidFan("zero vector cannot generate a ray")
    return tuple(int(x) // g for x in v)


# ------------------------------------------------------------ Fourier-Motzkin

Ineq = tuple[tuple[Fraction, ...], Fraction]  # a . x <= b


def _normalize(a: Sequence[Fraction], b: Fraction) -> Ineq:
    scale = max((abs(x) for x in a), default=Fraction(0))
    if scale:
        return tuple(x / scale for x in a), b / scale
    return tuple(a), b


def feasible(ineqs: Iterable[Ineq], dim: int) -> bool:
    """Whether {x : a . x <= b for all rows} is nonempty."""
    rows = {_normalize([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs}
    for var in range(dim):
        pos, neg, rest = [], [], set()
        for a, b in rows:
            if a[var] > 0:
                pos.append((a, b))
            elif a[var] < 0:
                neg.append((a, b))
            else:
                rest.add((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = -an[var], ap[var]
                a = tuple(lp * x + ln * y for x, y in zip(ap, an))
                rest.add(_normalize(a, lp * bp + ln * bn))
        rows = rest
    return all(b >= 0 for _, b in rows)


def in_cone(point: Sequence[int], rays: Sequence[Sequence[int]]) -> bool:
    """Farkas: point lies in cone(rays) iff no y has y.r >= 0 on rays and y.point <= -1."""
    dim = len(point)
    if not any(point):
        return True
    if not rays:
        return False
    ineqs = [(tuple(-x for x in r), 0) for r in rays]
    ineqs.append((tuple(point), -1))
    return not feasible(ineqs, dim)


def strictly_convex(rays: Sequence[Sequence[int]]) -> bool:
    """Some linear form is positive on every ray."""
    if not rays:
        return True
    return feasible([(tuple(-x for x in r), -1) for r in rays], len(rays[0]))


def minimal_rays(rays: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """Primitive extremal generators, sorted."""
    prim = sorted(set(primitive(r) for r in rays))
    keep = list(prim)
    for r in prim:
        others = [x for x in keep if x != r]
        if in_cone(r, others):
            keep = others
    return tuple(sorted(keep))


# ------------------------------------------------------------------ cones


@dataclass(frozen=True)
class ColoredCone:
    rays: tuple[Vector, ...]
    colors: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rays", minimal_rays(self.rays) if self.rays else ())
        object.__setattr__(self, "colors", frozenset(int(c) for c in self.colors))

    @property
    def sort_key(self):
        return (self.rays, tuple(sorted(self.colors)))


@dataclass(frozen=True)
class ColoredFan:
    cones: tuple[ColoredCone, ...]

    def __post_init__(self):
        cones = tuple(sorted(set(self.cones), key=lambda c: c.sort_key))
        object.__setattr__(self, "cones", cones or (ColoredCone(()),))

    @classmethod
    def make(cls, cones: Iterable[tuple[Iterable[Sequence[int]], Iterable[int]]]) -> "ColoredFan":
        return cls(tuple(ColoredCone(tuple(tuple(r) for r in rays), frozenset(cols)) for rays, cols in cones))


def color_point(d: HorosphericalDatum, node: int) -> Vector:
    if node in d.I or not 0 <= node < (0 if d.group.is_torus else d.group.total_rank):
        raise NotAColor(f"node {node} is not a color of this datum")
    return tuple(row[node] for row in d.M.basis)


def color_points(d: HorosphericalDatum) -> dict[int, Vector]:
    return {node: color_point(d, node) for node in d.colors}


def validate_fan(d: HorosphericalDatum, f: ColoredFan) -> None:
    dim = d.M.rank
    points = color_points(d)
    for k, cone in enumerate(f.cones):
        if any(len(r) != dim for r in cone.rays):
            raise InvalidFan(f"cone {k}: rays must have {dim} coordinates")
        if not strictly_convex(cone.rays):
            raise InvalidFan(f"cone {k} is not strictly convex")
        for c in sorted(cone.colors):
            if c not in points:
                raise InvalidFan(f"cone {k}: node {c} is not a color")
            p = points[c]
            if not any(p):
                raise InvalidFan(f"cone {k}: color {c} maps to the origin")
            if not in_cone(p, cone.rays):
                raise InvalidFan(f"cone {k}: color {c} lies outside the cone")
    for i in range(len(f.cones)):
        for j in range(i + 1, len(f.cones)):
            _check_common_face(f.cones[i], f.cones[j], points, dim)


def _check_common_face(c1: ColoredCone, c2: ColoredCone, points, dim: int) -> None:
    common = sorted(set(c1.rays) & set(c2.rays))
    only1 = [r for r in c1.rays if r not in common]
    only2 = [r for r in c2.rays if r not in common]
    ineqs = []
    for r in common:
        ineqs += [(r, 0), (tuple(-x for x in r), 0)]
    ineqs += [(tuple(-x for x in r), -1) for r in only1]
    ineqs += [(r, -1) for r in only2]
    if not feasible(ineqs, dim):
        raise InvalidFan(f"cones {list(c1.rays)} and {list(c2.rays)} do not meet in a common face")
    face1 = {c for c in c1.colors if in_cone(points[c], common)}
    face2 = {c for c in c2.colors if in_cone(points[c], common)}
    if face1 != face2:
        raise InvalidFan("cones share a face but disagree on its colors")


def gamma_on_N(sigma: RealStructureSpec, d: HorosphericalDatum) -> Matrix:
    """Galois action on N in dual coordinates (transpose of the action on M)."""
    if not datum_is_stable(sigma, d):
        raise NotStable("the datum is not stable under the Galois action")
    r = restrict_involution(gamma_action_matrix(sigma), d.M)
    return transpose(r, d.M.rank)


def image_cone(cone: ColoredCone, a: Matrix, node_map) -> ColoredCone:
    return ColoredCone(tuple(vecmat(r, a) for r in cone.rays), frozenset(node_map(c) for c in cone.colors))


def fan_is_stable(sigma: RealStructureSpec, d: HorosphericalDatum, f: ColoredFan) -> bool:
    validate_fan(d, f)
    a = gamma_on_N(sigma, d)
    node_map = (lambda c: c) if d.group.is_torus else node_involution(sigma)
    cones = set(f.cones)
    return all(image_cone(c, a, node_map) in cones for c in f.cones)


@dataclass(frozen=True)
class ExtendabilityReport:
    existence: ExistenceReport
    fan_stable: bool | None
    extendable: bool
    reason: str


def extendability_report(sigma: RealStructureSpec, d: HorosphericalDatum, f: ColoredFan) -> ExtendabilityReport:
    """Whether a real structure on G/H extends to the embedding with fan f."""
    validate_datum(d)
    validate_fan(d, f)
    ex = existence_report(sigma, d)
    if not ex.exists:
        return ExtendabilityReport(ex, None, False, f"no equivariant real structure on the open orbit: {ex.reason}")
    stable = fan_is_stable(sigma, d, f)
    if not stable:
        return ExtendabilityReport(ex, False, False, "the colored fan is not Galois-stable")
    return ExtendabilityReport(
        ex,
        True,
        True,
        "structure exists on the open orbit and the colored fan is Galois-stable; the real form is a variety",
    )
