"""Real forms of simple factors, real structures on products, and tori.

The per-type catalog is generated from the parametric rows in
data/tits_tables.json. Each record's Tits representative is solved from the
root relations plus the tabulated signs on Gamma-fixed minuscule weights,
and the solution is checked to be unique modulo norms at load time.
"""
from __future__ import annotations

import ast
import itertools
import json
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Mapping, Sequence

from .errors import InvalidStructure, NotFixed, UnknownLabel
from .lattice import Matrix, as_matrix, check_involution, involution_invariants, transpose, vecmat
from .rootsys import (
    CenterElement,
    DynkinType,
    GroupSpec,
    NodeInvolution,
    _simple_center,
    canonical_type,
    default_outer_involution,
    minuscule_nodes,
)

# ---------------------------------------------------------------- expressions

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.In: lambda a, b: a in b,
    ast.NotIn: lambda a, b: a not in b,
}


def _pow(base: int, exp: int) -> int:
    if exp < 0:
        if base not in (1, -1):
            raise ValueError("negative exponent on a base other than +-1")
        exp = -exp
    return base**exp


def evaluate(expr: str, env: Mapping[str, int]) -> Any:
    """Evaluate a table expression: integer arithmetic, comparisons, tuples."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in ("True", "False"):
                return node.id == "True"
            return env[node.id]
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                return _pow(ev(node.left), ev(node.right))
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            if isinstance(node.op, ast.Not):
                return not v
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.IfExp):
            return ev(node.body) if ev(node.test) else ev(node.orelse)
        if isinstance(node, ast.Tuple):
            return tuple(ev(e) for e in node.elts)
        raise ValueError(f"unsupported expression element {ast.dump(node)}")

    return ev(ast.parse(expr, mode="eval"))


def _render(template: str, env: Mapping[str, int]) -> str:
    return re.sub(r"\{([^}]*)\}", lambda m: str(evaluate(m.group(1), env)), template)


# ---------------------------------------------------------------- labels

_PAIR_KINDS = ("SU", "Spin", "Sp")


def normalize_label(text: str) -> str:
    """Canonical spelling: no spaces, p >= q, compact forms written with one argument."""
    s = re.sub(r"\s+", "", text).replace("−", "-").replace("ℝ", "R").replace("ℍ", "H")
    m = re.fullmatch(r"(SU|Spin|Sp)\((\d+)(?:,(\d+))?\)", s)
    if m:
        kind, p, q = m.group(1), int(m.group(2)), int(m.group(3) or 0)
        p, q = max(p, q), min(p, q)
        return f"{kind}({p})" if q == 0 else f"{kind}({p},{q})"
    m = re.fullmatch(r"(SL|Sp)\((\d+),([RH])\)", s)
    if m:
        return f"{m.group(1)}({int(m.group(2))},{m.group(3)})"
    m = re.fullmatch(r"Spin\*\((\d+)\)", s)
    if m:
        return f"Spin*({int(m.group(1))})"
    m = re.fullmatch(r"([EFG])(\d)\((-?\d+)\)", s)
    if m:
        return f"{m.group(1)}{m.group(2)}({int(m.group(3))})"
    raise UnknownLabel(f"cannot parse real form label {text!r}")


# ---------------------------------------------------------------- catalog


@dataclass(frozen=True)
class RealFormRecord:
    """A real form of a simple simply connected group."""

    type: DynkinType
    label: str
    inner_class: NodeInvolution
    tits_q: CenterElement
    is_quasi_split: bool
    is_split: bool
    is_compact: bool
    t_column: tuple[int, ...] = ()
    t_nodes: tuple[int, ...] = ()
    minuscule_signs: tuple[tuple[int, int], ...] = ()
    aliases: tuple[str, ...] = field(default=(), compare=False)

    @property
    def tits_trivial(self) -> bool:
        return center_class_is_norm(self.type, self.inner_class, self.tits_q)


def _norms(t: DynkinType, inv: NodeInvolution) -> set[CenterElement]:
    theta = inv.matrix()
    return {a - a.permuted(theta) for a in _simple_center(t)}


def center_class_is_norm(t: DynkinType, inv: NodeInvolution, z: CenterElement) -> bool:
    """Whether z = a + sigma(a) for some central a, where sigma(a) = -theta a."""
    return z in _norms(t, inv)


def _rank_env(pattern: str, n: int) -> dict[str, int] | None:
    if pattern == "n":
        return {"n": n}
    if pattern == "2m":
        return {"n": n, "m": n // 2} if n % 2 == 0 else None
    if pattern == "2m-1":
        return {"n": n, "m": (n + 1) // 2} if n % 2 == 1 else None
    if pattern == "2m+1":
        return {"n": n, "m": (n - 1) // 2} if n % 2 == 1 else None
    raise ValueError(f"unknown rank pattern {pattern!r}")


@lru_cache(maxsize=1)
def _table() -> dict:
    text = resources.files("hororeal").joinpath("data/tits_tables.json").read_text()
    return json.loads(text)


def _solve_tits(t: DynkinType, inv: NodeInvolution, signs: dict[int, int]) -> CenterElement:
    theta = inv.matrix()
    candidates = []
    for z in _simple_center(t):
        if z.permuted(theta) != -z:
            continue
        if all(z.q[k] == (0 if sgn == 1 else Fraction(1, 2)) for k, sgn in signs.items()):
            candidates.append(z)
    if not candidates:
        raise ArithmeticError(f"{t}: no central element matches signs {signs}")
    norms = _norms(t, inv)
    base = min(candidates)
    if any(z - base not in norms for z in candidates):
        raise ArithmeticError(f"{t}: sign data does not pin down a class modulo norms")
    return base


@lru_cache(maxsize=None)
def catalog(t: DynkinType) -> tuple[RealFormRecord, ...]:
    """All real forms of the simply connected group of type t, in table order."""
    t, _ = canonical_type(t)
    table = _table()
    aliases: dict[str, list[str]] = {}
    for a in table["aliases"]:
        if a["type"] == str(t):
            aliases.setdefault(a["label"], []).append(a["alias"])
    outer = NodeInvolution(default_outer_involution(t))
    ident = NodeInvolution.identity(t.rank)
    records = []
    for row in table["rows"]:
        if row["family"] != t.family:
            continue
        env = _rank_env(row["rank"], t.rank)
        if env is None or not evaluate(row["when"], env):
            continue
        if row["inner_class"] == 2 and outer.is_identity:
            raise ArithmeticError(f"{t}: table row needs an outer involution")
        inv = outer if row["inner_class"] == 2 else ident
        if "s" in row:
            lo, hi = (evaluate(x, env) for x in row["s"])
            s_values = range(lo, hi + 1)
        else:
            s_values = [0]
        for s in s_values:
            env_s = dict(env, s=s)
            if "valid" in row and not evaluate(row["valid"], env_s):
                continue
            label = normalize_label(_render(row["label"], env_s))
            fixed = [k for k in minuscule_nodes(t) if inv(k) == k]
            signs = {k: evaluate(row["signs"], dict(env_s, k=k + 1)) for k in fixed}
            tcol = evaluate(row["t"], env_s)
            tcol = tcol if isinstance(tcol, tuple) else (tcol,)
            t_nodes = tuple(k - 1 for k in evaluate(row["t_nodes"], env_s))
            records.append(
                RealFormRecord(
                    type=t,
                    label=label,
                    inner_class=inv,
                    tits_q=_solve_tits(t, inv, signs),
                    is_quasi_split=bool(evaluate(row["quasi_split"], env_s)),
                    is_split=bool(evaluate(row["split"], env_s)),
                    is_compact=bool(evaluate(row["compact"], env_s)),
                    t_column=tcol,
                    t_nodes=t_nodes,
                    minuscule_signs=tuple(sorted(signs.items())),
                    aliases=tuple(aliases.get(label, ())),
                )
            )
    labels = [r.label for r in records]
    if len(set(labels)) != len(labels):
        raise ArithmeticError(f"{t}: duplicate labels {labels}")
    return tuple(records)


def record(t: DynkinType, label: str) -> RealFormRecord:
    """Look up a real form by label or alias."""
    ct, _ = canonical_type(t)
    name = normalize_label(label)
    for r in catalog(ct):
        if r.label == name or name in (normalize_label(a) for a in r.aliases):
            return r
    known = ", ".join(r.label for r in catalog(ct))
    raise UnknownLabel(f"{label!r} is not a real form of {ct} (known: {known})")


def display_label(t: DynkinType, rec: RealFormRecord) -> str:
    """Label in the naming family of the as-written type (C2 forms keep symplectic names)."""
    if t.family == "C" and t.rank == 2 and rec.aliases:
        return next(a for a in rec.aliases if a.startswith("Sp"))
    return rec.label


def quasi_split_record(t: DynkinType, inv: NodeInvolution) -> RealFormRecord:
    hits = [r for r in catalog(t) if r.is_quasi_split and r.inner_class == inv]
    if len(hits) != 1:
        raise ArithmeticError(f"{t}: expected one quasi-split form for {inv.perm}, got {len(hits)}")
    return hits[0]


def inner_classes(t: DynkinType) -> tuple[NodeInvolution, ...]:
    ident = NodeInvolution.identity(t.rank)
    outer = NodeInvolution(default_outer_involution(t))
    return (ident,) if outer.is_identity else (ident, outer)


# ---------------------------------------------------------------- structures


@dataclass(frozen=True)
class RealStructureSpec:
    """A real group structure up to equivalence.

    Semisimple case: an involutive, type-preserving permutation of factors and
    a catalog label on each fixed factor. Torus case: an involution of the
    cocharacter lattice.
    """

    group: GroupSpec
    factor_perm: tuple[int, ...] = ()
    forms: tuple[tuple[int, str], ...] = ()
    torus_matrix: Matrix | None = None

    def __post_init__(self):
        g = self.group
        if g.is_torus:
            if self.torus_matrix is None:
                raise InvalidStructure("a torus structure needs torus_matrix")
            a = check_involution(self.torus_matrix)
            if len(a) != g.torus_rank:
                raise InvalidStructure(f"torus_matrix must be {g.torus_rank}x{g.torus_rank}")
            object.__setattr__(self, "torus_matrix", a)
            return
        if self.torus_matrix is not None:
            raise InvalidStructure("torus_matrix given for a semisimple group")
        k = len(g.factors)
        perm = tuple(self.factor_perm) if self.factor_perm else tuple(range(k))
        if sorted(perm) != list(range(k)) or any(perm[perm[i]] != i for i in range(k)):
            raise InvalidStructure(f"factor_perm {perm} is not an involution of {k} factors")
        if any(g.factors[i] != g.factors[perm[i]] for i in range(k)):
            raise InvalidStructure("factor_perm must pair factors of the same type")
        forms = dict(self.forms)
        fixed = [i for i in range(k) if perm[i] == i]
        if sorted(forms) != fixed:
            raise InvalidStructure(f"labels must be given for exactly the fixed factors {fixed}")
        canon = tuple((i, record(g.factors[i], forms[i]).label) for i in fixed)
        object.__setattr__(self, "factor_perm", perm)
        object.__setattr__(self, "forms", canon)

    @classmethod
    def make(cls, group: GroupSpec, forms: Mapping[int, str] | Sequence[str], factor_perm: Sequence[int] | None = None):
        if not isinstance(forms, Mapping):
            forms = dict(enumerate(forms))
        return cls(group, tuple(factor_perm or ()), tuple(sorted((int(i), l) for i, l in forms.items())))

    @classmethod
    def torus(cls, matrix: Sequence[Sequence[int]]) -> "RealStructureSpec":
        a = as_matrix(matrix)
        return cls(GroupSpec(torus_rank=len(a)), torus_matrix=a)

    def records(self) -> dict[int, RealFormRecord]:
        return {i: record(self.group.factors[i], l) for i, l in self.forms}

    @property
    def swapped_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.factor_perm) if i < j)

    @property
    def is_quasi_split(self) -> bool:
        return self.group.is_torus or all(r.is_quasi_split for r in self.records().values())

    @property
    def is_split(self) -> bool:
        if self.group.is_torus:
            return involution_invariants(self.torus_matrix).n0 == self.group.torus_rank
        return not self.swapped_pairs and all(r.is_split for r in self.records().values())

    def describe(self) -> str:
        if self.group.is_torus:
            n0, n1, n2 = involution_invariants(self.torus_matrix).triple
            return f"torus sigma0^{n0} x sigma1^{n1} x sigma2^{n2}"
        parts = []
        recs = self.records()
        for i, f in enumerate(self.group.factors):
            j = self.factor_perm[i]
            if j == i:
                parts.append(f"{f}[{i}]:{recs[i].label}")
            elif i < j:
                parts.append(f"{f}[{i}]<->{f}[{j}]:swap")
        return " x ".join(parts)


def node_involution(s: RealStructureSpec) -> NodeInvolution:
    """The diagram involution underlying the quasi-split inner form of s."""
    g = s.group
    g.require_semisimple()
    perm = list(range(g.total_rank))
    recs = s.records()
    for i, j in enumerate(s.factor_perm):
        off_i, off_j = g.offsets[i], g.offsets[j]
        for k in range(g.factors[i].rank):
            perm[off_i + k] = off_j + (recs[i].inner_class(k) if i == j else k)
    return NodeInvolution(tuple(perm))


def gamma_action_matrix(s: RealStructureSpec) -> Matrix:
    """Action of the nontrivial element of Gal(C/R) on characters, v -> v @ A.

    For a torus this is the transpose of the cocharacter involution.
    """
    if s.group.is_torus:
        return transpose(s.torus_matrix)
    return node_involution(s).matrix()


def tits_representative(s: RealStructureSpec) -> CenterElement:
    g = s.group
    g.require_semisimple()
    q = [Fraction(0)] * g.total_rank
    for i, rec in s.records().items():
        off = g.offsets[i]
        q[off : off + rec.type.rank] = rec.tits_q.q
    return CenterElement(tuple(q))


def tits_value_on_weight(s: RealStructureSpec, chi: Sequence[int]) -> int:
    """Sign of chi on the Tits representative; chi must be Gamma-fixed."""
    a = gamma_action_matrix(s)
    if tuple(vecmat(chi, a)) != tuple(chi):
        raise NotFixed(f"weight {tuple(chi)} is not fixed by the Galois action")
    v = tits_representative(s).value(chi)
    if v == 0:
        return 1
    if v == Fraction(1, 2):
        return -1
    raise ArithmeticError(f"value {v} of a fixed weight on a fixed central element")


def torus_structure_normal_form(a: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    return involution_invariants(a).triple


# ---------------------------------------------------------------- enumeration


def _type_blocks(g: GroupSpec) -> list[tuple[DynkinType, list[int]]]:
    blocks: dict[DynkinType, list[int]] = {}
    for i, f in enumerate(g.factors):
        blocks.setdefault(f, []).append(i)
    return sorted(blocks.items())


def _assemble(g: GroupSpec, choices) -> RealStructureSpec:
    perm = list(range(len(g.factors)))
    forms = {}
    for idx, pairs, labels in choices:
        for a in range(pairs):
            i, j = idx[2 * a], idx[2 * a + 1]
            perm[i], perm[j] = j, i
        for i, label in zip(idx[2 * pairs :], labels):
            forms[i] = label
    return RealStructureSpec.make(g, forms, perm)


def enumerate_real_structures(g: GroupSpec) -> list[RealStructureSpec]:
    """One representative per equivalence class of real group structures."""
    g.require_semisimple()
    per_type = []
    for t, idx in _type_blocks(g):
        labels = [r.label for r in catalog(t)]
        opts = []
        for pairs in range(len(idx) // 2 + 1):
            for combo in itertools.combinations_with_replacement(labels, len(idx) - 2 * pairs):
                opts.append((idx, pairs, combo))
        per_type.append(opts)
    return [_assemble(g, choice) for choice in itertools.product(*per_type)]


def quasi_split_classes(g: GroupSpec) -> list[RealStructureSpec]:
    """One quasi-split structure per conjugacy class of diagram involutions."""
    g.require_semisimple()
    per_type = []
    for t, idx in _type_blocks(g):
        qs = [quasi_split_record(t, inv).label for inv in inner_classes(t)]
        opts = []
        for pairs in range(len(idx) // 2 + 1):
            for combo in itertools.combinations_with_replacement(qs, len(idx) - 2 * pairs):
                opts.append((idx, pairs, combo))
        per_type.append(opts)
    return [_assemble(g, choice) for choice in itertools.product(*per_type)]


def quasi_split_form_of(s: RealStructureSpec) -> RealStructureSpec:
    """The quasi-split structure in the inner class of s."""
    if s.group.is_torus:
        return s
    forms = {i: quasi_split_record(r.type, r.inner_class).label for i, r in s.records().items()}
    return RealStructureSpec.make(s.group, forms, s.factor_perm)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class RecordCheck:
    type: DynkinType
    label: str
    root_relations: bool
    gamma_fixed: bool
    signs_vs_class: bool
    t_column: bool

    @property
    def ok(self) -> bool:
        return self.root_relations and self.gamma_fixed and self.signs_vs_class and self.t_column


def all_types(max_rank: int) -> list[DynkinType]:
    """Canonical simple types of rank <= max_rank (no C2 or D3 duplicates)."""
    out = []
    for fam in "ABCDEFG":
        for n in range(1, max_rank + 1):
            try:
                t = DynkinType(fam, n)
            except Exception:
                continue
            if canonical_type(t)[0] == t:
                out.append(t)
    return out


def check_record(rec: RealFormRecord) -> RecordCheck:
    """Self-consistency of a table row against the root data."""
    t = rec.type
    g = GroupSpec((t,))
    z = rec.tits_q
    fixed = z.permuted(rec.inner_class.matrix()) == -z
    trivial = rec.tits_trivial
    fixed_minuscule = [k for k in minuscule_nodes(t) if rec.inner_class(k) == k]
    values = {k: (1 if z.q[k] == 0 else -1 if z.q[k] == Fraction(1, 2) else 0) for k in fixed_minuscule}
    signs_ok = trivial == all(v == 1 for v in values.values()) and all(
        values[k] == sgn for k, sgn in rec.minuscule_signs
    )
    read = tuple(1 if z.q[k] == 0 else -1 for k in rec.t_nodes)
    t_ok = (all(v == 1 for v in rec.t_column) == trivial) and (not rec.t_nodes or read == rec.t_column)
    return RecordCheck(t, rec.label, z.satisfies_root_relations(g), fixed, signs_ok, t_ok)
