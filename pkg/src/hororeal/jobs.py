"""JSON job documents: parsing into library objects and canonical re-emission.

A job looks like::

    {"group": {"factors": [{"family": "A", "rank": 3}]},
     "sigma": {"factor_perm": [0], "forms": {"0": "SU(4)"}},
     "datum": {"I": [1], "M_basis": [[1, 0, -1]]},
     "fan": {"cones": [{"rays": [[1]], "colors": []}]}}

A torus is {"group": {"torus_rank": r}, "sigma": {"torus_matrix": [[...]]}}.

Nodes are 0-based global indices in the numbering of the factors as
written. C2 and D3 factors are stored as B2 and A3, and their node indices
(in I, in the columns of M_basis and in colors) are translated on input. A
D2 factor becomes two A1 factors. Factor indices in factor_perm and forms
refer to the stored factor list.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .errors import HororealError
from .fans import ColoredCone, ColoredFan
from .horospherical import HorosphericalDatum
from .lattice import Sublattice
from .realform import RealStructureSpec
from .rootsys import GroupSpec, expand_factor

SCHEMA_VERSION = 1


class JobError(HororealError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass(frozen=True)
class Job:
    group: GroupSpec
    sigma: RealStructureSpec | None = None
    datum: HorosphericalDatum | None = None
    fan: ColoredFan | None = None


def _need(obj: Any, key: str, path: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise JobError(path, f"missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise JobError(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return value


def _int_list(value: Any, path: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise JobError(path, "expected a list of integers")
    return list(value)


def _int_matrix(value: Any, path: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise JobError(path, "expected a list of integer rows")
    return [_int_list(row, f"{path}[{i}]") for i, row in enumerate(value)]


def parse_group(obj: Any, path: str = "group") -> tuple[GroupSpec, list[int]]:
    """GroupSpec and the map from as-written global node to stored global node."""
    if isinstance(obj, str):
        try:
            g = GroupSpec.parse(obj)
        except HororealError as exc:
            raise JobError(path, str(exc)) from exc
        obj = group_to_dict(g)
    if not isinstance(obj, dict):
        raise JobError(path, "expected an object or a string such as 'A2xA2'")
    if "torus_rank" in obj and obj.get("factors"):
        raise JobError(path, "give either factors or torus_rank")
    if "torus_rank" in obj:
        r = obj["torus_rank"]
        if not isinstance(r, int) or r < 1:
            raise JobError(f"{path}.torus_rank", "expected a positive integer")
        return GroupSpec(torus_rank=r), list(range(r))
    factors = _need(obj, "factors", path, list)
    if not factors:
        raise JobError(f"{path}.factors", "need at least one factor")
    stored, node_map, offset = [], [], 0
    for i, f in enumerate(factors):
        fpath = f"{path}.factors[{i}]"
        family = _need(f, "family", fpath, str)
        rank = _need(f, "rank", fpath, int)
        try:
            parts = expand_factor(family, rank)
        except HororealError as exc:
            raise JobError(fpath, str(exc)) from exc
        for t, local in parts:
            node_map += [offset + k for k in local]
            stored.append(t)
            offset += t.rank
    return GroupSpec(tuple(stored)), node_map


def parse_sigma(obj: Any, g: GroupSpec, path: str = "sigma") -> RealStructureSpec:
    if not isinstance(obj, dict):
        raise JobError(path, "expected an object")
    try:
        if g.is_torus:
            return RealStructureSpec.torus(_int_matrix(_need(obj, "torus_matrix", path), f"{path}.torus_matrix"))
        perm = obj.get("factor_perm")
        if perm is not None:
            perm = _int_list(perm, f"{path}.factor_perm")
        forms = obj.get("forms", {})
        if isinstance(forms, list):
            forms = {str(i): v for i, v in enumerate(forms)}
        if not isinstance(forms, dict):
            raise JobError(f"{path}.forms", "expected an object mapping factor index to label")
        parsed = {}
        for key, label in forms.items():
            try:
                idx = int(key)
            except ValueError:
                raise JobError(f"{path}.forms", f"factor index {key!r} is not an integer") from None
            if not isinstance(label, str):
                raise JobError(f"{path}.forms.{key}", "expected a label string")
            parsed[idx] = label
        return RealStructureSpec.make(g, parsed, perm)
    except JobError:
        raise
    except HororealError as exc:
        raise JobError(path, str(exc)) from exc


def parse_datum(obj: Any, g: GroupSpec, node_map: list[int], path: str = "datum") -> HorosphericalDatum:
    if not isinstance(obj, dict):
        raise JobError(path, "expected an object")
    n = g.total_rank
    nodes = _int_list(obj.get("I", []), f"{path}.I")
    basis = _int_matrix(obj.get("M_basis", []), f"{path}.M_basis")
    for i in nodes:
        if not 0 <= i < n:
            raise JobError(f"{path}.I", f"node {i} out of range 0..{n - 1}")
    stored_basis = []
    for r, row in enumerate(basis):
        if len(row) != n:
            raise JobError(f"{path}.M_basis[{r}]", f"expected {n} coordinates")
        out = [0] * n
        for k, x in enumerate(row):
            out[node_map[k]] = x
        stored_basis.append(tuple(out))
    try:
        return HorosphericalDatum(g, frozenset(node_map[i] for i in nodes), Sublattice(n, tuple(stored_basis)))
    except HororealError as exc:
        raise JobError(path, str(exc)) from exc


def parse_fan(obj: Any, node_map: list[int], path: str = "fan") -> ColoredFan:
    cones = _need(obj, "cones", path, list)
    out = []
    for i, c in enumerate(cones):
        cpath = f"{path}.cones[{i}]"
        rays = _int_matrix(_need(c, "rays", cpath), f"{cpath}.rays")
        colors = _int_list(c.get("colors", []), f"{cpath}.colors")
        for col in colors:
            if not 0 <= col < len(node_map):
                raise JobError(f"{cpath}.colors", f"node {col} out of range")
        try:
            out.append(ColoredCone(tuple(tuple(r) for r in rays), frozenset(node_map[col] for col in colors)))
        except HororealError as exc:
            raise JobError(cpath, str(exc)) from exc
    return ColoredFan(tuple(out))


def parse_job(obj: Any) -> Job:
    if not isinstance(obj, dict):
        raise JobError("", "a job must be a JSON object")
    g, node_map = parse_group(_need(obj, "group", ""))
    sigma = parse_sigma(obj["sigma"], g) if "sigma" in obj else None
    datum = parse_datum(obj["datum"], g, node_map) if "datum" in obj else None
    fan = parse_fan(obj["fan"], node_map) if "fan" in obj else None
    return Job(g, sigma, datum, fan)


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


# ------------------------------------------------------------- re-emission


def group_to_dict(g: GroupSpec) -> dict:
    if g.is_torus:
        return {"torus_rank": g.torus_rank}
    return {"factors": [{"family": f.family, "rank": f.rank} for f in g.factors]}


def sigma_to_dict(s: RealStructureSpec) -> dict:
    if s.group.is_torus:
        return {"torus_matrix": [list(r) for r in s.torus_matrix]}
    return {"factor_perm": list(s.factor_perm), "forms": {str(i): label for i, label in s.forms}}


def datum_to_dict(d: HorosphericalDatum) -> dict:
    return {"I": sorted(d.I), "M_basis": [list(r) for r in d.M.basis]}


def fan_to_dict(f: ColoredFan) -> dict:
    return {"cones": [{"rays": [list(r) for r in c.rays], "colors": sorted(c.colors)} for c in f.cones]}


def job_to_dict(job: Job) -> dict:
    out: dict = {"group": group_to_dict(job.group)}
    if job.sigma is not None:
        out["sigma"] = sigma_to_dict(job.sigma)
    if job.datum is not None:
        out["datum"] = datum_to_dict(job.datum)
    if job.fan is not None:
        out["fan"] = fan_to_dict(job.fan)
    return out


def factor_offsets(g: GroupSpec) -> list[dict]:
    if g.is_torus:
        return []
    return [
        {"factor": i, "type": str(f), "nodes": list(g.factor_nodes(i))}
        for i, f in enumerate(g.factors)
    ]
