"""Command-line front end.

    hororeal classify-group A2xA2
    hororeal check --input job.json [--json]
    hororeal fan --input job.json
    hororeal check --batch --input jobs.json
    hororeal picard1 --max-rank 8
    hororeal tables --max-rank 8

check and fan exit with 0 (exists / extendable), 1 (does not) or 2 (bad input).
In batch mode the exit code is the largest over all jobs.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

from .cohomology import center_class_trivial
from .errors import HororealError
from .fans import extendability_report
from .horospherical import ExistenceReport, existence_report
from .jobs import (
    SCHEMA_VERSION,
    Job,
    JobError,
    datum_to_dict,
    factor_offsets,
    group_to_dict,
    job_to_dict,
    load_json,
    parse_group,
    parse_job,
    sigma_to_dict,
)
from .picard1 import classify_triple, datum_of_triple, triples
from .realform import (
    RealStructureSpec,
    all_types,
    catalog,
    check_record,
    enumerate_real_structures,
    gamma_action_matrix,
    node_involution,
    quasi_split_classes,
    quasi_split_form_of,
    tits_representative,
)

EXIT_YES, EXIT_NO, EXIT_INVALID = 0, 1, 2


def _header(command: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command}


def _tits_trivial(s: RealStructureSpec) -> bool:
    if s.group.is_torus:
        return True
    return center_class_trivial(s.group, gamma_action_matrix(s), tits_representative(s))


def _structure_summary(s: RealStructureSpec) -> dict:
    out = {"description": s.describe(), **sigma_to_dict(s)}
    out["quasi_split"] = s.is_quasi_split
    out["split"] = s.is_split
    out["tits_class_trivial"] = _tits_trivial(s)
    if not s.group.is_torus:
        out["node_involution"] = list(node_involution(s).perm)
    return out


def _existence_dict(r: ExistenceReport) -> dict:
    return {
        "datum_stable": r.datum_stable,
        "exists_quasi_split": r.exists_quasi_split,
        "delta": None
        if r.delta is None
        else {
            "is_trivial": r.delta.is_trivial,
            "witness": None if r.delta.witness is None else list(r.delta.witness),
            "detail": r.delta.detail,
        },
        "exists": r.exists,
        "num_classes": r.num_classes,
        "torus_invariants": None if r.torus_invariants is None else list(r.torus_invariants),
    }


# ------------------------------------------------------------------ verbs


def cmd_classify_group(group_obj: Any) -> tuple[dict, int]:
    g, _ = parse_group(group_obj)
    if g.is_torus:
        raise JobError("group", "classify-group needs a semisimple group")
    structures = enumerate_real_structures(g)
    qs = quasi_split_classes(g)
    report = _header("classify-group")
    report.update(
        group=str(g),
        factor_offsets=factor_offsets(g),
        job={"group": group_to_dict(g)},
        counts={"structures": len(structures), "quasi_split_classes": len(qs)},
        structures=[_structure_summary(s) for s in structures],
        quasi_split=[_structure_summary(s) for s in qs],
    )
    return report, EXIT_YES


def _require(job: Job, *fields: str):
    for f in fields:
        if getattr(job, f) is None:
            raise JobError(f, "required for this command")


def _job_header(command: str, job: Job) -> dict:
    report = _header(command)
    report.update(group=str(job.group), factor_offsets=factor_offsets(job.group), job=job_to_dict(job))
    report["structure"] = _structure_summary(job.sigma)
    if not job.group.is_torus:
        report["quasi_split_inner_form"] = sigma_to_dict(quasi_split_form_of(job.sigma))
    return report


def cmd_check(job_obj: Any) -> tuple[dict, int]:
    job = parse_job(job_obj)
    _require(job, "sigma", "datum")
    r = existence_report(job.sigma, job.datum)
    report = _job_header("check", job)
    report.update(_existence_dict(r))
    report["reason"] = r.reason
    return report, EXIT_YES if r.exists else EXIT_NO


def cmd_fan(job_obj: Any) -> tuple[dict, int]:
    job = parse_job(job_obj)
    _require(job, "sigma", "datum", "fan")
    r = extendability_report(job.sigma, job.datum, job.fan)
    report = _job_header("fan", job)
    report.update(_existence_dict(r.existence))
    report.update(fan_stable=r.fan_stable, extendable=r.extendable, is_variety=r.extendable, reason=r.reason)
    return report, EXIT_YES if r.extendable else EXIT_NO


def cmd_picard1(max_rank: int) -> tuple[dict, int]:
    rows = []
    for t in triples(max_rank):
        d = datum_of_triple(t)
        admitted = classify_triple(t)
        names = {r.label for r in admitted}
        rec_labels = [r.label for r in catalog(t.dynkin)]
        rows.append(
            {
                "family": t.family,
                "type": str(t.dynkin),
                "y": f"w{t.y_node + 1}",
                "z": f"w{t.z_node + 1}",
                "datum": datum_to_dict(d),
                "forms": [{"label": r.label, "num_classes": r.num_classes} for r in admitted],
                "excluded": [l for l in rec_labels if l not in names and not _alias_hit(t, l, names)],
            }
        )
    report = _header("picard1")
    report.update(max_rank=max_rank, rows=rows)
    return report, EXIT_YES


def _alias_hit(t, label: str, names: set[str]) -> bool:
    rec = next(r for r in catalog(t.dynkin) if r.label == label)
    return any(a in names for a in rec.aliases)


def cmd_tables(max_rank: int) -> tuple[dict, int]:
    types = []
    all_ok = True
    for t in all_types(max_rank):
        records = []
        for rec in catalog(t):
            chk = check_record(rec)
            all_ok &= chk.ok
            records.append(
                {
                    "label": rec.label,
                    "aliases": list(rec.aliases),
                    "inner_class": list(rec.inner_class.perm),
                    "split": rec.is_split,
                    "quasi_split": rec.is_quasi_split,
                    "compact": rec.is_compact,
                    "tits_q": [str(x) for x in rec.tits_q.q],
                    "tits_class_trivial": rec.tits_trivial,
                    "t": list(rec.t_column),
                    "minuscule_signs": {f"w{k + 1}": s for k, s in rec.minuscule_signs},
                    "checks": {
                        "root_relations": chk.root_relations,
                        "gamma_fixed": chk.gamma_fixed,
                        "signs_vs_class": chk.signs_vs_class,
                        "t_column": chk.t_column,
                    },
                }
            )
        types.append({"type": str(t), "count": len(records), "records": records})
    report = _header("tables")
    report.update(max_rank=max_rank, all_checks_pass=all_ok, types=types)
    return report, EXIT_YES if all_ok else EXIT_NO


# ------------------------------------------------------------------ output


def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines += _text(item, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _flat(v: Any) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    return all(not isinstance(x, dict) for x in v) and all(
        not isinstance(x, list) or all(not isinstance(y, (dict, list)) for y in x) for x in v
    )


def _scalar(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(report: Any, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(_text(report)) + "\n")


# ------------------------------------------------------------------ driver


def _run_guarded(fn: Callable[[Any], tuple[dict, int]], payload: Any, command: str) -> tuple[dict, int]:
    try:
        return fn(payload)
    except HororealError as exc:
        report = _header(command)
        report["error"] = str(exc)
        return report, EXIT_INVALID


def _batch(fn, payload: Any, command: str) -> tuple[dict, int]:
    jobs = payload.get("jobs") if isinstance(payload, dict) else payload
    if not isinstance(jobs, list):
        raise JobError("jobs", "batch input must be a list of jobs or {'jobs': [...]}")
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda j: _run_guarded(fn, j, command), jobs))
    report = _header(command)
    report["results"] = [r for r, _ in results]
    report["exit_codes"] = [c for _, c in results]
    return report, max((c for _, c in results), default=EXIT_YES)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hororeal", description="Equivariant real structures on horospherical varieties.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, batch=False):
        sp.add_argument("--input", help="JSON job file")
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if batch:
            sp.add_argument("--batch", action="store_true", help="input holds a list of jobs")

    cg = sub.add_parser("classify-group", help="list real group structures up to equivalence")
    cg.add_argument("group", nargs="?", help="group such as A1xA1 or D4")
    common(cg)
    common(sub.add_parser("check", help="existence and class count on G/H"), batch=True)
    common(sub.add_parser("fan", help="extension of a real structure to an embedding"), batch=True)
    for name, help_ in (("picard1", "smooth Picard-one horospherical varieties"), ("tables", "embedded real-form tables")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--max-rank", type=int, default=8)
        sp.add_argument("--json", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify-group":
            if args.input:
                payload = load_json(args.input)
                payload = payload.get("group", payload) if isinstance(payload, dict) else payload
            elif args.group:
                payload = args.group
            else:
                raise JobError("group", "give a group string or --input")
            report, code = _run_guarded(cmd_classify_group, payload, args.command)
        elif args.command in ("check", "fan"):
            if not args.input:
                raise JobError("input", "--input is required")
            fn = cmd_check if args.command == "check" else cmd_fan
            payload = load_json(args.input)
            if args.batch:
                report, code = _batch(fn, payload, args.command)
            else:
                report, code = _run_guarded(fn, payload, args.command)
        elif args.command == "picard1":
            if args.max_rank < 2:
                raise JobError("max-rank", "must be at least 2")
            report, code = cmd_picard1(args.max_rank)
        else:
            if args.max_rank < 1:
                raise JobError("max-rank", "must be at least 1")
            report, code = cmd_tables(args.max_rank)
    except (HororealError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if "error" in report and "results" not in report:
        print(f"error: {report['error']}", file=sys.stderr)
    emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
