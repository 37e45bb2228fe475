"""Batch runs of the library over graph corpora, producing JSON-lines or table reports.

The CLI only parses arguments and prints what :func:`format_report` returns,
so library and command line agree byte for byte.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

from .corpus import CorpusSpec, enumerate_genus0_graphs
from .graph import EnhancedLevelGraph, validate
from .ideals import general_genus_j, gluing_check, j_ideal, local_maxima_ideal, nguyen_ideal
from .logmonoid import basic_monoid, check_psi_g_commutes, relative_inertia
from .polyhedral import fans_equal, hyperplane_subdivision, is_locally_principal, newton_fan
from .slopes import level_structure_from_slopes, tree_slopes
from .torus import count_prong_matching_classes, quotient_map_exponents, twist_groups

COMMANDS = ("validate", "slopes", "twist", "prongs", "monoid", "ideal", "fan", "check-gluing", "fan-check")
IDEAL_SCHEMES = ("j", "nguyen", "general-j", "local-maxima")
FAN_METHODS = ("newton", "hyperplane")
FAN_LEMMAS = ("equality", "principal")


def _validate(graph, **_):
    rep = validate(graph)
    return rep.valid, rep.to_dict()


def _slopes(graph, **_):
    s = tree_slopes(graph)
    return True, {"slopes": s.to_dict(), "level_graph": level_structure_from_slopes(graph, s).to_dict()}


def _twist(graph, **_):
    data = twist_groups(graph).to_dict()
    data["quotient_map"] = quotient_map_exponents(graph).to_dict()
    return True, data


def _prongs(graph, **_):
    return True, {
        "pm_classes": count_prong_matching_classes(graph),
        "K": list(twist_groups(graph).quotient.invariant_factors),
    }


def _monoid(graph, **_):
    pres = basic_monoid(graph)
    commutes, witness = check_psi_g_commutes(graph, pres)
    out = pres.to_dict()
    out["relative_inertia"] = list(relative_inertia(graph).invariant_factors)
    out["psi_g_commutes"] = commutes
    if witness is not None:
        out["psi_g_witness"] = witness
    return commutes, out


_SCHEMES: dict[str, Callable] = {
    "j": j_ideal,
    "nguyen": nguyen_ideal,
    "general-j": general_genus_j,
    "local-maxima": local_maxima_ideal,
}


def _ideal(graph, scheme="j", **_):
    ideal = _SCHEMES[scheme](graph)
    return True, {"scheme": scheme, "ideal": ideal.to_dict(), "display": repr(ideal)}


def _fan(graph, method="newton", **_):
    fan = newton_fan(j_ideal(graph)) if method == "newton" else hyperplane_subdivision(graph)
    return True, {"method": method, "fan": fan.to_dict()}


def _check_gluing(graph, **_):
    per_edge = {}
    for eid in graph.edge_ids:
        j_ok, n_ok = gluing_check(graph, eid)
        per_edge[eid] = {"j_up_to_principal": j_ok, "nguyen_exact": n_ok}
    ok = all(r["j_up_to_principal"] and r["nguyen_exact"] for r in per_edge.values())
    return ok, {"edges": per_edge}


def _fan_check(graph, lemma="equality", **_):
    fan = newton_fan(j_ideal(graph))
    if lemma == "equality":
        ok = fans_equal(fan, hyperplane_subdivision(graph))
        return ok, {"lemma": lemma, "pass": ok, "cones": len(fan.cones)}
    ok, chosen = is_locally_principal(nguyen_ideal(graph), fan)
    return ok, {"lemma": lemma, "pass": ok, "generators": [None if m is None else list(m) for m in chosen]}


_HANDLERS: dict[str, Callable] = {
    "validate": _validate,
    "slopes": _slopes,
    "twist": _twist,
    "prongs": _prongs,
    "monoid": _monoid,
    "ideal": _ideal,
    "fan": _fan,
    "check-gluing": _check_gluing,
    "fan-check": _fan_check,
}


def command_result(command: str, graph: EnhancedLevelGraph, index: int = 0, **options) -> dict:
    """Run one command on one graph; never raises for graph-level problems."""
    if command not in _HANDLERS:
        raise ValueError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    record: dict = {"index": index, "command": command}
    if command != "validate":
        rep = validate(graph)
        if not rep.valid:
            record.update(ok=False, error="graph is not admissible", result=rep.to_dict(), graph=graph.to_dict())
            return record
    try:
        ok, result = _HANDLERS[command](graph, **options)
    except (ValueError, KeyError) as exc:
        record.update(ok=False, error=str(exc), graph=graph.to_dict())
        return record
    record.update(ok=ok, result=result)
    if not ok:
        record["graph"] = graph.to_dict()
    return record


@dataclass
class SuiteReport:
    command: str
    records: list[dict]

    @property
    def exit_code(self) -> int:
        return 0 if all(r["ok"] for r in self.records) else 1

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r["ok"])


def _run_one(command, options, item):
    index, graph = item
    return command_result(command, graph, index, **options)


def run_suite(command: str, corpus: Sequence[EnhancedLevelGraph], jobs: int = 1, **options) -> SuiteReport:
    """Run ``command`` on every graph; records come back in input order whatever ``jobs`` is."""
    if command not in _HANDLERS:
        raise ValueError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    items = list(enumerate(corpus))
    work = partial(_run_one, command, options)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(work, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        records = [work(it) for it in items]
    return SuiteReport(command, records)


def _summary(record: dict) -> str:
    if "error" in record:
        return record["error"]
    res = record["result"]
    cmd = record["command"]
    if cmd == "validate":
        return "valid" if res["valid"] else ", ".join(sorted({v["kind"] for v in res["violations"]}))
    if cmd == "prongs":
        return f"pm_classes={res['pm_classes']} K={res['K']}"
    if cmd == "twist":
        return f"a={list(res['a'].values())} K={res['invariant_factors']}"
    if cmd == "monoid":
        return f"inertia={res['relative_inertia']} psi_g={res['psi_g_commutes']}"
    if cmd == "ideal":
        return res["display"]
    if cmd == "fan":
        return f"{len(res['fan']['cones'])} cones"
    if cmd == "slopes":
        return " ".join(f"{e}:{d['slope']}" for e, d in res["slopes"]["edges"].items()) or "-"
    if cmd == "check-gluing":
        return f"{len(res['edges'])} edges"
    if cmd == "fan-check":
        return f"{res['lemma']} pass={res['pass']}"
    return ""


def format_report(report: SuiteReport, output: str = "json") -> str:
    if output == "json":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in report.records)
    if output != "table":
        raise ValueError(f"unknown output format {output!r}")
    lines = [f"{'index':>5}  {'ok':<4}  summary"]
    for r in report.records:
        lines.append(f"{r['index']:>5}  {'yes' if r['ok'] else 'NO':<4}  {_summary(r)}")
    lines.append(f"{report.passed}/{len(report.records)} passed")
    return "\n".join(lines) + "\n"


def enumerate_lines(spec: CorpusSpec) -> str:
    """JSON-lines stream of the enumerated corpus, one graph per line."""
    return "".join(g.to_json() + "\n" for g in enumerate_genus0_graphs(spec))
