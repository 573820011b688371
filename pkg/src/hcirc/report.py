"""Plain-data views of analysis results, for JSON/CSV/text output."""
from __future__ import annotations

import math
from fractions import Fraction

from .chain import ChainComplex, HomologyReport, check_nilpotency, rank
from .netlist import Circuit, format_number
from .solver import Solution


def scalar(x):
    """Exact values become ``"p/q"`` strings; floats stay JSON numbers."""
    if x is None:
        return None
    if isinstance(x, (Fraction, int)):
        return format_number(Fraction(x))
    return float(x)


def parse_scalar(x):
    """Inverse of :func:`scalar`."""
    if x is None:
        return None
    if isinstance(x, str):
        return Fraction(x)
    return x


def circuit_dict(circuit: Circuit, meshes_generated: bool = False) -> dict:
    return {
        "nodes": circuit.node_ids,
        "branches": [
            {"id": b.id, "tail": b.tail, "head": b.head,
             "R": scalar(b.resistance), "E": scalar(b.emf)}
            for b in circuit.branches
        ],
        "meshes": {m.id: [("+" if s > 0 else "-") + bid for bid, s in m.entries]
                   for m in circuit.meshes},
        "meshes_generated": meshes_generated,
    }


def check_dict(cc: ChainComplex) -> dict:
    nilpotent = check_nilpotency(cc)
    return {
        "nilpotent": nilpotent,
        "dims": {"C0": cc.dims[0], "C1": cc.dims[1], "C2": cc.dims[2]},
        "d1": cc.d1.tolist(),
        "d2": cc.d2.tolist(),
        "d1_d2": (cc.d1 @ cc.d2).tolist(),
        "rank_d1": rank(cc.d1),
        "rank_d2": rank(cc.d2),
    }


def homology_dict(report: HomologyReport) -> dict:
    return report.to_dict()


def solution_dict(sol: Solution) -> dict:
    mu = sol.mu if sol.mu is not None else (None,) * len(sol.mesh_ids)
    return {
        "mode": sol.mode,
        "references": list(sol.references),
        "phi": {n: scalar(v) for n, v in zip(sol.node_ids, sol.phi)},
        "vdrop": scalar(sol.vdrop),
        "i": {b: scalar(v) for b, v in zip(sol.branch_ids, sol.i)},
        "mu": {m: scalar(v) for m, v in zip(sol.mesh_ids, mu)},
        "mu_unique": sol.mu_unique,
        "kcl_ok": sol.kcl_ok,
        "kvl_ok": sol.kvl_ok,
        "kcl_residual": [scalar(v) for v in sol.kcl_residual],
        "kvl_residual": [scalar(v) for v in sol.kvl_residual],
        "power_in": scalar(sol.power_in),
        "power_dissipated": scalar(sol.power_dissipated),
    }


def kcl_sums(circuit: Circuit, sol: Solution) -> list[str]:
    """Per-node KCL sums over a common denominator, e.g. ``(74 - 15 - 59)/18 = 0``.

    Exact mode only; lets a reader compare numerators with a hand calculation.
    """
    if sol.mode != "exact":
        return []
    den = math.lcm(*(Fraction(x).denominator for x in sol.i)) if sol.i else 1
    lines = []
    for node in circuit.nodes:
        terms = []
        for b, ik in zip(circuit.branches, sol.i):
            if node.id == b.head:
                terms.append(ik * den)
            elif node.id == b.tail:
                terms.append(-ik * den)
        if not terms:
            continue
        text = " ".join(
            (f"- {-t}" if t < 0 else f"+ {t}") if k else str(t) for k, t in enumerate(terms)
        )
        lines.append(f"{node.id}: ({text})/{den} = {format_number(sum(terms) / den)}")
    return lines
