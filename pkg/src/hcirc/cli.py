"""hcirc: homological analysis of resistive DC netlists.

Exit codes: 0 success, 1 analysis failure, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from .chain import ChainComplex, check_nilpotency, exactness_report
from .netlist import Circuit, NetlistError, format_number, generate_meshes, load_netlist
from .report import (check_dict, circuit_dict, homology_dict, kcl_sums, scalar,
                     solution_dict)
from .solver import DEFAULT_TOL, solve_nodal

log = logging.getLogger("hcirc")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
COMMANDS = ("check", "homology", "solve", "report")


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    command: str = "report"
    reference: str | None = None
    format: str = "json"
    mode: str = "exact"
    float_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.float_tol > 0:
            raise ValueError("tolerance must be positive")


def _load(config: RunConfig) -> tuple[Circuit, bool]:
    circuit = load_netlist(config.input_path)
    generated = not circuit.meshes
    return generate_meshes(circuit), generated


def _kv_csv(pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in pairs:
        w.writerow([k, json.dumps(v) if isinstance(v, (dict, list, bool)) or v is None else v])
    return buf.getvalue()


def _kv_text(pairs) -> str:
    return "".join(f"{k}: {v}\n" for k, v in pairs)


def _render(doc: dict, fmt: str, text: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return _kv_csv(doc.items())
    return text if text is not None else _kv_text(doc.items())


def cmd_check(config: RunConfig) -> tuple[int, str]:
    circuit, generated = _load(config)
    cc = ChainComplex.from_circuit(circuit)
    doc = check_dict(cc)
    doc["meshes_generated"] = generated
    doc["exact_at"] = homology_dict(exactness_report(cc))["exact_at"] if doc["nilpotent"] else None
    status = EXIT_OK if doc["nilpotent"] else EXIT_FAIL
    return status, _render(doc, config.format)


def cmd_homology(config: RunConfig) -> tuple[int, str]:
    circuit, _ = _load(config)
    cc = ChainComplex.from_circuit(circuit)
    if not check_nilpotency(cc):
        return EXIT_FAIL, _render({"nilpotent": False}, config.format)
    doc = homology_dict(exactness_report(cc))
    return EXIT_OK, _render(doc, config.format)


def _branch_rows(circuit: Circuit, sol) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "tail", "head", "R", "E", "i"])
    for b, ik in zip(circuit.branches, sol.i):
        w.writerow([b.id, b.tail, b.head, format_number(b.resistance),
                    format_number(b.emf), scalar(ik)])
    return buf.getvalue()


def _solution_text(circuit: Circuit, sol) -> str:
    out = [f"mode: {sol.mode}", f"reference: {', '.join(sol.references)}"]
    if sol.vdrop is not None:
        out.append(f"vdrop {circuit.nodes[0].id}-{circuit.nodes[1].id}: {scalar(sol.vdrop)} V")
    out += [f"phi[{n}] = {scalar(v)} V" for n, v in zip(sol.node_ids, sol.phi)]
    out += [f"i[{b}] = {scalar(v)} A" for b, v in zip(sol.branch_ids, sol.i)]
    if sol.mu is None:
        out.append("mu: no mesh lift (currents not a boundary of the given meshes)")
    else:
        out += [f"mu[{m}] = {scalar(v)} A" for m, v in zip(sol.mesh_ids, sol.mu)]
    out.append(f"KCL {'ok' if sol.kcl_ok else 'VIOLATED'}; KVL {'ok' if sol.kvl_ok else 'VIOLATED'}")
    out += [f"  {line}" for line in kcl_sums(circuit, sol)]
    out.append(f"power in {scalar(sol.power_in)} W, dissipated {scalar(sol.power_dissipated)} W")
    return "\n".join(out) + "\n"


def _solve(config: RunConfig, circuit: Circuit):
    sol = solve_nodal(circuit, config.reference, config.mode, config.float_tol)
    if sol.mu is None:
        log.warning("branch currents have no mesh lift onto the declared meshes")
    status = EXIT_OK if sol.kcl_ok and sol.kvl_ok else EXIT_FAIL
    return status, sol


def cmd_solve(config: RunConfig) -> tuple[int, str]:
    circuit, _ = _load(config)
    status, sol = _solve(config, circuit)
    if config.format == "csv":
        return status, _branch_rows(circuit, sol)
    if config.format == "text":
        return status, _solution_text(circuit, sol)
    return status, _render(solution_dict(sol), "json")


def cmd_report(config: RunConfig) -> tuple[int, str]:
    circuit, generated = _load(config)
    cc = ChainComplex.from_circuit(circuit)
    check = check_dict(cc)
    statuses = [EXIT_OK if check["nilpotent"] else EXIT_FAIL]
    hom = homology_dict(exactness_report(cc)) if check["nilpotent"] else None
    solve_status, sol = _solve(config, circuit)
    statuses.append(solve_status)
    status = max(statuses)
    if config.format == "csv":
        return status, _branch_rows(circuit, sol)
    if config.format == "text":
        lines = [f"nodes {cc.dims[0]}, branches {cc.dims[1]}, meshes {cc.dims[2]}"
                 + (" (generated)" if generated else ""),
                 f"d1 = {check['d1']}", f"d2 = {check['d2']}",
                 f"nilpotent: {check['nilpotent']}",
                 f"rank d1 = {check['rank_d1']}, rank d2 = {check['rank_d2']}"]
        if hom is not None:
            lines.append(_kv_text(hom.items()).rstrip("\n"))
        return status, "\n".join(lines) + "\n" + _solution_text(circuit, sol)
    doc = {
        "circuit": circuit_dict(circuit, generated),
        "check": check,
        "homology": hom,
        "solution": solution_dict(sol),
        "status": status,
    }
    return status, _render(doc, "json")


HANDLERS = {"check": cmd_check, "homology": cmd_homology, "solve": cmd_solve, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hcirc", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="netlist file")
    p.add_argument("--reference", help="grounded node (default: first node)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float-mode residual tolerance")
    return p


def run(config: RunConfig) -> tuple[int, str]:
    return HANDLERS[config.command](config)


def main(argv=None) -> int:
    logging.basicConfig(format="hcirc: %(levelname)s: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.file, args.command, args.reference, args.format, args.mode, args.tol)
        status, output = run(config)
    except NetlistError as exc:
        print(f"hcirc: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, KeyError, ValueError) as exc:
        print(f"hcirc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
