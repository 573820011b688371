"""Homological Kirchhoff laws: nodal solve, branch currents, residuals, mesh lift.

KCL says the branch currents form a cycle, ``d1 @ i == 0``. KVL says
``R i = eps - delta0 phi``. Substituting ``i = G (eps - delta0 phi)`` into KCL
gives the weighted Laplacian system ``d1 G d1^T phi = d1 G eps``.

Two arithmetic modes are supported: ``"exact"`` (Fractions, residuals must be
exactly zero) and ``"float"`` (residuals must be below ``tol``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .chain import ChainComplex, rank
from .metric import iso_scalar_product, metric_from_circuit
from .netlist import Circuit

DEFAULT_TOL = 1e-9


class TopologyError(ValueError):
    """The circuit does not have the shape an operation requires."""


class NotACycleError(ValueError):
    """Mesh lift requested for currents that violate KCL."""


def _check_mode(mode: str, tol: float) -> float:
    if mode == "exact":
        return 0
    if mode == "float":
        if not tol > 0:
            raise ValueError("float mode needs a positive tolerance")
        return tol
    raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")


def _num(x, mode):
    return Fraction(x) if mode == "exact" else float(x)


def _is_zero_vec(v, tol) -> bool:
    return all(x == 0 for x in v) if tol == 0 else all(abs(x) <= tol for x in v)


@dataclass(frozen=True)
class Solution:
    node_ids: tuple[str, ...]
    branch_ids: tuple[str, ...]
    mesh_ids: tuple[str, ...]
    references: tuple[str, ...]
    phi: tuple
    vdrop: object          # phi[0] - phi[1] for two-node circuits, else None
    i: tuple
    mu: tuple | None       # None when the currents are not a mesh boundary
    mu_unique: bool
    kcl_residual: tuple
    kvl_residual: tuple
    power_in: object
    power_dissipated: object
    mode: str = "exact"
    tol: float = DEFAULT_TOL

    @property
    def kcl_ok(self) -> bool:
        return _is_zero_vec(self.kcl_residual, 0 if self.mode == "exact" else self.tol)

    @property
    def kvl_ok(self) -> bool:
        return _is_zero_vec(self.kvl_residual, 0 if self.mode == "exact" else self.tol)

    def current(self, branch_id: str):
        return self.i[self.branch_ids.index(branch_id)]

    def potential(self, node_id: str):
        return self.phi[self.node_ids.index(node_id)]


def _references(circuit: Circuit, reference: str | None) -> list[int]:
    """One grounded node per connected component.

    The requested reference grounds its own component; every other component
    is grounded at its lowest-index node.
    """
    comps = circuit.components()
    if reference is None:
        return [c[0] for c in comps]
    if reference not in circuit.node_ids:
        raise KeyError(f"unknown reference node {reference!r}")
    ref = circuit.node_index(reference)
    return [ref if ref in c else c[0] for c in comps]


def weighted_laplacian(circuit: Circuit, mode: str = "exact") -> list[list]:
    """``d1 G d1^T`` assembled branch by branch."""
    nv = len(circuit.nodes)
    lap = [[_num(0, mode)] * nv for _ in range(nv)]
    for b in circuit.branches:
        g = _num(1 / b.resistance, mode)
        t, h = circuit.node_index(b.tail), circuit.node_index(b.head)
        lap[t][t] += g
        lap[h][h] += g
        lap[t][h] -= g
        lap[h][t] -= g
    return lap


def source_injection(circuit: Circuit, mode: str = "exact") -> list:
    """``d1 G eps``: the net source-driven current entering each node."""
    rhs = [_num(0, mode)] * len(circuit.nodes)
    for b in circuit.branches:
        ge = _num(b.emf / b.resistance, mode)
        rhs[circuit.node_index(b.head)] += ge
        rhs[circuit.node_index(b.tail)] -= ge
    return rhs


def node_potentials(circuit: Circuit, reference: str | None = None, mode: str = "exact",
                    tol: float = DEFAULT_TOL) -> tuple[list, list[int]]:
    tol = _check_mode(mode, tol)
    refs = _references(circuit, reference)
    lap = weighted_laplacian(circuit, mode)
    rhs = source_injection(circuit, mode)
    keep = [k for k in range(len(circuit.nodes)) if k not in refs]
    reduced = [[lap[r][c] for c in keep] for r in keep]
    try:
        sol = linalg.solve_square(reduced, [rhs[r] for r in keep], tol)
    except ArithmeticError as exc:
        raise RuntimeError("reduced Laplacian is singular; gauge fixing failed") from exc
    phi = [_num(0, mode)] * len(circuit.nodes)
    for k, v in zip(keep, sol):
        phi[k] = v
    return phi, refs


def branch_currents(circuit: Circuit, phi: Sequence, mode: str = "exact") -> list:
    """i_k = G_k (eps_k + phi[tail] - phi[head])."""
    if len(phi) != len(circuit.nodes):
        raise ValueError(f"phi has length {len(phi)}, circuit has {len(circuit.nodes)} nodes")
    out = []
    for b in circuit.branches:
        drive = (_num(b.emf, mode) + phi[circuit.node_index(b.tail)]
                 - phi[circuit.node_index(b.head)])
        out.append(drive / _num(b.resistance, mode))
    return out


def kcl_residual(cc: ChainComplex, i: Sequence) -> list:
    if len(i) != cc.d1.cols:
        raise ValueError(f"current vector has length {len(i)}, expected {cc.d1.cols}")
    return cc.d1 @ i


def kvl_residual(circuit: Circuit, phi: Sequence, i: Sequence, mode: str = "exact") -> list:
    """R i + delta0 phi - eps, branch by branch."""
    if len(phi) != len(circuit.nodes):
        raise ValueError(f"phi has length {len(phi)}, expected {len(circuit.nodes)}")
    if len(i) != len(circuit.branches):
        raise ValueError(f"current vector has length {len(i)}, expected {len(circuit.branches)}")
    return [_num(b.resistance, mode) * ik
            + phi[circuit.node_index(b.head)] - phi[circuit.node_index(b.tail)]
            - _num(b.emf, mode)
            for b, ik in zip(circuit.branches, i)]


def mesh_lift(cc: ChainComplex, i: Sequence, tol: float = 0) -> list | None:
    """Mesh currents mu with ``d2 @ mu == i``, or None if i is not a boundary.

    When the meshes are dependent the solution with all free mesh currents
    set to zero is returned.
    """
    if not _is_zero_vec(kcl_residual(cc, i), tol):
        raise NotACycleError("branch currents violate KCL; no mesh lift")
    try:
        return linalg.solve_particular(cc.d2.entries, list(i), tol, cols=cc.d2.cols)
    except linalg.InconsistentSystem:
        return None


def solve_nodal(circuit: Circuit, reference: str | None = None, mode: str = "exact",
                tol: float = DEFAULT_TOL) -> Solution:
    ztol = _check_mode(mode, tol)
    phi, refs = node_potentials(circuit, reference, mode, tol)
    i = branch_currents(circuit, phi, mode)
    cc = ChainComplex.from_circuit(circuit)
    kcl = kcl_residual(cc, i)
    kvl = kvl_residual(circuit, phi, i, mode)
    mu = mesh_lift(cc, i, ztol) if _is_zero_vec(kcl, ztol) else None
    power_in = sum((_num(b.emf, mode) * ik for b, ik in zip(circuit.branches, i)), _num(0, mode))
    power_out = sum((_num(b.resistance, mode) * ik * ik for b, ik in zip(circuit.branches, i)),
                    _num(0, mode))
    return Solution(
        node_ids=tuple(circuit.node_ids),
        branch_ids=tuple(circuit.branch_ids),
        mesh_ids=tuple(circuit.mesh_ids),
        references=tuple(circuit.nodes[r].id for r in refs),
        phi=tuple(phi),
        vdrop=phi[0] - phi[1] if len(phi) == 2 else None,
        i=tuple(i),
        mu=None if mu is None else tuple(mu),
        mu_unique=mu is not None and rank(cc.d2) == cc.d2.cols,
        kcl_residual=tuple(kcl),
        kvl_residual=tuple(kvl),
        power_in=power_in,
        power_dissipated=power_out,
        mode=mode,
        tol=tol,
    )


def _parallel_emfs(circuit: Circuit) -> list[Fraction]:
    """Source voltages re-expressed as rising from the first node to the second.

    Reversing a branch negates its source, so every branch can be read as
    running from node 0 to node 1.
    """
    if len(circuit.nodes) != 2:
        raise TopologyError(f"need exactly two nodes, circuit has {len(circuit.nodes)}")
    first = circuit.nodes[0].id
    return [b.emf if b.tail == first else -b.emf for b in circuit.branches]


def millman_vdrop(circuit: Circuit) -> Fraction:
    """phi_1 - phi_2 = -<G|eps> / tr G for branches in parallel between two nodes."""
    emfs = _parallel_emfs(circuit)
    metric = metric_from_circuit(circuit)
    return -iso_scalar_product([1] * len(emfs), emfs, metric, "G") / sum(metric.g_diag)


def voltage_plane_check(circuit: Circuit, phi: Sequence, tol: float = 0) -> bool:
    """sum G_k eps_k == -(sum G_k)(phi_1 - phi_2)."""
    if len(phi) != 2:
        raise TopologyError("voltage plane applies to two-node circuits only")
    emfs = _parallel_emfs(circuit)
    metric = metric_from_circuit(circuit)
    lhs = sum(g * e for g, e in zip(metric.g_diag, emfs))
    rhs = -sum(metric.g_diag) * (phi[0] - phi[1])
    return lhs == rhs if tol == 0 else abs(lhs - rhs) <= tol
