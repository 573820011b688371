"""Resistive DC circuits as chain complexes: boundary operators, homology, and
the homological Kirchhoff laws."""

from .chain import (ChainComplex, Exactness, HomologyReport, IntMatrix, NilpotencyError,
                    build_d1, build_d2, check_nilpotency, exactness_report, homology,
                    kernel_basis, rank)
from .metric import (IsoNorm, Metric, cauchy_schwarz_check, iso_norm, iso_scalar_product,
                     metric_from_circuit)
from .netlist import (Branch, Circuit, Mesh, NetlistError, Node, generate_meshes,
                      load_netlist, parse_netlist, serialize_netlist)
from .solver import (NotACycleError, Solution, TopologyError, branch_currents, kcl_residual,
                     kvl_residual, mesh_lift, millman_vdrop, solve_nodal, voltage_plane_check)

__version__ = "0.1.0"
