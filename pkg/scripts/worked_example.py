"""Solve the three-branch example and print every quantity next to its
hand-computed value."""
from fractions import Fraction
from pathlib import Path

from hcirc import (ChainComplex, build_d1, build_d2, exactness_report, load_netlist,
                   millman_vdrop, solve_nodal, voltage_plane_check)

NETLIST = Path(__file__).resolve().parent.parent / "netlists" / "fig1.net"

EXPECTED = {
    "vdrop": Fraction(-184, 12),
    "i_e1": Fraction(148, 36), "i_e2": Fraction(-30, 36), "i_e3": Fraction(-118, 36),
    "mu_m1": Fraction(148, 36), "mu_m2": Fraction(118, 36),
}


def main():
    c = load_netlist(NETLIST)
    print("d1 =", build_d1(c).tolist())
    print("d2 =", build_d2(c).tolist())
    rep = exactness_report(ChainComplex.from_circuit(c))
    print(f"ranks: d1 {rep.rank_d1}, d2 {rep.rank_d2}; homology h0={rep.h0} h1={rep.h1} h2={rep.h2}")
    print("short exact:", rep.exact)

    sol = solve_nodal(c, reference="v2")
    got = {"vdrop": sol.vdrop}
    got.update({f"i_{b}": v for b, v in zip(sol.branch_ids, sol.i)})
    got.update({f"mu_{m}": v for m, v in zip(sol.mesh_ids, sol.mu)})
    width = max(map(len, EXPECTED))
    for key, want in EXPECTED.items():
        mark = "ok" if got[key] == want else "MISMATCH"
        print(f"{key:<{width}}  {str(got[key]):>8}  expected {want}  {mark}")
    print("Millman:", millman_vdrop(c), " voltage plane holds:", voltage_plane_check(c, sol.phi))
    print("power in", sol.power_in, "dissipated", sol.power_dissipated)


if __name__ == "__main__":
    main()
