"""Time exact and float solves on random circuits and report the worst
float/exact discrepancy and the largest KCL/KVL residual."""
import argparse
import random
import time
from dataclasses import dataclass

from hcirc import generate_meshes, solve_nodal
from hcirc.random_circuits import connected_circuit


@dataclass
class SweepConfig:
    n_circuits: int = 200
    max_nodes: int = 8
    max_branches: int = 16
    seed: int = 0


def run(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    circuits = [generate_meshes(connected_circuit(rng, cfg.max_nodes, cfg.max_branches))
                for _ in range(cfg.n_circuits)]
    t0 = time.perf_counter()
    exact = [solve_nodal(c) for c in circuits]
    t1 = time.perf_counter()
    approx = [solve_nodal(c, mode="float") for c in circuits]
    t2 = time.perf_counter()
    worst = max(abs(float(e) - a) for se, sa in zip(exact, approx) for e, a in zip(se.i, sa.i))
    resid = max(abs(r) for s in approx for r in s.kcl_residual + s.kvl_residual)
    return {
        "circuits": cfg.n_circuits,
        "exact_seconds": round(t1 - t0, 3),
        "float_seconds": round(t2 - t1, 3),
        "exact_all_residuals_zero": all(s.kcl_ok and s.kvl_ok for s in exact),
        "max_float_exact_gap": worst,
        "max_float_residual": resid,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SweepConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    args = p.parse_args()
    for k, v in run(SweepConfig(**vars(args))).items():
        print(f"{k}: {v}")


if __name__ == "__main__":
    main()
