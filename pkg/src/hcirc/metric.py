"""Diagonal circuit metric on the branch space: resistances R and conductances G."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .netlist import Circuit


@dataclass(frozen=True)
class Metric:
    r_diag: tuple[Fraction, ...]
    g_diag: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.r_diag) != len(self.g_diag):
            raise ValueError("R and G diagonals differ in length")
        for r, g in zip(self.r_diag, self.g_diag):
            if not r > 0:
                raise ValueError(f"resistance must be positive, got {r}")
            if r * g != 1:
                raise ValueError(f"G entry {g} is not the reciprocal of R entry {r}")

    @classmethod
    def from_resistances(cls, resistances: Sequence) -> "Metric":
        r = tuple(Fraction(x) for x in resistances)
        if any(x <= 0 for x in r):
            raise ValueError("resistances must be strictly positive")
        return cls(r, tuple(1 / x for x in r))

    def __len__(self):
        return len(self.r_diag)

    def diag(self, which: str) -> tuple[Fraction, ...]:
        if which in ("R", "r"):
            return self.r_diag
        if which in ("G", "g"):
            return self.g_diag
        raise ValueError(f"which must be 'R' or 'G', got {which!r}")


class IsoNorm(NamedTuple):
    squared: Fraction
    value: float


def metric_from_circuit(circuit: Circuit) -> Metric:
    return Metric.from_resistances([b.resistance for b in circuit.branches])


def _check_len(metric: Metric, *vectors):
    for v in vectors:
        if len(v) != len(metric):
            raise ValueError(f"vector of length {len(v)} against a metric of dimension {len(metric)}")


def iso_scalar_product(x: Sequence, y: Sequence, metric: Metric, which: str = "R"):
    """Weighted inner product sum_k x_k rho_k y_k with rho = R or G."""
    rho = metric.diag(which)
    _check_len(metric, x, y)
    return sum((a * w * b for a, w, b in zip(x, rho, y)), Fraction(0))


def iso_norm(x: Sequence, metric: Metric, which: str = "R") -> IsoNorm:
    sq = iso_scalar_product(x, x, metric, which)
    return IsoNorm(sq, math.sqrt(sq))


def cauchy_schwarz_check(x: Sequence, y: Sequence, metric: Metric, which: str = "R") -> bool:
    """<x|y>^2 <= <x|x><y|y>, compared without square roots."""
    xy = iso_scalar_product(x, y, metric, which)
    return xy * xy <= iso_scalar_product(x, x, metric, which) * iso_scalar_product(y, y, metric, which)
