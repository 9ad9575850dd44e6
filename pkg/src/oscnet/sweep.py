"""Temperature sweeps and the circular/linear boundary comparison."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .diag import simultaneous_diagonalize
from .entangle import log_negativity, pair_covariance, separability_L
from .errors import InputError
from .network import ThermalEnvironment, make_circular_chain, make_linear_chain

SWEEP_FIELDS = ("temperature", "i", "j", "l_value", "log_negativity", "entangled")
COMPARE_FIELDS = ("kind", "i", "j", "separation", "beta", "l_value", "log_negativity", "entangled")


@dataclass(frozen=True)
class SweepRow:
    temperature: float
    i: int
    j: int
    l_value: float
    log_negativity: float
    entangled: bool

    def to_record(self) -> dict:
        return asdict(self)


def temperature_grid(tmin: float, tmax: float, steps: int, log: bool = False) -> np.ndarray:
    """Inclusive grid of ``steps`` temperatures; a single step yields ``[tmin]``."""
    if not 0 < tmin <= tmax:
        raise InputError(f"need 0 < tmin <= tmax, got ({tmin}, {tmax})", "tmin")
    if steps < 1:
        raise InputError(f"steps must be >= 1, got {steps}", "steps")
    if steps == 1:
        return np.array([float(tmin)])
    return np.geomspace(tmin, tmax, steps) if log else np.linspace(tmin, tmax, steps)


def sweep(basis, i: int, j: int, temperatures) -> list[SweepRow]:
    rows = []
    for t in sorted(float(x) for x in temperatures):
        pc = pair_covariance(basis, ThermalEnvironment.from_temperature(t), i, j)
        l_value = separability_L(pc)
        rows.append(SweepRow(t, pc.site_i, pc.site_j, l_value, log_negativity(pc), l_value < 0))
    return rows


def compare_chains(
    kinds,
    n: int,
    separation: int,
    env: ThermalEnvironment,
    mass: float = 1.0,
    onsite: float = 1.0,
    coupling: float = 1.0,
) -> list[dict]:
    """Negativity of every pair at distance ``separation`` for each boundary kind.

    Ring pairs are (i, i + d mod n) for every anchor i; fixed-end chains
    use anchors 1..n-d.
    """
    if not 1 <= separation < n:
        raise InputError(f"separation must lie in 1..{n - 1}, got {separation}", "separation")
    makers = {"circular": make_circular_chain, "linear": make_linear_chain}
    out = []
    for kind in kinds:
        if kind not in makers:
            raise InputError(f"unknown kind {kind!r}", "kind")
        basis = simultaneous_diagonalize(makers[kind](n, mass, onsite, coupling))
        if kind == "circular":
            pairs = [(i, (i - 1 + separation) % n + 1) for i in range(1, n + 1)]
        else:
            pairs = [(i, i + separation) for i in range(1, n - separation + 1)]
        for i, j in pairs:
            pc = pair_covariance(basis, env, i, j)
            l_value = separability_L(pc)
            out.append(
                {
                    "kind": kind,
                    "i": i,
                    "j": j,
                    "separation": separation,
                    "beta": env.beta,
                    "l_value": l_value,
                    "log_negativity": log_negativity(pc),
                    "entangled": l_value < 0,
                }
            )
    return out
