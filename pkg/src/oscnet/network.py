"""Oscillator networks, thermal environments and the JSON input format.

Site indices are 1-based at every external boundary (documents, CLI,
``PairCovariance``) and 0-based in arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .errors import InputError

SYMMETRY_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class OscillatorNetwork:
    """n coupled oscillators with H = p^T T p / 2 + q^T V q / 2, T = diag(1/m).

    Construct through :meth:`from_arrays` (validating) or the chain
    generators; direct construction assumes already-validated arrays.
    """

    masses: np.ndarray
    potential: np.ndarray

    @property
    def n(self) -> int:
        return self.masses.shape[0]

    @property
    def kinetic(self) -> np.ndarray:
        """Diagonal of the kinetic matrix T."""
        return 1.0 / self.masses

    @classmethod
    def from_arrays(cls, masses, potential, path: str = "network") -> OscillatorNetwork:
        try:
            m = np.array(masses, dtype=float)
            v = np.array(potential, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InputError(f"non-numeric entry ({exc})", path) from None

        if m.ndim != 1 or m.size < 1:
            raise InputError("masses must be a non-empty list", f"{path}.masses")
        n = m.size
        for k, mk in enumerate(m):
            if not (math.isfinite(mk) and mk > 0):
                raise InputError(f"mass must be positive and finite, got {mk}", f"{path}.masses[{k}]")
        if v.shape != (n, n):
            raise InputError(f"potential must be {n}x{n}, got shape {v.shape}", f"{path}.potential")
        if not np.all(np.isfinite(v)):
            raise InputError("potential has non-finite entries", f"{path}.potential")
        asym = np.max(np.abs(v - v.T))
        if asym > SYMMETRY_TOL:
            raise InputError(f"potential not symmetric (max |V - V^T| = {asym:.3g})", f"{path}.potential")
        v = 0.5 * (v + v.T)
        return cls(_frozen(m), _frozen(v))

    def __eq__(self, other):
        if not isinstance(other, OscillatorNetwork):
            return NotImplemented
        return np.array_equal(self.masses, other.masses) and np.array_equal(self.potential, other.potential)

    __hash__ = None


@dataclass(frozen=True)
class ThermalEnvironment:
    """Canonical ensemble at inverse temperature ``beta`` (hbar = k_B = 1).

    ``beta = inf`` is the ground state.
    """

    beta: float

    def __post_init__(self):
        b = float(self.beta)
        if math.isnan(b) or b <= 0:
            raise InputError(f"beta must be > 0 or inf, got {self.beta}", "beta")
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_temperature(cls, t: float) -> ThermalEnvironment:
        if not t > 0:
            raise InputError(f"temperature must be > 0, got {t}", "temperature")
        return cls(1.0 / t)

    @property
    def temperature(self) -> float:
        return 0.0 if math.isinf(self.beta) else 1.0 / self.beta


GROUND_STATE = ThermalEnvironment(math.inf)


def _chain(n, mass, onsite, coupling, periodic):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}", "n")
    if not (math.isfinite(mass) and mass > 0):
        raise InputError(f"mass must be positive and finite, got {mass}", "mass")
    if not (math.isfinite(onsite) and math.isfinite(coupling)):
        raise InputError("onsite and coupling must be finite", "onsite")
    n = int(n)
    v = np.zeros((n, n))
    v[np.diag_indices(n)] = onsite + 2.0 * coupling
    idx = np.arange(n - 1)
    v[idx, idx + 1] = -coupling
    v[idx + 1, idx] = -coupling
    if periodic and n > 2:
        v[0, n - 1] = v[n - 1, 0] = -coupling
    return OscillatorNetwork(_frozen(np.full(n, float(mass))), _frozen(v))


def make_circular_chain(n: int, mass: float = 1.0, onsite: float = 0.0, coupling: float = 1.0) -> OscillatorNetwork:
    """Uniform ring: ``V[i,i] = onsite + 2*coupling``, ``-coupling`` between
    neighbours including the wraparound pair (0, n-1).

    For n < 3 there is no distinct wraparound bond and the result equals
    the linear chain.
    """
    return _chain(n, mass, onsite, coupling, periodic=True)


def make_linear_chain(n: int, mass: float = 1.0, onsite: float = 0.0, coupling: float = 1.0) -> OscillatorNetwork:
    """Uniform chain with fixed ends (no wraparound bond)."""
    return _chain(n, mass, onsite, coupling, periodic=False)


_GENERATORS = {"circular": make_circular_chain, "linear": make_linear_chain}


def _number(doc, key, path, default=None):
    if key not in doc:
        if default is not None:
            return default
        raise InputError("missing required field", f"{path}.{key}")
    x = doc[key]
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"expected a number, got {x!r}", f"{path}.{key}")
    return float(x)


def network_from_dict(doc: Mapping[str, Any]) -> OscillatorNetwork:
    """Build a network from a decoded input document.

    Accepted shapes::

        {"network": {"masses": [...], "potential": [[...], ...]}}
        {"network": {"kind": "circular" | "linear", "n": 8,
                     "mass": 1.0, "onsite": 1.0, "coupling": 1.0}}
    """
    if not isinstance(doc, Mapping) or "network" not in doc:
        raise InputError("document must be an object with a 'network' key", "$")
    net = doc["network"]
    path = "network"
    if not isinstance(net, Mapping):
        raise InputError("must be an object", path)

    if "kind" in net:
        kind = net["kind"]
        if kind not in _GENERATORS:
            raise InputError(f"unknown kind {kind!r} (expected 'circular' or 'linear')", f"{path}.kind")
        n = net.get("n")
        if isinstance(n, bool) or not isinstance(n, int):
            raise InputError(f"expected an integer, got {n!r}", f"{path}.n")
        if n < 1:
            raise InputError(f"must be >= 1, got {n}", f"{path}.n")
        mass = _number(net, "mass", path, default=1.0)
        onsite = _number(net, "onsite", path, default=0.0)
        coupling = _number(net, "coupling", path, default=1.0)
        if mass <= 0:
            raise InputError(f"mass must be positive, got {mass}", f"{path}.mass")
        return _GENERATORS[kind](n, mass, onsite, coupling)

    for key in ("masses", "potential"):
        if key not in net:
            raise InputError("missing required field", f"{path}.{key}")
    masses, potential = net["masses"], net["potential"]
    if not isinstance(masses, list):
        raise InputError("must be a list of numbers", f"{path}.masses")
    if not isinstance(potential, list) or not all(isinstance(row, list) for row in potential):
        raise InputError("must be a list of lists", f"{path}.potential")
    return OscillatorNetwork.from_arrays(masses, potential, path)


def parse_network(text: str) -> OscillatorNetwork:
    """Parse a JSON input document into a validated network."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON ({exc})", "$") from None
    return network_from_dict(doc)
