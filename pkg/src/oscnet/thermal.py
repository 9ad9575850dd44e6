"""Canonical-ensemble moments of single oscillators and normal modes.

First moments <q>, <p>, <Q_i>, <P_i> vanish identically and are not
stored anywhere; callers needing them use zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, PhysicalError
from .network import ThermalEnvironment

COTH_SATURATE = 20.0
COTH_SERIES = 1e-8
ZERO_MODE_RTOL = 1e-12


def coth_half(beta: float, omega):
    """coth(beta * omega / 2), exact 1 at beta = inf.

    Returns 1.0 exactly once the argument exceeds 20, and 1/x + x/3 below
    1e-8.
    """
    w = np.asarray(omega, dtype=float)
    if math.isinf(beta):
        out = np.ones_like(w)
    else:
        x = 0.5 * beta * w
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.where(
                x > COTH_SATURATE,
                1.0,
                np.where(x < COTH_SERIES, 1.0 / x + x / 3.0, 1.0 / np.tanh(x)),
            )
    return out if out.ndim else float(out)


def single_oscillator_moments(m: float, w: float, env: ThermalEnvironment) -> tuple[float, float]:
    """(<q^2>, <p^2>) of H = p^2/2m + m w^2 q^2/2 in the canonical state."""
    if not m > 0:
        raise InputError(f"mass must be positive, got {m}", "m")
    if not w > 0:
        raise InputError(f"frequency must be positive, got {w}", "w")
    k = coth_half(env.beta, w)
    return k / (2.0 * m * w), 0.5 * m * w * k


@dataclass(frozen=True, eq=False)
class ModeMoments:
    """Per-mode <Q_i^2> and <P_i^2>; ``q2[i] * p2[i] = coth^2(beta w_i / 2) / 4``."""

    q2: np.ndarray
    p2: np.ndarray


def check_modes(lambdas) -> np.ndarray:
    """Raise :class:`PhysicalError` on the first mode with lambda <= 1e-12 * max(lambda)."""
    lam = np.asarray(lambdas, dtype=float)
    scale = float(np.max(np.abs(lam))) if lam.size else 0.0
    bad = np.nonzero(lam <= ZERO_MODE_RTOL * scale)[0]
    if bad.size or scale == 0.0:
        k = int(bad[0]) if bad.size else 0
        kind = "unstable" if lam[k] < 0 else "zero"
        raise PhysicalError(
            f"{kind} mode {k + 1} (lambda = {lam[k]:.6g}): thermal state undefined",
            mode=k + 1,
        )
    return lam


def mode_moments(basis, env: ThermalEnvironment) -> ModeMoments:
    """Second moments of every normal mode.

    ``basis`` needs ``mu`` and ``lambdas``; works for both the numerical
    :class:`~oscnet.diag.NormalModeBasis` and the analytic bases.
    """
    lam = check_modes(basis.lambdas)
    mu = basis.mu
    k = coth_half(env.beta, np.sqrt(mu * lam))
    q2 = np.sqrt(mu) / (2.0 * np.sqrt(lam)) * k
    p2 = np.sqrt(lam) / (2.0 * np.sqrt(mu)) * k
    return ModeMoments(q2=q2, p2=p2)


def mode_position_density(basis, i: int, env: ThermalEnvironment, q):
    """Diagonal position density of normal mode ``i`` (0-based) at ``q``.

    rho(Q) = sqrt(kappa / pi) * exp(-kappa Q^2) with
    kappa = sqrt(lambda / mu) * tanh(beta * omega / 2), so that the
    variance is ``mode_moments(...).q2[i]``.
    """
    lam = check_modes(basis.lambdas)
    if not 0 <= i < lam.size:
        raise InputError(f"mode index {i} out of range 0..{lam.size - 1}", "i")
    omega = math.sqrt(basis.mu * lam[i])
    kappa = math.sqrt(lam[i] / basis.mu) / coth_half(env.beta, omega)
    q = np.asarray(q, dtype=float)
    out = np.sqrt(kappa / np.pi) * np.exp(-kappa * q * q)
    return out if out.ndim else float(out)
