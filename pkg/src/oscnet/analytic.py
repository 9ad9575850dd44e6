"""Closed-form normal modes of uniform circular and linear chains.

Both bases use 1-based labels k, l = 1..n in their defining formulas.
For the ring the zero mode therefore sits at k = n, the last column.
Complex arithmetic stays inside this module: the circular basis is
unitary, and :func:`oscnet.entangle.pair_covariance` reduces it with the
Hermitian real-part rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True, eq=False)
class AnalyticBasis:
    """Analytic diagonalizer of a uniform chain.

    ``a`` maps modes to sites (q = A Q, rows are sites). It is complex
    unitary for ``kind == "circular"`` and real orthogonal for
    ``"linear"``. ``lambdas`` follow the column order of ``a`` and are not
    sorted. ``mu = 1 / mass``, since R is the identity for equal masses.
    """

    kind: str
    n: int
    a: np.ndarray
    lambdas: np.ndarray
    mu: float = 1.0

    @property
    def a_inv(self) -> np.ndarray:
        return self.a.conj().T

    @property
    def frequencies(self) -> np.ndarray:
        return np.sqrt(self.mu * self.lambdas)


def _check(mass, coupling):
    if not mass > 0:
        raise InputError(f"mass must be positive, got {mass}", "mass")
    if not np.isfinite(coupling):
        raise InputError("coupling must be finite", "coupling")


def circular_modes(n: int, onsite_shift: float = 0.0, *, mass: float = 1.0, coupling: float = 1.0) -> AnalyticBasis:
    """Fourier basis of the ring, A_kl = exp(2 pi i k l / n) / sqrt(n).

    lambda_k = onsite_shift + 4 * coupling * sin^2(pi k / n), k = 1..n.
    This diagonalizes ``make_circular_chain(n, mass, onsite_shift, coupling)``.
    """
    if n < 3:
        raise InputError(f"circular chain needs n >= 3, got {n}", "n")
    _check(mass, coupling)
    k = np.arange(1, n + 1)
    a = np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)
    lam = onsite_shift + 4.0 * coupling * np.sin(np.pi * k / n) ** 2
    # sin(pi) is 1.2e-16, not 0
    lam[-1] = onsite_shift
    return AnalyticBasis("circular", n, a, lam, 1.0 / mass)


def linear_modes(n: int, onsite_shift: float = 0.0, *, mass: float = 1.0, coupling: float = 1.0) -> AnalyticBasis:
    """Sine basis of the fixed-end chain, A_kl = sqrt(2/(n+1)) sin(pi k l / (n+1)).

    lambda_k = onsite_shift + 4 * coupling * sin^2(pi k / (2(n+1))).
    """
    if n < 1:
        raise InputError(f"linear chain needs n >= 1, got {n}", "n")
    _check(mass, coupling)
    k = np.arange(1, n + 1)
    a = np.sqrt(2.0 / (n + 1)) * np.sin(np.pi * np.outer(k, k) / (n + 1))
    lam = onsite_shift + 4.0 * coupling * np.sin(np.pi * k / (2 * (n + 1))) ** 2
    return AnalyticBasis("linear", n, a, lam, 1.0 / mass)
