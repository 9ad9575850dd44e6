"""Two-site covariance matrices, PPT test and logarithmic negativity.

Conventions: hbar = 1, phase-space ordering (q_i, p_i, q_j, p_j), and
Gamma = <R R^T + (R R^T)^T> - 2 <R><R>^T, so that the ground state of a
unit-mass unit-frequency oscillator has Gamma = I. Physical states obey
Gamma + i Omega >= 0 with Omega = sigma (+) sigma, sigma = [[0, 1], [-1, 0]],
and the two-site state is separable iff the partially transposed
symplectic eigenvalues are both >= 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from .diag import simultaneous_diagonalize
from .errors import InputError, NumericalError, PhysicalError
from .network import OscillatorNetwork, ThermalEnvironment
from .thermal import mode_moments

log = logging.getLogger(__name__)

RADICAND_TOL = 1e-12
ORACLE_MARGIN = 1e-9
SIGMA = np.array([[0.0, 1.0], [-1.0, 0.0]])
OMEGA = np.kron(np.eye(2), SIGMA)


@dataclass(frozen=True)
class PairCovariance:
    """Independent entries of the 4x4 covariance of sites ``site_i``, ``site_j`` (1-based).

    ``a, e`` are 2<q_i^2>, 2<p_i^2>; ``h, j`` the same for site j;
    ``c = <q_i q_j + q_j q_i>`` and ``g = <p_i p_j + p_j p_i>``. All
    position-momentum cross terms vanish in a thermal state of this
    Hamiltonian.
    """

    site_i: int
    site_j: int
    a: float
    e: float
    c: float
    g: float
    h: float
    j: float

    def matrix(self) -> np.ndarray:
        a, e, c, g, h, j = self.a, self.e, self.c, self.g, self.h, self.j
        return np.array(
            [
                [a, 0.0, c, 0.0],
                [0.0, e, 0.0, g],
                [c, 0.0, h, 0.0],
                [0.0, g, 0.0, j],
            ]
        )


@dataclass(frozen=True)
class EntanglementReport:
    covariance: PairCovariance
    beta: float
    l_value: float
    log_negativity: float
    nu_tilde: tuple[float, float]
    entangled: bool

    def to_record(self) -> dict:
        pc = self.covariance
        return {
            "i": pc.site_i,
            "j": pc.site_j,
            "beta": self.beta,
            "A": pc.a,
            "E": pc.e,
            "C": pc.c,
            "G": pc.g,
            "H": pc.h,
            "J": pc.j,
            "L": self.l_value,
            "E_N": self.log_negativity,
            "nu_min": self.nu_tilde[0],
            "entangled": self.entangled,
        }


def _site(k, n, name):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise InputError(f"site index must be an integer, got {k!r}", name)
    if not 1 <= k <= n:
        raise InputError(f"site {k} out of range 1..{n}", name)
    return int(k) - 1


def _hermitian_sum(x: np.ndarray, r: int, s: int, weights: np.ndarray) -> float:
    # Re sum_l x_rl conj(x_sl) w_l; for real x this is sum_l x_rl x_sl w_l
    if np.iscomplexobj(x):
        return float(np.real(np.sum(x[r] * np.conj(x[s]) * weights)))
    return float(np.sum(x[r] * x[s] * weights))


def pair_covariance(basis, env: ThermalEnvironment, i: int, j: int) -> PairCovariance:
    """Covariance entries for sites ``i`` and ``j`` (1-based, distinct).

    ``basis`` provides ``mu``, ``lambdas``, ``a`` and ``a_inv``. A complex
    (unitary) ``a`` is accepted; each mode sum then pairs one factor with
    the complex conjugate of the other and keeps the real part.
    """
    n = basis.a.shape[0]
    ii, jj = _site(i, n, "i"), _site(j, n, "j")
    if ii == jj:
        raise InputError("sites must be distinct", "j")
    mom = mode_moments(basis, env)
    wq = 2.0 * mom.q2
    wp = 2.0 * mom.p2
    x = basis.a
    y = basis.a_inv.T
    return PairCovariance(
        site_i=ii + 1,
        site_j=jj + 1,
        a=_hermitian_sum(x, ii, ii, wq),
        e=_hermitian_sum(y, ii, ii, wp),
        c=_hermitian_sum(x, ii, jj, wq),
        g=_hermitian_sum(y, ii, jj, wp),
        h=_hermitian_sum(x, jj, jj, wq),
        j=_hermitian_sum(y, jj, jj, wp),
    )


def covariance_matrix(basis, env: ThermalEnvironment) -> np.ndarray:
    """Full 2n x 2n covariance in ordering (q_1, p_1, ..., q_n, p_n)."""
    mom = mode_moments(basis, env)
    x = basis.a
    y = basis.a_inv.T
    qq = np.real((x * (2.0 * mom.q2)) @ x.conj().T)
    pp = np.real((y * (2.0 * mom.p2)) @ y.conj().T)
    n = qq.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[0::2, 0::2] = qq
    out[1::2, 1::2] = pp
    return out


def partial_transpose(pc: PairCovariance) -> PairCovariance:
    """Time-reverse site j: p_j -> -p_j, i.e. G -> -G."""
    return replace(pc, g=-pc.g)


def separability_L(pc: PairCovariance) -> float:
    """L = (C^2 - AH)(G^2 - EJ) + 2CG - HJ - AE + 1.

    The pair is entangled iff L < 0.
    """
    a, e, c, g, h, j = pc.a, pc.e, pc.c, pc.g, pc.h, pc.j
    return (c * c - a * h) * (g * g - e * j) + 2.0 * c * g - h * j - a * e + 1.0


def factored_L(pc: PairCovariance) -> tuple[float, float]:
    """Two real factors of L for a site-swap symmetric pair (A = H, E = J).

    Their product equals :func:`separability_L` only when A = H and E = J.
    """
    a, e, c, g = pc.a, pc.e, pc.c, pc.g
    return 1.0 - (a - c) * (e + g), 1.0 - (a + c) * (e - g)


def log_negativity(pc: PairCovariance) -> float:
    """Logarithmic negativity, clamped to 0 for separable pairs.

    Raises
    ------
    NumericalError
        If the radicand is below -1e-12 or the smallest squared
        symplectic eigenvalue is not positive (unphysical covariance).
    """
    if separability_L(pc) >= 0:
        return 0.0
    a, e, c, g, h, j = pc.a, pc.e, pc.c, pc.g, pc.h, pc.j
    half = 0.5 * (a * e + h * j) - c * g
    rad = half * half - (c * c - a * h) * (g * g - e * j)
    if rad < -RADICAND_TOL:
        raise NumericalError(f"negative radicand {rad:.3e}: covariance is unphysical")
    brace = half - math.sqrt(max(rad, 0.0))
    if not brace > 0:
        raise NumericalError(f"non-positive squared symplectic eigenvalue {brace:.3e}")
    return max(0.0, -0.5 * math.log2(brace))


def symplectic_spectrum(pc: PairCovariance, transposed: bool = False) -> tuple[float, float]:
    """Symplectic eigenvalues (ascending) of Gamma or of its partial transpose.

    Computed as the moduli of the eigenvalues of i Omega Gamma, which come
    in +/- pairs. This path does not touch the closed-form L or E_N
    expressions and serves as their oracle.
    """
    if transposed:
        pc = partial_transpose(pc)
    gamma = pc.matrix()
    lo = np.linalg.eigvalsh(gamma)[0]
    if lo < -RADICAND_TOL * max(1.0, float(np.max(np.abs(gamma)))):
        raise PhysicalError(f"covariance is not positive semidefinite (min eigenvalue {lo:.3e})")
    mods = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ gamma)))
    return float(0.5 * (mods[0] + mods[1])), float(0.5 * (mods[2] + mods[3]))


def physicality_margin(pc: PairCovariance) -> float:
    """Smallest eigenvalue of Gamma + i Omega; >= 0 for a physical state."""
    return float(np.linalg.eigvalsh(pc.matrix() + 1j * OMEGA)[0])


def entanglement_report(basis, env: ThermalEnvironment, i: int, j: int) -> EntanglementReport:
    pc = pair_covariance(basis, env, i, j)
    l_value = separability_L(pc)
    nu = symplectic_spectrum(pc, transposed=True)
    entangled = l_value < 0
    if entangled != (nu[0] < 1.0 - ORACLE_MARGIN) and abs(nu[0] - 1.0) > ORACLE_MARGIN:
        log.warning(
            "criterion/oracle disagreement at sites (%d, %d), beta=%r: L=%r, nu_min=%r",
            pc.site_i, pc.site_j, env.beta, l_value, nu[0],
        )
    return EntanglementReport(
        covariance=pc,
        beta=env.beta,
        l_value=l_value,
        log_negativity=log_negativity(pc),
        nu_tilde=nu,
        entangled=entangled,
    )


T_REL_WIDTH = 1e-9
MAX_DOUBLINGS = 60


class NoCrossingError(NumericalError):
    """L stays negative up to the largest searched temperature."""


def critical_temperature(net, i: int, j: int, t_lo: float, t_hi: float) -> float | None:
    """Temperature at which the pair (i, j) stops being entangled.

    Bisects on T between a bracket with L(t_lo) < 0 <= L(t_hi) until the
    bracket's relative width drops below 1e-9, and returns its midpoint.
    Returns ``None`` when the pair is not entangled at ``t_lo``. When the
    pair is still entangled at ``t_hi`` the upper end is doubled, at most
    60 times.

    ``net`` may be an :class:`OscillatorNetwork` or an already computed
    basis.

    Raises
    ------
    NoCrossingError
        If L is still negative after all doublings.
    """
    if not (0 < t_lo < t_hi) or not math.isfinite(t_hi):
        raise InputError(f"need 0 < t_lo < t_hi, got ({t_lo}, {t_hi})", "bracket")
    basis = simultaneous_diagonalize(net) if isinstance(net, OscillatorNetwork) else net

    def l_at(t):
        return separability_L(pair_covariance(basis, ThermalEnvironment(1.0 / t), i, j))

    if l_at(t_lo) >= 0:
        return None
    lo, hi = t_lo, t_hi
    for _ in range(MAX_DOUBLINGS + 1):
        if l_at(hi) >= 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NoCrossingError(f"no crossing in range: still entangled at T = {lo:.6g}")

    while hi - lo > T_REL_WIDTH * hi:
        mid = 0.5 * (lo + hi)
        if l_at(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
