"""Commutation-preserving simultaneous diagonalization of T and V.

The transform is q = A Q, p = (A^-1)^T P with A = R S, where
R = sqrt(T / mu), mu = det(T)^(1/n), and S holds the orthonormal
eigenvectors of R V R. In the new variables

    H = sum_i (mu P_i^2 + lambda_i Q_i^2) / 2,

so mode i oscillates at omega_i = sqrt(mu * lambda_i).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import InputError, NumericalError, PhysicalError
from .network import OscillatorNetwork

MAX_SWEEPS = 100
OFF_DIAG_RTOL = 1e-14
SIGN_TOL = 1e-12
SYMMETRY_TOL = 1e-12


def _off_norm(m: np.ndarray) -> float:
    off = m - np.diag(np.diag(m))
    return float(np.linalg.norm(off))


@njit(cache=True)
def _cyclic_jacobi(a, v, target, max_sweeps):
    """Row-cyclic Jacobi sweeps on ``a`` in place, accumulating rotations into ``v``.

    Returns the number of sweeps used, or -1 if ``max_sweeps`` was not enough.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q] * a[p, q]
        if np.sqrt(off) <= target:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if np.isinf(theta):
                    t = 0.0
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    if r != p and r != q:
                        arp = a[r, p]
                        arq = a[r, q]
                        a[r, p] = arp - s * (arq + tau * arp)
                        a[p, r] = a[r, p]
                        a[r, q] = arq + s * (arp - tau * arq)
                        a[q, r] = a[r, q]
                for r in range(n):
                    vrp = v[r, p]
                    vrq = v[r, q]
                    v[r, p] = vrp - s * (vrq + tau * vrp)
                    v[r, q] = vrq + s * (vrp - tau * vrq)
    return -1


def _sign_fix(vecs: np.ndarray) -> np.ndarray:
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        big = np.nonzero(np.abs(col) > SIGN_TOL)[0]
        if big.size and col[big[0]] < 0:
            vecs[:, k] = -col
    return vecs


def jacobi_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Symmetric to within 1e-12.

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Ascending; ties keep the order of the diagonal positions they
        converged in.
    eigenvectors : ndarray, shape (n, n)
        Orthogonal, column k belongs to ``eigenvalues[k]``. The first entry
        of each column with magnitude above 1e-12 is positive.

    Raises
    ------
    InputError
        If ``m`` is not square and symmetric.
    NumericalError
        If the off-diagonal Frobenius norm is not below 1e-14 * ||m||_F
        after 100 sweeps.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise InputError("matrix not symmetric")
    a = np.ascontiguousarray(0.5 * (a + a.T))
    v = np.eye(a.shape[0])
    target = OFF_DIAG_RTOL * float(np.linalg.norm(a))
    if _cyclic_jacobi(a, v, target, MAX_SWEEPS) < 0:
        raise NumericalError(
            f"Jacobi did not converge in {MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {_off_norm(a):.3e}, target {target:.3e})"
        )
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], _sign_fix(v[:, order])


@dataclass(frozen=True, eq=False)
class NormalModeBasis:
    """Result of :func:`simultaneous_diagonalize`.

    Attributes
    ----------
    mu : float
        Geometric mean of the inverse masses, det(T)^(1/n).
    r_diag : ndarray
        Diagonal of R = sqrt(T / mu).
    s : ndarray
        Orthogonal eigenvectors of R V R, one column per mode.
    a, a_inv : ndarray
        A = R S and its inverse S^T R^-1. Rows of ``a`` are sites,
        columns are modes.
    lambdas : ndarray
        Ascending eigenvalues of R V R. May contain zero or negative
        entries; thermal consumers reject those.
    """

    mu: float
    r_diag: np.ndarray
    s: np.ndarray
    a: np.ndarray
    a_inv: np.ndarray
    lambdas: np.ndarray

    @property
    def n(self) -> int:
        return self.lambdas.shape[0]


def simultaneous_diagonalize(net: OscillatorNetwork) -> NormalModeBasis:
    t = net.kinetic
    mu = float(np.exp(np.mean(np.log(t))))
    r = np.sqrt(t / mu)
    rvr = r[:, None] * net.potential * r[None, :]
    rvr = 0.5 * (rvr + rvr.T)
    lambdas, s = jacobi_eigh(rvr)
    a = r[:, None] * s
    a_inv = s.T / r[None, :]
    for arr in (r, s, a, a_inv, lambdas):
        arr.setflags(write=False)
    return NormalModeBasis(mu=mu, r_diag=r, s=s, a=a, a_inv=a_inv, lambdas=lambdas)


def mode_frequencies(basis: NormalModeBasis) -> np.ndarray:
    """Phonon frequencies sqrt(mu * lambda_i), ascending.

    Raises
    ------
    PhysicalError
        If any eigenvalue is negative (unstable potential).
    """
    lam = np.asarray(basis.lambdas)
    neg = np.nonzero(lam < 0)[0]
    if neg.size:
        k = int(neg[0])
        raise PhysicalError(f"unstable mode {k + 1}: lambda = {lam[k]:.6g} < 0", mode=k + 1)
    return np.sqrt(basis.mu * lam)


def symplectic_form(n: int) -> np.ndarray:
    """J = [[0, I], [-I, 0]] for phase-space ordering (q_1..q_n, p_1..p_n)."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def phase_space_transform(basis: NormalModeBasis) -> np.ndarray:
    """Block matrix diag(A, (A^-1)^T) mapping (Q, P) to (q, p)."""
    n = basis.n
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = basis.a
    out[n:, n:] = basis.a_inv.T
    return out
