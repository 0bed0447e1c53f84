"""Structural operators of two coupled spins on C^N otimes C^N, N even.

A local dimension N corresponds to one particle of spin j = (N-1)/2; the
local basis is ordered by descending magnetic quantum number m = j, ..., -j.
Composite indices are subsystem-1 major: (a, b) -> a*N + b.  For even N the
time-reversal rotation V is simultaneously unitary and skew-symmetric, which
is the structural fact everything downstream relies on; odd N is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import DimensionError, as_complex_matrix, dagger, kron


def _require_even(n: int, minimum: int = 2) -> int:
    n = int(n)
    if n < minimum or n % 2 != 0:
        raise DimensionError(f"local dimension must be even and >= {minimum}, got {n}")
    return n


def spin_operators(n: int):
    """Spin matrices (Jx, Jy, Jz) for spin j = (n-1)/2 in the descending-m basis."""
    n = int(n)
    if n < 2:
        raise DimensionError(f"need local dimension >= 2, got {n}")
    j = (n - 1) / 2
    ms = j - np.arange(n)
    jz = np.diag(ms).astype(complex)
    jplus = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        m = ms[i]
        jplus[i - 1, i] = np.sqrt(j * (j + 1) - m * (m + 1))
    jminus = dagger(jplus)
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    return jx, jy, jz


def time_reversal_unitary(n: int) -> np.ndarray:
    """The rotation V with <j,m'|V|j,m> = (-1)^(j-m) delta(m',-m).

    For even n the matrix is real, unitary and skew-symmetric (V^T = -V),
    so V V = -I and conjugation by V implements the antiunitary time
    reversal together with complex conjugation.
    """
    n = _require_even(n)
    v = np.zeros((n, n), dtype=complex)
    for i in range(n):
        # basis index i holds m = j - i, and -m sits at index n-1-i
        v[n - 1 - i, i] = (-1) ** i
    return v


def time_reverse(b, sys: "CoupledSpinSystem") -> np.ndarray:
    """Operator time reversal  B -> V B^T V^dag."""
    a = as_complex_matrix(b)
    if a.shape != (sys.n, sys.n):
        raise DimensionError(f"operator must be {sys.n}x{sys.n}, got {a.shape}")
    return sys.v @ a.T @ dagger(sys.v)


def swap_operator(n: int) -> np.ndarray:
    """Permutation F with F (e_a otimes e_b) = e_b otimes e_a."""
    n = _require_even(n)
    f = np.zeros((n * n, n * n), dtype=complex)
    for a in range(n):
        for b in range(n):
            f[b * n + a, a * n + b] = 1.0
    return f


def total_spin_projectors(n: int) -> list[np.ndarray]:
    """Projectors P_J onto total spin J = 0..n-1 of the coupled pair.

    Built as Lagrange polynomials in the total-spin Casimir
    J^2 = sum_a (j_a otimes I + I otimes j_a)^2, whose eigenvalues J(J+1)
    are exact integers; this avoids eigenvector phase and degeneracy
    ambiguities entirely.
    """
    n = _require_even(n, minimum=4)
    eye = np.eye(n)
    ops = spin_operators(n)
    j2 = np.zeros((n * n, n * n), dtype=complex)
    for a in ops:
        total = kron(a, eye) + kron(eye, a)
        j2 += total @ total
    projs = []
    for bigj in range(n):
        p = np.eye(n * n, dtype=complex)
        for k in range(n):
            if k == bigj:
                continue
            p = p @ (j2 - k * (k + 1) * np.eye(n * n)) / (bigj * (bigj + 1) - k * (k + 1))
        projs.append((p + dagger(p)) / 2)
    return projs


def singlet_vector(n: int) -> np.ndarray:
    """Unit vector of the total-spin-0 (maximally entangled) state.

    Angular-momentum coupling gives the J=0 combination
    |psi0> = n^(-1/2) sum_m (-1)^(j-m) |j,m> otimes |j,-m>.
    """
    n = _require_even(n, minimum=4)
    psi = np.zeros(n * n, dtype=complex)
    for i in range(n):
        psi[i * n + (n - 1 - i)] = (-1) ** i
    return psi / np.sqrt(n)


@dataclass(frozen=True, eq=False)
class CoupledSpinSystem:
    """Precomputed fixed structure of C^N otimes C^N for one even N >= 4.

    Fields: local dimension ``n``; spin ``j`` with n = 2j+1; time-reversal
    rotation ``v`` (n x n); swap ``f`` (n^2 x n^2); ``singlet`` unit vector;
    ``projectors`` P_0..P_{n-1} onto the total-spin manifolds.
    """

    n: int
    j: float
    v: np.ndarray
    f: np.ndarray
    singlet: np.ndarray
    projectors: tuple[np.ndarray, ...]

    @property
    def singlet_projector(self) -> np.ndarray:
        return self.projectors[0]


@lru_cache(maxsize=None)
def coupled_system(n: int) -> CoupledSpinSystem:
    """Build (and cache) the coupled-spin structure for even n >= 4."""
    n = _require_even(n, minimum=4)
    v = time_reversal_unitary(n)
    f = swap_operator(n)
    psi = singlet_vector(n)
    projs = total_spin_projectors(n)
    for arr in (v, f, psi, *projs):
        arr.setflags(write=False)
    return CoupledSpinSystem(n=n, j=(n - 1) / 2, v=v, f=f, singlet=psi,
                             projectors=tuple(projs))
