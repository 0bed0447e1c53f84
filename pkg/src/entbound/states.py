"""Bipartite states: constructors, Schmidt analysis, samplers, file I/O.

Density matrices and pure states are stored with the subsystem-1-major
composite index (a, b) -> a*N + b and the descending-m local basis, matching
the JSON state-file format exactly:

    {"n_local": N, "matrix": [[[re, im], ...], ...]}   (N^2 x N^2 rows)
    {"n_local": N, "vector": [[re, im], ...]}          (length N^2)
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError, as_complex_matrix, dagger
from .spinspace import CoupledSpinSystem

_HERM_TOL = 1e-10
_TRACE_TOL = 1e-10
_EIG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated bipartite density matrix on C^N otimes C^N."""

    n_local: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        n = int(self.n_local)
        if m.shape != (n * n, n * n):
            raise DimensionError(f"density matrix must be {n * n}x{n * n}, got {m.shape}")
        if float(np.abs(m - dagger(m)).max()) > _HERM_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        if abs(float(np.trace(m).real) - 1.0) > _TRACE_TOL or abs(float(np.trace(m).imag)) > _TRACE_TOL:
            raise ValueError("density matrix trace differs from 1 beyond 1e-10")
        if float(np.linalg.eigvalsh((m + dagger(m)) / 2)[0]) < -_EIG_TOL:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class PureState:
    """Validated bipartite pure state vector of length N^2."""

    n_local: int
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.complex128)
        n = int(self.n_local)
        if v.shape != (n * n,):
            raise DimensionError(f"state vector must have length {n * n}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("state vector contains NaN or Inf entries")
        if abs(float(np.linalg.norm(v)) - 1.0) > 1e-12:
            raise ValueError("state vector is not normalized within 1e-12")
        object.__setattr__(self, "vector", v)

    def projector(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Schmidt data of a bipartite pure state.

    ``coefficients`` are nonincreasing and square-sum to 1; column i of
    ``basis_1``/``basis_2`` is the i-th local Schmidt vector.
    """

    coefficients: np.ndarray
    basis_1: np.ndarray
    basis_2: np.ndarray


def as_matrix(rho) -> np.ndarray:
    """Accept a DensityMatrix, PureState or plain array; return the matrix."""
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    if isinstance(rho, PureState):
        return rho.projector()
    return as_complex_matrix(rho)


def werner_state(sys: CoupledSpinSystem) -> DensityMatrix:
    """Normalized projector onto the swap-symmetric subspace.

    Equals the sum of the odd-J total-spin projectors; separable, invariant
    under all U otimes U, undetected by every criterion in this package.
    """
    n = sys.n
    ps = (np.eye(n * n) + sys.f) / 2
    return DensityMatrix(n_local=n, matrix=2 / (n * (n + 1)) * ps)


def family_state(sys: CoupledSpinSystem, lam: float) -> DensityMatrix:
    """Mixture  lam * P_singlet + (1 - lam) * werner  for lam in [0, 1].

    Every lam > 0 is entangled; for lam <= 1/(N+2) the state stays PPT, so
    only the witness detects it there.
    """
    if not 0 <= lam <= 1:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {lam}")
    n = sys.n
    p0 = np.outer(sys.singlet, sys.singlet.conj())
    return DensityMatrix(n_local=n,
                         matrix=lam * p0 + (1 - lam) * werner_state(sys).matrix)


def isotropic_state(sys: CoupledSpinSystem, fidelity: float) -> DensityMatrix:
    """Isotropic state of given fidelity with the singlet.

    rho_f = f P_0 + (1-f) (I - P_0) / (N^2 - 1).  The singlet is used as the
    maximally entangled reference state; any other choice is related by a
    product unitary.  Separable exactly for f <= 1/N.
    """
    if not 0 <= fidelity <= 1:
        raise ValueError(f"fidelity must lie in [0, 1], got {fidelity}")
    n = sys.n
    p0 = np.outer(sys.singlet, sys.singlet.conj())
    rest = (np.eye(n * n) - p0) / (n * n - 1)
    return DensityMatrix(n_local=n, matrix=fidelity * p0 + (1 - fidelity) * rest)


def random_pure(sys: CoupledSpinSystem, seed) -> PureState:
    """Haar-random global pure state (normalized complex Gaussian vector)."""
    rng = np.random.default_rng(seed)
    n2 = sys.n * sys.n
    v = rng.normal(size=n2) + 1j * rng.normal(size=n2)
    return PureState(n_local=sys.n, vector=v / np.linalg.norm(v))


def random_density(sys: CoupledSpinSystem, rank: int, seed) -> DensityMatrix:
    """Random density matrix G G^dag / tr from a complex Gaussian N^2 x rank factor."""
    n2 = sys.n * sys.n
    if not 1 <= rank <= n2:
        raise ValueError(f"rank must lie in [1, {n2}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n2, rank)) + 1j * rng.normal(size=(n2, rank))
    m = g @ dagger(g)
    return DensityMatrix(n_local=sys.n, matrix=m / np.trace(m).real)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian with phase-fixed diagonal."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_product_unitary(sys: CoupledSpinSystem, seed):
    """Pair (U1, U2) of independent Haar unitaries on the local space."""
    rng = np.random.default_rng(seed)
    return haar_unitary(sys.n, rng), haar_unitary(sys.n, rng)


def schmidt_decompose(psi) -> SchmidtForm:
    """Schmidt decomposition of a bipartite pure state.

    The vector is reshaped to its N x N coefficient matrix under the
    composite index convention and singular-value decomposed; the singular
    values are the Schmidt coefficients (nonincreasing).  Degenerate
    coefficients leave the bases non-unique, so compare reconstructions,
    never basis columns.
    """
    if isinstance(psi, PureState):
        v = psi.vector
    else:
        v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm < 1e-13:
        raise ValueError("cannot Schmidt-decompose the zero vector")
    v = v / norm
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise DimensionError(f"vector length {v.size} is not a perfect square")
    c = v.reshape(n, n)
    u, s, vh = np.linalg.svd(c)
    # psi = sum_i s_i u[:,i] otimes vh[i,:]  (no conjugation on the rows)
    return SchmidtForm(coefficients=s, basis_1=u, basis_2=vh.T)


def schmidt_reconstruct(form: SchmidtForm) -> np.ndarray:
    """Rebuild the state vector sum_i alpha_i b1_i otimes b2_i."""
    n = form.basis_1.shape[0]
    out = np.zeros(n * n, dtype=np.complex128)
    for i, alpha in enumerate(form.coefficients):
        out += alpha * np.kron(form.basis_1[:, i], form.basis_2[:, i])
    return out


def concurrence_pure(psi) -> float:
    """Pure-state concurrence sqrt(2 (1 - sum_i alpha_i^4))."""
    s = schmidt_decompose(psi).coefficients
    return float(np.sqrt(max(0.0, 2 * (1 - np.sum(s ** 4)))))


def eof_pure(psi) -> float:
    """Pure-state entanglement of formation: Shannon entropy of the Schmidt weights.

    Base-2 logarithm, with the continuity convention 0 log 0 = 0.
    """
    p = schmidt_decompose(psi).coefficients ** 2
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def product_pure(a, b) -> PureState:
    """Pure product state from two local vectors (normalized)."""
    av = np.asarray(a, dtype=np.complex128)
    bv = np.asarray(b, dtype=np.complex128)
    v = np.kron(av / np.linalg.norm(av), bv / np.linalg.norm(bv))
    return PureState(n_local=av.size, vector=v)


def save_state(path, state) -> None:
    """Write a DensityMatrix or PureState as JSON ([re, im] entry pairs)."""
    if isinstance(state, DensityMatrix):
        obj = {"n_local": state.n_local,
               "matrix": [[[z.real, z.imag] for z in row] for row in state.matrix]}
    elif isinstance(state, PureState):
        obj = {"n_local": state.n_local,
               "vector": [[z.real, z.imag] for z in state.vector]}
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)


def load_state(path):
    """Read a DensityMatrix or PureState back from JSON (validating invariants)."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or "n_local" not in obj:
        raise ValueError("state file must be a JSON object with an 'n_local' key")
    n = int(obj["n_local"])
    if "matrix" in obj:
        raw = np.asarray(obj["matrix"], dtype=float)
        if raw.ndim != 3 or raw.shape[2] != 2:
            raise ValueError("'matrix' must be a nested list of [re, im] pairs")
        return DensityMatrix(n_local=n, matrix=raw[..., 0] + 1j * raw[..., 1])
    if "vector" in obj:
        raw = np.asarray(obj["vector"], dtype=float)
        if raw.ndim != 2 or raw.shape[1] != 2:
            raise ValueError("'vector' must be a list of [re, im] pairs")
        return PureState(n_local=n, vector=raw[:, 0] + 1j * raw[:, 1])
    raise ValueError("state file must contain a 'matrix' or a 'vector' key")
