"""Separability criteria: positive map, lifted maps, realignment, witness.

The distinguished positive (but not completely positive) map used here is
the time-reversal extension of the reduction map,

    B  ->  (tr B) I - B - V B^T V^dag,

defined for even local dimension N >= 4.  Lifting it to the second factor
of C^N otimes C^N and applying it to the singlet produces a Hermitian
witness operator that detects entangled states with positive partial
transpose.  Trace-norm criteria (partial transpose / realignment) live here
as well, so one call can evaluate all three detectors on a state.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .linalg import (DimensionError, as_complex_matrix, dagger, kron,
                     partial_trace, trace_norm)
from .spinspace import CoupledSpinSystem, time_reverse

WITNESS_FORMS = ("lifted", "swap", "spectral")

# Margin added to strict inequalities when turning numbers into verdicts.
VERDICT_TOL = 1e-9


def _check_local(b: np.ndarray, n: int) -> np.ndarray:
    a = as_complex_matrix(b)
    if a.shape != (n, n):
        raise DimensionError(f"operator must be {n}x{n}, got {a.shape}")
    return a


def _check_pair(rho, n: int) -> np.ndarray:
    a = as_complex_matrix(rho)
    if a.shape != (n * n, n * n):
        raise DimensionError(f"operator must be {n * n}x{n * n}, got {a.shape}")
    return a


def extended_reduction_map(b, sys: CoupledSpinSystem) -> np.ndarray:
    """Apply the positive map  B -> (tr B) I - B - theta(B)  on one factor.

    For a normalized pure input |phi><phi| the image is the projector onto
    the orthogonal complement of span{|phi>, theta|phi>}, hence positive.
    """
    a = _check_local(b, sys.n)
    return np.trace(a) * np.eye(sys.n) - a - time_reverse(a, sys)


def partial_transpose(rho, n: int) -> np.ndarray:
    """Transpose the second tensor factor of an operator on C^n otimes C^n."""
    a = _check_pair(rho, n)
    return a.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n)


def partial_time_reversal(rho, sys: CoupledSpinSystem) -> np.ndarray:
    """Apply time reversal to the second factor: (I otimes V) T2(rho) (I otimes V)^dag."""
    n = sys.n
    iv = kron(np.eye(n), sys.v)
    return iv @ partial_transpose(rho, n) @ dagger(iv)


def lift_on_2(map_name: str, rho, sys: CoupledSpinSystem) -> np.ndarray:
    """Apply a local map to subsystem 2 of a composite operator.

    ``map_name`` is one of "transpose", "time_reverse", "phi" (the extended
    reduction map).  All act blockwise on the subsystem-2 indices under the
    subsystem-1-major composite index convention.
    """
    n = sys.n
    a = _check_pair(rho, n)
    if map_name == "transpose":
        return partial_transpose(a, n)
    if map_name == "time_reverse":
        return partial_time_reversal(a, sys)
    if map_name == "phi":
        # blockwise (tr B) I: the block traces form the subsystem-1 reduction
        return (kron(partial_trace(a, n, 2), np.eye(n)) - a
                - partial_time_reversal(a, sys))
    raise ValueError(f"unknown map {map_name!r}")


def partial_transpose_norm(rho, sys: CoupledSpinSystem) -> float:
    """Trace norm of the partially transposed state; > 1 flags entanglement."""
    return trace_norm(partial_transpose(rho, sys.n))


def partial_time_reversal_norm(rho, sys: CoupledSpinSystem) -> float:
    """Trace norm of the partially time-reversed state; equals the T2 norm."""
    return trace_norm(partial_time_reversal(rho, sys))


def realign(rho, sys: CoupledSpinSystem) -> np.ndarray:
    """Canonical realignment  rho -> theta_2(F rho)."""
    a = _check_pair(rho, sys.n)
    return partial_time_reversal(sys.f @ a, sys)


def realign_reshuffle(rho, n: int) -> np.ndarray:
    """Realignment as the index reshuffle M[(i,j),(k,l)] = rho[(i,k),(j,l)].

    Differs from :func:`realign` by an index permutation; the two share
    their singular values, hence the same trace norm.
    """
    a = _check_pair(rho, n)
    return a.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(n * n, n * n)


def realign_norm(rho, sys: CoupledSpinSystem) -> float:
    """Trace norm of the realigned state; > 1 flags entanglement."""
    return trace_norm(realign(rho, sys))


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian witness operator on C^N otimes C^N with its provenance tag."""

    n: int
    matrix: np.ndarray
    construction_tag: str


def build_witness(sys: CoupledSpinSystem, form: str = "swap") -> Witness:
    """Construct the witness in one of its three equivalent forms.

    "lifted":   N * (I otimes Phi) applied to the singlet projector.
    "swap":     I - N P_0 - F.
    "spectral": -(N-2) P_0 + 2 (P_2 + P_4 + ... + P_{N-2}).

    The three agree elementwise to rounding; the spectrum is -(N-2) on the
    singlet, +2 on the even-J manifolds with J >= 2, and 0 on the odd-J
    (symmetric) manifolds.
    """
    n = sys.n
    p0 = np.outer(sys.singlet, sys.singlet.conj())
    if form == "lifted":
        w = n * lift_on_2("phi", p0, sys)
    elif form == "swap":
        w = np.eye(n * n) - n * p0 - sys.f
    elif form == "spectral":
        w = -(n - 2) * sys.projectors[0]
        for bigj in range(2, n - 1, 2):
            w = w + 2 * sys.projectors[bigj]
    else:
        raise ValueError(f"unknown witness form {form!r}; expected one of {WITNESS_FORMS}")
    w = (w + dagger(w)) / 2
    assert abs(float(np.trace(w).real) - n * (n - 2)) <= 1e-10 * n * n
    return Witness(n=n, matrix=w, construction_tag=form)


def witness_value(w: Witness, rho) -> float:
    """tr(W rho); negative values certify entanglement of rho."""
    a = _check_pair(rho, w.n)
    return float(np.einsum("ij,ji->", w.matrix, a).real)


def twisted_witness(w: Witness, u1, u2) -> np.ndarray:
    """(U1 otimes U2) W (U1 otimes U2)^dag for unitary U1, U2."""
    n = w.n
    for u in (u1, u2):
        a = _check_local(u, n)
        if float(np.abs(dagger(a) @ a - np.eye(n)).max()) > 1e-10:
            raise ValueError("twist matrices must be unitary within 1e-10")
    u = kron(u1, u2)
    return u @ w.matrix @ dagger(u)


@dataclass(frozen=True)
class OptimizerBudget:
    """Search effort for the local-unitary witness minimization."""

    restarts: int = 8
    iterations: int = 500
    seed: int = 0


def _hermitian_from_params(theta: np.ndarray, n: int) -> np.ndarray:
    rows, cols = np.triu_indices(n, k=1)
    k = len(rows)
    h = np.diag(theta[:n].astype(complex))
    off = theta[n:n + k] + 1j * theta[n + k:]
    h[rows, cols] = off
    h[cols, rows] = off.conj()
    return h


def _unitary_from_params(theta: np.ndarray, n: int) -> np.ndarray:
    w, q = np.linalg.eigh(_hermitian_from_params(theta, n))
    return (q * np.exp(1j * w)) @ dagger(q)


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def minimize_witness(rho, sys: CoupledSpinSystem, budget: OptimizerBudget | None = None):
    """Minimize tr(W_U rho) over product unitaries U = U1 otimes U2.

    Returns ``(value, u1, u2)`` with value = tr((U1 otimes U2) W (.)^dag rho)
    re-evaluated at the returned unitaries.  The identity twist is always a
    candidate, so the result never exceeds tr(W rho).  Each restart runs a
    derivative-free Powell direction-set search over the 2 N^2 real
    parameters of the two unitary generators; restarts draw independent RNG
    streams split from the seed, with restart 0 starting at the identity.
    """
    if budget is None:
        budget = OptimizerBudget()
    if budget.restarts < 1 or budget.iterations < 0:
        raise ValueError("budget must have restarts >= 1 and iterations >= 0")
    n = sys.n
    a = _check_pair(rho, n)
    w = build_witness(sys)
    npar = n * n

    def value_at(u1, u2):
        u = kron(u1, u2)
        return float(np.einsum("ij,ji->", w.matrix, u @ a @ dagger(u)).real)

    # Minimizing tr(W U rho U^dag) over U = U1 x U2 is the same search with
    # U replaced by its adjoint; parameterize the state twist and undo at the end.
    def objective(x, base1, base2):
        return value_at(base1 @ _unitary_from_params(x[:npar], n),
                        base2 @ _unitary_from_params(x[npar:], n))

    eye = np.eye(n)
    best_val = value_at(eye, eye)
    best_u = (eye, eye)

    streams = np.random.SeedSequence(budget.seed).spawn(budget.restarts)
    for r in range(budget.restarts):
        rng = np.random.default_rng(streams[r])
        if r == 0:
            b1, b2 = eye, eye
        else:
            b1, b2 = _haar_unitary(n, rng), _haar_unitary(n, rng)
        if budget.iterations == 0:
            val, u1, u2 = value_at(b1, b2), b1, b2
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # maxiter cutoffs are expected
                res = scipy.optimize.minimize(
                    objective, np.zeros(2 * npar), args=(b1, b2),
                    method="Powell",
                    options=dict(maxiter=budget.iterations, xtol=1e-12, ftol=1e-14))
            val = float(res.fun)
            u1 = b1 @ _unitary_from_params(res.x[:npar], n)
            u2 = b2 @ _unitary_from_params(res.x[npar:], n)
        if val < best_val:
            best_val, best_u = val, (u1, u2)

    # The witness twist that realizes the value is the adjoint of the state twist.
    u1, u2 = dagger(best_u[0]), dagger(best_u[1])
    final = float(np.einsum("ij,ji->", twisted_witness(w, u1, u2), a).real)
    return final, u1, u2


@dataclass(frozen=True)
class CriteriaVerdict:
    """Outcome of all three separability tests on one state."""

    ppt_violated: bool
    realignment_violated: bool
    witness_value: float
    witness_detects: bool
    trace_norm_T2: float
    trace_norm_R: float


def evaluate_criteria(rho, sys: CoupledSpinSystem,
                      verdict_tol: float = VERDICT_TOL) -> CriteriaVerdict:
    """Run the partial-transpose, realignment and witness tests on a state."""
    a = _check_pair(rho, sys.n)
    t2 = partial_transpose_norm(a, sys)
    rn = realign_norm(a, sys)
    wval = witness_value(build_witness(sys), a)
    return CriteriaVerdict(
        ppt_violated=t2 > 1 + verdict_tol,
        realignment_violated=rn > 1 + verdict_tol,
        witness_value=wval,
        witness_detects=wval < -verdict_tol,
        trace_norm_T2=t2,
        trace_norm_R=rn,
    )
