"""Lower bounds for concurrence and entanglement of formation.

Three convex functionals of a state feed the bounds: the partial-transpose
trace norm minus one, the realignment trace norm minus one, and minus the
witness expectation.  Each is at most the off-diagonal Schmidt-coefficient
sum on pure states, which is what turns their maximum into a concurrence
bound (after scaling) and, through the minimal-entropy profile below, into
an entanglement-of-formation bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import closedform
from .criteria import (OptimizerBudget, build_witness, minimize_witness,
                       partial_transpose_norm, realign_norm, witness_value)
from .linalg import DimensionError
from .spinspace import CoupledSpinSystem
from .states import as_matrix


def binary_entropy(x: float) -> float:
    """H2(x) in bits with the convention 0 log 0 = 0."""
    if not 0 <= x <= 1:
        raise ValueError(f"binary entropy argument must lie in [0, 1], got {x}")
    total = 0.0
    for p in (x, 1 - x):
        if p > 0:
            total -= p * np.log2(p)
    return float(total)


def _check_domain(lam: float, n: int) -> int:
    n = int(n)
    if n < 4 or n % 2 != 0:
        raise DimensionError(f"local dimension must be even and >= 4, got {n}")
    if not 1 <= lam <= n:
        raise ValueError(f"constraint value must lie in [1, {n}], got {lam}")
    return n


def extremal_schmidt_weight(lam: float, n: int) -> float:
    """Largest Schmidt weight of the entropy-minimizing state at constraint lam.

    gamma(lam) = [sqrt(lam) + sqrt((n-1)(n-lam))]^2 / n^2.
    """
    n = _check_domain(lam, n)
    return float((np.sqrt(lam) + np.sqrt((n - 1) * (n - lam))) ** 2 / n ** 2)


def min_schmidt_entropy(lam: float, n: int) -> float:
    """Minimal Schmidt-weight entropy at fixed sum_ij alpha_i alpha_j = lam.

    R(lam) = H2(gamma) + (1 - gamma) log2(n-1); R(1) = 0, R(n) = log2 n,
    nondecreasing in between.
    """
    n = _check_domain(lam, n)
    g = extremal_schmidt_weight(lam, n)
    return binary_entropy(g) + (1 - g) * float(np.log2(n - 1))


def min_schmidt_entropy_hull(lam0: float, n: int) -> float:
    """Convex hull of the minimal-entropy profile, evaluated at lam0.

    Coincides with min_schmidt_entropy on [1, 4(n-1)/n] and continues as
    the straight line  log2(n-1)/(n-2) (lam0 - n) + log2 n  up to lam0 = n.
    The piecewise form follows the Terhal-Vollbrecht description of the
    hull, whose exactness is conjectural for n > 2 but standard practice.
    """
    n = _check_domain(lam0, n)
    breakpoint_ = 4 * (n - 1) / n
    if lam0 <= breakpoint_:
        return min_schmidt_entropy(lam0, n)
    return float(np.log2(n - 1) / (n - 2) * (lam0 - n) + np.log2(n))


@dataclass(frozen=True)
class BoundReport:
    """All criterion functionals and the two derived bounds for one state."""

    f_ppt: float
    f_realign: float
    f_witness: float
    f_witness_optimized: float | None
    concurrence_lower: float
    lambda0: float
    eof_lower: float


def concurrence_lower_bound(rho, sys: CoupledSpinSystem, optimize: bool = False,
                            budget: OptimizerBudget | None = None) -> BoundReport:
    """Evaluate all criterion functionals on a state and derive both bounds.

    Raw (possibly negative) functional values are reported as-is; clamping
    to zero happens only in the derived concurrence bound.  With
    ``optimize`` the witness functional is additionally sharpened by
    minimizing over product-unitary twists.
    """
    n = sys.n
    m = as_matrix(rho)
    f_ppt = partial_transpose_norm(m, sys) - 1.0
    f_realign = realign_norm(m, sys) - 1.0
    f_w = -witness_value(build_witness(sys), m)
    f_opt = None
    if optimize:
        val, _, _ = minimize_witness(m, sys, budget)
        f_opt = -val
    candidates = [f_ppt, f_realign, f_w] + ([f_opt] if f_opt is not None else [])
    best = max(candidates)
    # "+ 0.0" normalizes -0.0 from clamped negative functionals
    conc = float(np.sqrt(2 / (n * (n - 1))) * max(best, 0.0) + 0.0)
    lam0 = float(min(max(1.0 + best, 1.0), float(n)))
    return BoundReport(
        f_ppt=f_ppt,
        f_realign=f_realign,
        f_witness=f_w,
        f_witness_optimized=f_opt,
        concurrence_lower=conc,
        lambda0=lam0,
        eof_lower=min_schmidt_entropy_hull(lam0, n),
    )


def eof_lower_bound(rho, sys: CoupledSpinSystem, include_witness: bool = True,
                    optimize: bool = False,
                    budget: OptimizerBudget | None = None) -> float:
    """Entanglement-of-formation lower bound via the minimal-entropy hull.

    With ``include_witness`` (default) the constraint value is the maximum
    of all three functionals plus one; without it only the two trace norms
    enter (the older two-functional bound, always weaker or equal).
    """
    n = sys.n
    m = as_matrix(rho)
    candidates = [partial_transpose_norm(m, sys), realign_norm(m, sys)]
    if include_witness:
        candidates.append(1.0 - witness_value(build_witness(sys), m))
        if optimize:
            val, _, _ = minimize_witness(m, sys, budget)
            candidates.append(1.0 - val)
    lam0 = float(min(max(max(candidates), 1.0), float(n)))
    return min_schmidt_entropy_hull(lam0, n)


@dataclass(frozen=True)
class FamilyCurvePoint:
    """Closed-form bound curves of the singlet/Werner family at one lam.

    ``bound_*`` values are clamped at zero for reporting; the unclamped
    formula values are kept in ``raw_*``.
    """

    lam: float
    bound_witness: float
    bound_ppt: float
    bound_realign: float
    bound_upper: float
    eof_new: float
    eof_old: float
    eof_upper: float
    raw_witness: float
    raw_ppt: float
    raw_realign: float


def family_bounds_closed_form(n: int, lam: float) -> FamilyCurvePoint:
    """Exact bound curves for the singlet/Werner family.

    Concurrence: the witness line sqrt(2(n-1)/n) (n-2)/(n-1) lam, the
    piecewise partial-transpose curve with breakpoints at 1/(n+2) and 1/2,
    the realignment curve with its single breakpoint at 1/(n+2) (negative
    below it), and the upper line sqrt(2(n-1)/n) lam.  Entanglement of
    formation: hull of the minimal-entropy profile at the constraint value
    with and without the witness functional, plus the upper line lam log2 n.
    """
    n = int(n)
    if n < 4 or n % 2 != 0:
        raise DimensionError(f"local dimension must be even and >= 4, got {n}")
    if not 0 <= lam <= 1:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {lam}")
    pref = np.sqrt(2 * (n - 1) / n)

    raw_witness = float(pref * (n - 2) / (n - 1) * lam)
    if lam <= 1 / (n + 2):
        raw_ppt = 0.0
    elif lam <= 0.5:
        raw_ppt = float(pref * (n - 2) / (n * (n - 1)) * ((n + 2) * lam - 1))
    else:
        raw_ppt = float(pref * (n * lam - 1) / (n - 1))
    if lam <= 1 / (n + 2):
        raw_realign = float(pref * (-2 * lam) / (n - 1))
    else:
        raw_realign = float(pref * (n * lam - 1) / (n - 1))

    t2_norm, re_norm = closedform.family_trace_norms(n, lam)
    lam0_new = min(max(max(n * lam, (n - 2) * lam + 1.0), 1.0), float(n))
    lam0_old = min(max(max(t2_norm, re_norm), 1.0), float(n))

    return FamilyCurvePoint(
        lam=lam,
        bound_witness=max(raw_witness, 0.0) + 0.0,
        bound_ppt=max(raw_ppt, 0.0) + 0.0,
        bound_realign=max(raw_realign, 0.0) + 0.0,
        bound_upper=float(pref * lam),
        eof_new=min_schmidt_entropy_hull(lam0_new, n),
        eof_old=min_schmidt_entropy_hull(lam0_old, n),
        eof_upper=float(lam * np.log2(n)),
        raw_witness=raw_witness,
        raw_ppt=raw_ppt,
        raw_realign=raw_realign,
    )


def isotropic_reference(n: int, fidelity: float) -> tuple[float, float, float]:
    """(exact concurrence, partial-transpose bound, witness bound) for isotropic states.

    Exact concurrence is sqrt(2n/(n-1)) (f - 1/n) above f = 1/n and zero
    below; the partial-transpose bound reproduces it exactly, the witness
    bound is the factor (n-2)/(n-1) weaker.
    """
    n = int(n)
    if n < 4 or n % 2 != 0:
        raise DimensionError(f"local dimension must be even and >= 4, got {n}")
    if not 0 <= fidelity <= 1:
        raise ValueError(f"fidelity must lie in [0, 1], got {fidelity}")
    if fidelity <= 1 / n:
        return 0.0, 0.0, 0.0
    exact = float(np.sqrt(2 * n / (n - 1)) * (fidelity - 1 / n))
    return exact, exact, float((n - 2) / (n - 1) * exact)
