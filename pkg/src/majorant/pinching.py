"""Diagonal compression in M_n with normalized trace, and its inequalities.

Zeroing the off-diagonal entries of a matrix is the trace-preserving
conditional expectation onto the diagonal subalgebra.  This module
checks the two convexity facts that compression obeys (the positive
part grows, and f(E(A)) <= E(f(A)) for convex f), the resulting
spread-order relation between the diagonal's distribution and the
spectrum's distribution, and the cell-alignment counterpart for step
functions on [0, 1].
"""

from __future__ import annotations

import math
from typing import Callable, Sequence, Union

import numpy as np

from .eigenlists import check_majorization, normalize_list
from .errors import DistributionMismatch, InvalidInput
from .horn import HermitianMatrix, MatrixLike, as_hermitian, eigh_desc
from .measures import StepFunction, from_matrix, majorize_measure
from .sampling import random_hermitian

#: slack allowed before a convexity witness counts as a violation
WITNESS_TOL = 1e-9


def pinch_diag(matrix):
    """Keep the diagonal, zero the rest; the trace is untouched.

    Accepts a HermitianMatrix or a plain square array and returns the
    same kind.  On plain arrays no self-adjointness is required, which
    is what makes the bimodule identity E(D1 A D2) = D1 E(A) D2 testable
    for arbitrary diagonal factors.
    """
    if isinstance(matrix, HermitianMatrix):
        return HermitianMatrix(np.diag(np.diag(matrix.entries)))
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInput("expected a square matrix")
    return np.diag(np.diag(arr))


def positive_part(matrix: MatrixLike) -> HermitianMatrix:
    """Spectral positive part: negative eigenvalues replaced by zero."""
    A = as_hermitian(matrix)
    vals, vecs = np.linalg.eigh(A.entries)
    clipped = np.maximum(vals, 0.0)
    out = (vecs * clipped) @ vecs.conj().T
    return HermitianMatrix(0.5 * (out + out.conj().T))


def _evaluate(f: Callable[[float], float], points: np.ndarray) -> np.ndarray:
    try:
        vals = np.array([float(f(x)) for x in points], dtype=float)
    except (ValueError, TypeError, ZeroDivisionError, OverflowError) as exc:
        raise InvalidInput(f"test function is not defined on the spectral interval: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise InvalidInput("test function is not finite on the spectral interval")
    return vals


def matrix_function(matrix: MatrixLike, f: Callable[[float], float]) -> HermitianMatrix:
    """Apply a scalar function through the spectral decomposition."""
    A = as_hermitian(matrix)
    vals, vecs = np.linalg.eigh(A.entries)
    out = (vecs * _evaluate(f, vals)) @ vecs.conj().T
    return HermitianMatrix(0.5 * (out + out.conj().T))


def convex_pinch_check(matrix: MatrixLike, f: Callable[[float], float]) -> tuple[bool, float]:
    """Verify f(E(A)) <= E(f(A)) for a convex scalar function f.

    Both sides live in the diagonal subalgebra, so the operator
    inequality reduces to entrywise comparison: the witness returned is
    the smallest eigenvalue of E(f(A)) - f(E(A)), i.e. the minimum over
    k of (f(A))_kk - f(a_kk).  For convex f it is nonnegative up to
    round-off; ``holds`` applies the standard slack.
    """
    A = as_hermitian(matrix)
    lhs = _evaluate(f, A.diagonal())
    rhs = np.diag(matrix_function(A, f).entries).real
    witness = float(np.min(rhs - lhs))
    return witness >= -WITNESS_TOL, witness


def schur_distribution_check(matrix: MatrixLike) -> bool:
    """Is the diagonal's distribution dominated by the spectrum's?

    Always true for self-adjoint input; exposed as a check so the
    statement stays executable.  Equivalent, entry for entry, to the
    classical prefix-sum comparison between the sorted diagonal and the
    eigenvalue list.
    """
    A = as_hermitian(matrix)
    return majorize_measure(from_matrix(pinch_diag(A)), from_matrix(A), "hinge")


def classical_schur_check(matrix: MatrixLike, tol: float = 1e-9) -> bool:
    """Prefix-sum form of the same statement, for cross-checking."""
    A = as_hermitian(matrix)
    diag = normalize_list(A.diagonal())
    return check_majorization(diag, A.eigenvalues(), "equality", tol).holds


def align_step_functions(
    f: StepFunction, g: StepFunction, eps: float
) -> tuple[tuple[int, ...], float]:
    """Cell permutation bringing f as close to g as sorting allows.

    Requires both functions to share the cell count and their sorted
    value lists to differ by at most ``eps`` entrywise.  Returns
    (perm, achieved) where perm[k] is the f-cell matched to g-cell k and
    achieved = max_k |f[perm[k]] - g[k]| <= 2*eps.  Matching sorted
    positions realizes the sorted-gap bound; ties keep original cell
    order.  The permutation is the cell-model analog of conjugating by
    a unitary: it is measure preserving on equal-mass cells.
    """
    if not isinstance(f, StepFunction) or not isinstance(g, StepFunction):
        raise InvalidInput("align_step_functions expects two StepFunction values")
    if f.cells != g.cells:
        raise InvalidInput("step functions must share the same cell count")
    if not (np.isfinite(eps) and eps > 0):
        raise InvalidInput("eps must be positive")
    order_f = np.argsort(-f.values, kind="stable")
    order_g = np.argsort(-g.values, kind="stable")
    sorted_gap = float(np.max(np.abs(f.values[order_f] - g.values[order_g])))
    if sorted_gap > eps + 1e-12:
        raise DistributionMismatch(
            f"sorted values differ by {sorted_gap:.3e} at some entry, beyond eps={eps:.3e}"
        )
    perm = np.empty(f.cells, dtype=int)
    perm[order_g] = order_f
    achieved = float(np.max(np.abs(f.values[perm] - g.values)))
    return tuple(int(k) for k in perm), achieved


# -- randomized experiment runner ------------------------------------------


def default_convex_family(rng: np.random.Generator, hinges: int = 3) -> list[Callable[[float], float]]:
    """Convex test functions: square, absolute value, exp, random hinges,
    and one random element of the cone a + b*x + sum c_k * max(x - r_k, 0)."""
    family: list[Callable[[float], float]] = [
        lambda x: x * x,
        abs,
        math.exp,
    ]
    for t in rng.uniform(-2.0, 2.0, size=hinges):
        family.append(lambda x, t=float(t): max(x - t, 0.0))
    a, b = rng.normal(size=2)
    rs = rng.uniform(-2.0, 2.0, size=3)
    cs = rng.uniform(0.0, 2.0, size=3)
    family.append(
        lambda x, a=float(a), b=float(b), rs=tuple(rs), cs=tuple(cs): a
        + b * x
        + sum(c * max(x - r, 0.0) for r, c in zip(rs, cs))
    )
    return family


def pinch_experiment(n: int, trials: int, seed: int) -> dict:
    """Randomized sweep of the compression inequalities.

    Draws ``trials`` random self-adjoint n x n matrices and records the
    worst witness of (a) the positive-part inequality E(A)_+ <= E(A_+)
    and (b) the convexity inequality over a per-trial test family.  The
    report is a plain dict ready for JSON emission; ``min_witness``
    staying above -1e-9 is the pass condition.
    """
    if n < 1 or trials < 1:
        raise InvalidInput("need n >= 1 and trials >= 1")
    if not 0 <= int(seed) < 2**64:
        raise InvalidInput("seed must fit in an unsigned 64-bit integer")
    rng = np.random.default_rng(int(seed))
    min_pos = math.inf
    min_convex = math.inf
    convex_checks = 0
    for _ in range(trials):
        A = random_hermitian(rng, n)
        lhs = np.diag(positive_part(pinch_diag(A)).entries).real
        rhs = np.diag(pinch_diag(positive_part(A)).entries).real
        min_pos = min(min_pos, float(np.min(rhs - lhs)))
        for f in default_convex_family(rng):
            _, witness = convex_pinch_check(A, f)
            min_convex = min(min_convex, witness)
            convex_checks += 1
    overall = min(min_pos, min_convex)
    return {
        "seed": int(seed),
        "n": int(n),
        "trials": int(trials),
        "checks": {
            "positive_part": {"count": int(trials), "min_witness": min_pos},
            "convex_family": {"count": int(convex_checks), "min_witness": min_convex},
        },
        "min_witness": overall,
        "max_violation": max(0.0, -overall),
        "holds": bool(overall >= -WITNESS_TOL),
    }
