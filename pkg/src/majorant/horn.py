"""Hermitian matrices with prescribed spectrum and diagonal.

The construction is the classical one: a chain of two-coordinate mixing
steps carries the spectrum list onto the target diagonal, and each step
is realized by a plane rotation whose phase is chosen so that the
rotated matrix picks up exactly the mixed diagonal.  Also provides the
top-k eigenvalue sums (the trace maximum over rank-k projections) and
spectral alignment of two matrices with entrywise-close spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .eigenlists import DEFAULT_TOL, EigenList, ListLike, as_eigenlist, check_majorization
from .errors import DistributionMismatch, InvalidInput, MajorizationViolation

#: allowed deviation from exact self-adjointness
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense self-adjoint complex matrix."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InvalidInput("matrix must be square and nonempty")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise InvalidInput("matrix entries must be finite")
        if np.max(np.abs(arr - arr.conj().T)) > HERMITIAN_TOL:
            raise InvalidInput("matrix is not self-adjoint within tolerance")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def diagonal(self) -> np.ndarray:
        """Real diagonal (imaginary round-off discarded)."""
        return np.diag(self.entries).real.copy()

    def eigenvalues(self) -> EigenList:
        """Spectrum in decreasing order."""
        return EigenList(np.linalg.eigvalsh(self.entries)[::-1], tolerance=1e-9)

    @classmethod
    def from_diagonal(cls, values: ListLike) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(as_eigenlist(values).values, dtype=complex)))

    def to_jsonable(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.entries
            ],
        }

    @classmethod
    def from_jsonable(cls, data) -> "HermitianMatrix":
        arr = matrix_from_jsonable(data)
        return cls(arr)


MatrixLike = Union[HermitianMatrix, Sequence, np.ndarray]


def as_hermitian(matrix: MatrixLike) -> HermitianMatrix:
    if isinstance(matrix, HermitianMatrix):
        return matrix
    return HermitianMatrix(np.asarray(matrix, dtype=complex))


def matrix_to_jsonable(arr: np.ndarray) -> dict:
    """JSON form shared by all square complex matrices (unitaries, contractions)."""
    arr = np.asarray(arr, dtype=complex)
    return {
        "dim": arr.shape[0],
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in arr],
    }


def matrix_from_jsonable(data) -> np.ndarray:
    if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
        raise InvalidInput('matrix JSON must be {"dim": n, "entries": [[[re,im],...],...]}')
    n = data["dim"]
    rows = data["entries"]
    try:
        arr = np.array(
            [[complex(cell[0], cell[1]) for cell in row] for row in rows], dtype=complex
        )
    except (TypeError, IndexError, ValueError) as exc:
        raise InvalidInput(f"malformed matrix entries: {exc}") from exc
    if arr.ndim != 2 or arr.shape != (n, n):
        raise InvalidInput("matrix entries do not match the declared dimension")
    return arr


def eigh_desc(matrix: MatrixLike) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with eigenvalues sorted in decreasing order."""
    arr = matrix.entries if isinstance(matrix, HermitianMatrix) else np.asarray(matrix)
    vals, vecs = np.linalg.eigh(arr)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


@dataclass(frozen=True)
class TTransform:
    """One mixing step: transposition (i, j) with weight t in [0, 1].

    Applied to a vector x it produces t*x + (1-t)*(x with coordinates
    i and j swapped).  Indices are 0-based.
    """

    i: int
    j: int
    t: float

    def __post_init__(self):
        if not (isinstance(self.i, (int, np.integer)) and isinstance(self.j, (int, np.integer))):
            raise InvalidInput("transposition indices must be integers")
        if not 0 <= self.i < self.j:
            raise InvalidInput("need 0 <= i < j")
        if not (np.isfinite(self.t) and -1e-12 <= self.t <= 1.0 + 1e-12):
            raise InvalidInput("mixing weight t must lie in [0, 1]")
        object.__setattr__(self, "i", int(self.i))
        object.__setattr__(self, "j", int(self.j))
        object.__setattr__(self, "t", float(min(1.0, max(0.0, self.t))))

    def apply_to_vector(self, x: np.ndarray) -> np.ndarray:
        """The mixing recurrence on a raw coordinate vector."""
        x = np.asarray(x, dtype=float)
        if self.j >= x.size:
            raise InvalidInput("transposition index out of range")
        swapped = x.copy()
        swapped[[self.i, self.j]] = swapped[[self.j, self.i]]
        return self.t * x + (1.0 - self.t) * swapped

    def to_jsonable(self) -> dict:
        return {"i": self.i, "j": self.j, "t": self.t}


def t_transform_chain(lam: ListLike, p: ListLike, tol: float = DEFAULT_TOL) -> list[TTransform]:
    """Mixing chain carrying the list ``lam`` onto the list ``p``.

    Requires p to be majorized by lam with equal totals.  Uses the
    classical pivot rule: locate the first coordinate still above its
    target and the first later coordinate below its target, and transfer
    as much as one of them needs.  Each step finalizes at least one
    coordinate, so at most n-1 steps are produced.
    """
    le, pe = as_eigenlist(lam), as_eigenlist(p)
    if len(le) != len(pe):
        raise InvalidInput("lists must have equal length")
    if not check_majorization(pe, le, "equality", tol).holds:
        raise MajorizationViolation("p must be majorized by lam with equal totals")
    x = le.values.copy()
    pv = pe.values
    scale = max(1.0, float(np.max(np.abs(x))))
    snap = 1e-12 * scale
    chain: list[TTransform] = []
    for _ in range(x.size - 1):
        diff = x - pv
        above = np.nonzero(diff > snap)[0]
        if above.size == 0:
            break
        i = int(above[0])
        below = np.nonzero(diff[i + 1 :] < -snap)[0]
        if below.size == 0:
            break
        j = int(below[0]) + i + 1
        delta = min(x[i] - pv[i], pv[j] - x[j])
        t = 1.0 - delta / (x[i] - x[j])
        chain.append(TTransform(i, j, t))
        x[i] -= delta
        x[j] += delta
        # pin the coordinate that just reached its target, so later
        # pivots never revisit it
        if abs(x[i] - pv[i]) <= snap:
            x[i] = pv[i]
        if abs(x[j] - pv[j]) <= snap:
            x[j] = pv[j]
    return chain


def apply_t_transform(matrix: MatrixLike, transform: TTransform) -> tuple[np.ndarray, HermitianMatrix]:
    """Conjugate by the plane rotation realizing one mixing step.

    Returns (U, U A U*) where U is unitary, equal to the identity except
    in rows/columns i and j, and the diagonal of the result is the mixed
    diagonal t*d + (1-t)*(d with entries i, j swapped).  The phase z is
    unimodular with z * a_ij purely imaginary, which is exactly what
    makes the cross terms drop out of the new diagonal.
    """
    A = as_hermitian(matrix)
    i, j, t = transform.i, transform.j, transform.t
    if j >= A.dim:
        raise InvalidInput("transposition index out of range for this matrix")
    a = A.entries
    c = math.sqrt(t)
    s = math.sqrt(max(0.0, 1.0 - t))
    aij = a[i, j]
    if s == 0.0 or aij == 0:
        z = 1.0 + 0.0j
    else:
        z = 1j * np.conj(aij) / abs(aij)
    block = np.array([[z * c, s], [-z * s, c]], dtype=complex)
    U = np.eye(A.dim, dtype=complex)
    U[np.ix_([i, j], [i, j])] = block
    result = a.copy()
    idx = [i, j]
    result[idx, :] = block @ result[idx, :]
    result[:, idx] = result[:, idx] @ block.conj().T
    return U, HermitianMatrix(result)


def horn_construct(lam: ListLike, p: ListLike, tol: float = DEFAULT_TOL) -> HermitianMatrix:
    """Self-adjoint matrix with spectrum ``lam`` and diagonal ``p``.

    Feasible exactly when p is majorized by lam with equal totals.
    Starts from the diagonal matrix of lam and conjugates along the
    mixing chain; every step is a similarity, so the spectrum never
    moves while the diagonal walks to p.
    """
    chain = t_transform_chain(lam, p, tol)
    A = HermitianMatrix.from_diagonal(lam)
    for transform in chain:
        _, A = apply_t_transform(A, transform)
    return A


def ky_fan_sum(matrix: MatrixLike, k: int) -> float:
    """Sum of the k largest eigenvalues.

    Equals the maximum of trace(A P) over rank-k orthogonal projections
    P, attained by projecting onto k top eigenvectors.
    """
    A = as_hermitian(matrix)
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= A.dim:
        raise InvalidInput("k must satisfy 1 <= k <= dim")
    vals = np.linalg.eigvalsh(A.entries)
    return float(vals[::-1][:k].sum())


def approx_conjugate(a: MatrixLike, b: MatrixLike, eps: float) -> np.ndarray:
    """Unitary W aligning A with B when their sorted spectra are eps-close.

    Matches the two eigenbases in sorted order; the conjugated matrix
    then differs from B by a diagonal of eigenvalue gaps, so the operator
    norm of W A W* - B is at most max_k |alpha_k - beta_k| <= 2*eps.
    """
    A, B = as_hermitian(a), as_hermitian(b)
    if A.dim != B.dim:
        raise InvalidInput("matrices must have equal dimension")
    if not (np.isfinite(eps) and eps > 0):
        raise InvalidInput("eps must be positive")
    avals, avecs = eigh_desc(A)
    bvals, bvecs = eigh_desc(B)
    worst = float(np.max(np.abs(avals - bvals)))
    if worst > eps + 1e-12:
        raise DistributionMismatch(
            f"sorted spectra differ by {worst:.3e} at some entry, beyond eps={eps:.3e}"
        )
    return bvecs @ avecs.conj().T
