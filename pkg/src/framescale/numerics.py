"""Dense real linear-algebra kernel and nonnegative linear feasibility solver.

Everything here is self-contained and deterministic: eigendecomposition via
cyclic Jacobi rotations, rank/nullspace from singular values of M^T M, and a
two-phase tableau simplex with Bland's anti-cycling rule.  The solver produces
either a nonnegative witness or a Farkas-style infeasibility certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    InternalNumericError,
    IterationLimitError,
    NonFiniteError,
    NonSymmetricError,
)

_EPS_RC = 1e-9      # reduced-cost threshold for entering columns
_EPS_PIV = 1e-9     # minimum pivot magnitude
STRICT_MARGIN = 1e-9


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues (descending) and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


@dataclass(frozen=True)
class FeasibilityProblem:
    """Find x >= 0 with A x = b.  For b = 0 the normalization sum(x) = 1 is
    added automatically so the trivial solution is excluded."""

    A: np.ndarray
    b: np.ndarray
    require_strict: bool = False


@dataclass(frozen=True)
class FeasibilityOutcome:
    feasible: bool
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None
    strict_margin: float | None = None


def _check_finite(a):
    if not np.all(np.isfinite(a)):
        raise NonFiniteError("matrix entries must be finite")


def symmetric_eigen(M, sym_tol=1e-10):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Raises NonSymmetricError when ``M`` deviates from its transpose by more
    than ``sym_tol`` relative to the largest entry.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {A.shape}")
    _check_finite(A)
    scale = max(float(np.abs(A).max()), 1.0)
    if float(np.abs(A - A.T).max()) > sym_tol * scale:
        raise NonSymmetricError("matrix is not symmetric within tolerance")

    n = A.shape[0]
    A = 0.5 * (A + A.T)
    Q = np.eye(n)
    fro = max(float(np.linalg.norm(A)), 1e-300)
    for _ in range(100):
        off = A - np.diag(np.diag(A))
        if float(np.abs(off).max(initial=0.0)) <= 1e-15 * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * fro:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # A <- J^T A J with the rotation in the (p, q) plane
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                qp, qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * qp - s * qq
                Q[:, q] = s * qp + c * qq

    eigvals = np.diag(A).copy()
    order = np.argsort(-eigvals, kind="stable")
    eigvals = eigvals[order]
    Q = Q[:, order]
    # deterministic sign: largest-magnitude entry of each eigenvector positive
    for j in range(n):
        i = int(np.argmax(np.abs(Q[:, j])))
        if Q[i, j] < 0:
            Q[:, j] = -Q[:, j]
    eigvals.setflags(write=False)
    Q.setflags(write=False)
    return SpectralData(eigenvalues=eigvals, eigenvectors=Q)


def singular_values(M):
    """Singular values of M, descending.

    Computed from the symmetric embedding [[0, M], [M^T, 0]], whose
    eigenvalues are +-sigma_i plus zeros; this avoids forming M^T M and the
    square-root loss of precision that would come with it.
    """
    A = np.asarray(M, dtype=float)
    _check_finite(A)
    k, nv = A.shape
    B = np.zeros((k + nv, k + nv))
    B[:k, k:] = A
    B[k:, :k] = A.T
    spec = symmetric_eigen(B)
    return np.clip(spec.eigenvalues[: min(k, nv)], 0.0, None)


def rank(M, tol=1e-10):
    """Number of singular values above ``tol`` times the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = singular_values(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def nullspace_basis(M, tol=1e-10):
    """Orthonormal basis of the kernel of M, as columns of the result.

    A full-column-rank matrix yields a matrix with zero columns.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.asarray(M, dtype=float)
    _check_finite(A)
    # kernel dimension from the precise singular values; kernel directions
    # from the Gram eigenvectors (accurate as long as the spectral gap to the
    # smallest nonzero singular value is healthy)
    k0 = A.shape[1] - rank(A, tol)
    if k0 == 0:
        return np.zeros((A.shape[1], 0))
    spec = symmetric_eigen(A.T @ A)
    # smallest eigenvalues last in the descending order; flip so the basis is
    # ordered by ascending singular value
    cols = spec.eigenvectors[:, -k0:][:, ::-1].copy()
    return cols


# ---------------------------------------------------------------------------
# two-phase simplex


@dataclass
class LPResult:
    status: str                      # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None = None
    objective: float | None = None
    dual: np.ndarray | None = None   # equality multipliers (phase-1 on infeasible)


def _pivot(T, basis, row, col):
    T[row] = T[row] / T[row, col]
    piv = T[row].copy()
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, piv)
    T[row] = piv
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _bland_loop(T, basis, n_enterable, cap):
    k = T.shape[0] - 1
    for _ in range(cap):
        obj = T[-1]
        col = -1
        for j in range(n_enterable):
            if obj[j] < -_EPS_RC:
                col = j
                break
        if col < 0:
            return "optimal"
        best = None
        best_row = -1
        for i in range(k):
            a = T[i, col]
            if a > _EPS_PIV:
                ratio = T[i, -1] / a
                if best is None or ratio < best - 1e-12 or (
                    abs(ratio - best) <= 1e-12 and basis[i] < basis[best_row]
                ):
                    best = ratio
                    best_row = i
        if best_row < 0:
            return "unbounded"
        _pivot(T, basis, best_row, col)
    raise IterationLimitError("simplex iteration cap exceeded")


def linear_program(A, b, c=None, maximize=False):
    """Solve min (or max) c.x subject to A x = b, x >= 0.

    With ``c=None`` only feasibility is decided (phase 1).  On infeasibility
    the returned ``dual`` y satisfies y.A <= 0 and y.b > 0 (Farkas).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    _check_finite(A)
    _check_finite(b)
    if A.ndim != 2 or A.shape[0] != b.size:
        raise DimensionMismatchError(f"A has shape {A.shape}, b has length {b.size}")
    k, nv = A.shape
    cap = 50 * (k + nv + k)  # artificials count toward the column budget

    row_sign = np.where(b < 0, -1.0, 1.0)
    A1 = A * row_sign[:, None]
    b1 = b * row_sign

    T = np.zeros((k + 1, nv + k + 1))
    T[:k, :nv] = A1
    T[:k, nv:nv + k] = np.eye(k)
    T[:k, -1] = b1
    T[k, :nv] = -A1.sum(axis=0)
    T[k, -1] = -b1.sum()
    basis = list(range(nv, nv + k))

    _bland_loop(T, basis, nv, cap)
    p1_obj = -T[-1, -1]
    feas_tol = 1e-9 * (1.0 + float(np.abs(b).max(initial=0.0)))
    if p1_obj > feas_tol:
        pi = 1.0 - T[-1, nv:nv + k]
        return LPResult(status="infeasible", objective=float(p1_obj),
                        dual=row_sign * pi)

    # drive leftover artificials out of the basis (redundant rows stay put)
    for i in range(k):
        if basis[i] >= nv:
            for j in range(nv):
                if abs(T[i, j]) > _EPS_PIV:
                    _pivot(T, basis, i, j)
                    break

    if c is not None:
        cvec = np.zeros(nv + k)
        cvec[:nv] = -np.asarray(c, dtype=float) if maximize else np.asarray(c, dtype=float)
        cB = cvec[np.asarray(basis)]
        T[-1, :] = np.concatenate([cvec, [0.0]]) - cB @ T[:k, :]
        status = _bland_loop(T, basis, nv, cap)
        if status == "unbounded":
            return LPResult(status="unbounded")

    x = np.zeros(nv)
    for i, bi in enumerate(basis):
        if bi < nv:
            x[bi] = T[i, -1]
    obj = None
    if c is not None:
        obj = float(np.asarray(c, dtype=float) @ x)
    pi = -T[-1, nv:nv + k]
    return LPResult(status="optimal", x=x, objective=obj, dual=row_sign * pi)


def _clamp_nonneg(x):
    x = np.asarray(x, dtype=float).copy()
    if float(x.min(initial=0.0)) < -1e-12:
        raise InternalNumericError("simplex witness has a negative entry")
    x[x < 0.0] = 0.0
    return x


def solve_feasibility(p: FeasibilityProblem) -> FeasibilityOutcome:
    """Decide A x = b, x >= 0 and return a witness or certificate.

    For a homogeneous system (b = 0) the normalization sum(x) = 1 is added
    and the infeasibility certificate y satisfies (y.A)_j > 0 for every
    column j, the separating-functional direction of the convex-hull test.
    With ``require_strict`` the minimum entry of x is maximized and the
    problem counts as feasible only when that margin exceeds 1e-9; a strict
    failure of an otherwise feasible system carries neither witness nor
    certificate, only the margin.
    """
    A = np.asarray(p.A, dtype=float)
    b = np.asarray(p.b, dtype=float).ravel()
    _check_finite(A)
    _check_finite(b)
    if A.ndim != 2 or A.shape[0] != b.size:
        raise DimensionMismatchError(f"A has shape {A.shape}, b has length {b.size}")
    k, m = A.shape
    hom = bool(np.all(b == 0.0))
    if hom:
        A2 = np.vstack([A, np.ones((1, m))])
        b2 = np.concatenate([b, [1.0]])
    else:
        A2, b2 = A, b
    k2 = A2.shape[0]

    def certificate_from(dual):
        if hom:
            y = -dual[:k]
            margin = float((y @ A).min())
            if margin <= 0.0:
                raise InternalNumericError("hull certificate fails the strict sign test")
        else:
            y = dual[:k]
        return y

    if not p.require_strict:
        res = linear_program(A2, b2)
        if res.status == "infeasible":
            return FeasibilityOutcome(feasible=False, certificate=certificate_from(res.dual))
        x = _clamp_nonneg(res.x)
        _verify_witness(A2, b2, x)
        return FeasibilityOutcome(feasible=True, witness=x)

    # strict: variables [x, delta, s, s_cap]; maximize delta subject to
    # A2 x = b2, x_i - delta - s_i = 0, delta + s_cap = CAP
    cap_val = 1.0 + float(np.abs(b2).max(initial=0.0))
    nv = m + 1 + m + 1
    Ae = np.zeros((k2 + m + 1, nv))
    be = np.zeros(k2 + m + 1)
    Ae[:k2, :m] = A2
    be[:k2] = b2
    for i in range(m):
        Ae[k2 + i, i] = 1.0
        Ae[k2 + i, m] = -1.0
        Ae[k2 + i, m + 1 + i] = -1.0
    Ae[k2 + m, m] = 1.0
    Ae[k2 + m, nv - 1] = 1.0
    be[k2 + m] = cap_val
    cost = np.zeros(nv)
    cost[m] = 1.0
    res = linear_program(Ae, be, cost, maximize=True)
    if res.status == "infeasible":
        return FeasibilityOutcome(feasible=False, certificate=certificate_from(res.dual))
    delta = float(res.x[m])
    x = _clamp_nonneg(res.x[:m])
    if delta <= STRICT_MARGIN:
        return FeasibilityOutcome(feasible=False, strict_margin=delta)
    _verify_witness(A2, b2, x)
    return FeasibilityOutcome(feasible=True, witness=x, strict_margin=delta)


def _verify_witness(A, b, x):
    resid = float(np.abs(A @ x - b).max(initial=0.0))
    if resid > 1e-8 * (1.0 + float(np.abs(b).max(initial=0.0))):
        raise InternalNumericError(f"feasibility witness residual {resid:.3e} too large")
