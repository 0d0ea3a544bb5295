"""Scalability decisions for frames.

Four routes are available:

* ``decide_scalable`` -- the general test: a nonnegative, nonzero vector in
  the kernel of the reduced diagram matrix, found by linear feasibility.
* ``quick_sign_reject`` -- cheap rejection when a row of the reduced diagram
  matrix is strictly one-signed.
* ``cofactor_scaling`` -- closed-form weights from cofactors when the reduced
  diagram matrix has rank m-1.
* ``codim2_scaling`` -- the rank m-2 case, solved exactly by intersecting the
  angular half-circles where each cofactor A_j(t) = p_j cos t + q_j sin t is
  nonnegative.

Every "not scalable" answer is certified: either a separating functional y
with <x~_i, y> > 0 for all i, or a strictly one-signed row index.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .diagram import reduced_diagram_matrix, reduced_size
from .errors import (
    CorankMismatchError,
    DimensionMismatchError,
    InternalNumericError,
)

NOT_SCALABLE = "not_scalable"
SCALABLE = "scalable"
STRICTLY_SCALABLE = "strictly_scalable"

METHOD_FEASIBILITY = "feasibility"
METHOD_COFACTOR = "cofactor"
METHOD_CODIM2 = "codim2"
METHOD_SIGN_REJECT = "sign_reject"

ALL_NONNEG = "all_nonneg"
ALL_NONPOS = "all_nonpos"
MIXED = "mixed"

_ZERO_TOL = 1e-12


@dataclass
class ScalingResult:
    verdict: str
    method: str
    weights_c: np.ndarray | None = None      # nonnegative kernel vector, sum 1
    scalars_a: np.ndarray | None = None      # entrywise square roots
    certificate_y: np.ndarray | None = None  # separating functional
    reject_row: int | None = None
    near_zero: list = field(default_factory=list)

    @property
    def scalable(self):
        return self.verdict != NOT_SCALABLE


@dataclass
class CofactorReport:
    corank: int
    cofactor_vector: np.ndarray
    sign_class: str


SignCheck = namedtuple("SignCheck", ["row_index", "columns_independent"])


def independent_rows(mat, tol=1e-10):
    """Indices of a maximal linearly independent row subset, chosen greedily
    by ascending row index (modified Gram-Schmidt with a relative threshold).
    """
    mat = np.asarray(mat, dtype=float)
    scale = max(float(np.abs(mat).max(initial=0.0)), 1.0)
    basis = []
    idx = []
    for i, row in enumerate(mat):
        r = row.astype(float).copy()
        for _ in range(2):  # twice for orthogonality at close-to-dependent rows
            for q in basis:
                r -= (r @ q) * q
        nrm = float(np.linalg.norm(r))
        if nrm > tol * scale:
            basis.append(r / nrm)
            idx.append(i)
    return idx


def quick_sign_reject(F) -> SignCheck:
    """Row-sign rejection: a row of the reduced diagram matrix whose entries
    all have the same strict sign forces every kernel vector with c >= 0 to
    vanish, so the frame cannot be scalable.

    Rows containing (near-)zero entries are skipped: they only force the
    weights to vanish on their support, which does not preclude scalability.
    Also reports whether the columns are linearly independent, another
    sufficient condition for non-scalability.
    """
    theta = reduced_diagram_matrix(F).data
    row_index = None
    for i, row in enumerate(theta):
        if float(np.abs(row).min()) > _ZERO_TOL and (
            np.all(row > 0) or np.all(row < 0)
        ):
            row_index = i
            break
    cols_independent = False
    if F.m <= theta.shape[0]:
        cols_independent = numerics.rank(theta) == F.m
    return SignCheck(row_index=row_index, columns_independent=cols_independent)


def hull_certificate_check(F, y) -> bool:
    """True when <x~_i, y> > 0 for every reduced diagram vector, which
    certifies that the frame is not scalable."""
    y = np.asarray(y, dtype=float).ravel()
    if y.size != reduced_size(F.n):
        raise DimensionMismatchError(
            f"certificate must have length {reduced_size(F.n)}, got {y.size}"
        )
    theta = reduced_diagram_matrix(F).data
    return float((theta.T @ y).min()) > 0.0


def _lp_certificate(theta):
    """Infeasibility certificate for the homogeneous kernel problem."""
    out = numerics.solve_feasibility(
        numerics.FeasibilityProblem(A=theta, b=np.zeros(theta.shape[0]))
    )
    if out.feasible:
        raise InternalNumericError(
            "feasibility solver disagrees with a proven non-scalability verdict"
        )
    return out.certificate


def _finish_scalable(c, method, strict_margin=None):
    c = np.asarray(c, dtype=float).copy()
    c[c < 0] = 0.0
    c = c / c.sum()
    near = [int(i) for i in np.flatnonzero(c <= numerics.STRICT_MARGIN)]
    if strict_margin is not None and strict_margin > numerics.STRICT_MARGIN and not near:
        verdict = STRICTLY_SCALABLE
    else:
        verdict = SCALABLE
    return ScalingResult(
        verdict=verdict,
        method=method,
        weights_c=c,
        scalars_a=np.sqrt(c),
        near_zero=near,
    )


def decide_scalable(F, strict=False) -> ScalingResult:
    """General scalability decision via the kernel of the reduced diagram
    matrix.  With ``strict=True`` the minimum weight is maximized to separate
    scalable from strictly scalable."""
    theta = reduced_diagram_matrix(F).data
    check = quick_sign_reject(F)
    if check.row_index is not None:
        row = theta[check.row_index]
        sign = 1.0 if row.sum() > 0 else -1.0
        y = np.zeros(theta.shape[0])
        y[check.row_index] = sign
        if not hull_certificate_check(F, y):
            y = _lp_certificate(theta)
        return ScalingResult(
            verdict=NOT_SCALABLE,
            method=METHOD_SIGN_REJECT,
            certificate_y=y,
            reject_row=check.row_index,
        )

    b = np.zeros(theta.shape[0])
    out = numerics.solve_feasibility(numerics.FeasibilityProblem(A=theta, b=b))
    if not out.feasible:
        return ScalingResult(
            verdict=NOT_SCALABLE,
            method=METHOD_FEASIBILITY,
            certificate_y=out.certificate,
        )
    if not strict:
        return _finish_scalable(out.witness, METHOD_FEASIBILITY)
    strict_out = numerics.solve_feasibility(
        numerics.FeasibilityProblem(A=theta, b=b, require_strict=True)
    )
    if strict_out.feasible:
        return _finish_scalable(
            strict_out.witness, METHOD_FEASIBILITY, strict_margin=strict_out.strict_margin
        )
    return _finish_scalable(out.witness, METHOD_FEASIBILITY)


# ---------------------------------------------------------------------------
# cofactor machinery


def cofactor_vector(rows) -> np.ndarray:
    """Cofactors of a symbolic first row stacked above ``rows``.

    ``rows`` is (m-1) x m; entry j is (-1)^j times the determinant of
    ``rows`` with column j removed.  The result is orthogonal to every row.
    """
    rows = np.asarray(rows, dtype=float)
    m = rows.shape[1]
    if rows.shape[0] != m - 1:
        raise DimensionMismatchError(f"expected {m - 1} rows, got {rows.shape[0]}")
    out = np.empty(m)
    for j in range(m):
        minor = np.delete(rows, j, axis=1)
        out[j] = (-1.0) ** j * np.linalg.det(minor)
    return out


def _classify_signs(v, rel_tol=1e-10):
    thresh = rel_tol * float(np.abs(v).max(initial=0.0))
    if float(v.min()) >= -thresh:
        return ALL_NONNEG
    if float(v.max()) <= thresh:
        return ALL_NONPOS
    return MIXED


def cofactor_scaling(F):
    """Rank m-1 route: the kernel of the reduced diagram matrix is spanned by
    the cofactor vector, so scalability reduces to its sign pattern.

    Returns (CofactorReport, ScalingResult).
    """
    theta = reduced_diagram_matrix(F).data
    m = F.m
    r = numerics.rank(theta)
    if r != m - 1:
        raise CorankMismatchError(f"cofactor method needs corank 1, measured corank {m - r}")
    rows_idx = independent_rows(theta)
    R = theta[rows_idx]
    cof = cofactor_vector(R)
    sign_class = _classify_signs(cof)
    report = CofactorReport(corank=1, cofactor_vector=cof, sign_class=sign_class)
    if sign_class == MIXED:
        result = ScalingResult(
            verdict=NOT_SCALABLE,
            method=METHOD_COFACTOR,
            certificate_y=_lp_certificate(theta),
        )
        return report, result
    c = np.abs(cof)
    c = c / c.sum()
    result = _finish_scalable(c, METHOD_COFACTOR,
                              strict_margin=float(c.min()))
    return report, result


# ---------------------------------------------------------------------------
# corank-2 parametric route


def cofactor_pencil(R, w1, w2):
    """Cofactor vectors xi_1, xi_2 of the matrices (E; w_k; R) so that the
    parametric cofactors are A(t) = cos(t) xi_1 + sin(t) xi_2."""
    R = np.asarray(R, dtype=float)
    xi1 = cofactor_vector(np.vstack([np.asarray(w1, dtype=float), R]))
    xi2 = cofactor_vector(np.vstack([np.asarray(w2, dtype=float), R]))
    return xi1, xi2


def _completion_vectors(R, m, tol=1e-10):
    """Two standard basis vectors extending the rows of R to rank m, scanning
    indices in ascending order."""
    stacked = [row for row in np.asarray(R, dtype=float)]
    chosen = []
    current_rank = len(stacked)
    for i in range(m):
        e = np.zeros(m)
        e[i] = 1.0
        cand = np.vstack(stacked + [e])
        if numerics.rank(cand, tol) > current_rank:
            stacked.append(e)
            chosen.append(e)
            current_rank += 1
        if len(chosen) == 2:
            return chosen
    raise InternalNumericError("could not complete rows to full rank")


def _intersect_half_circles(pq):
    """Intersect arcs {t : p cos t + q sin t >= 0} (each a closed half-circle)
    over the unit circle.  Returns a list of (lo, hi) intervals in [0, 2*pi],
    possibly with a wrap-around pair merged into an interval ending above 2*pi.
    """
    two_pi = 2.0 * np.pi
    intervals = [(0.0, two_pi)]
    for p, q in pq:
        phi = float(np.arctan2(q, p))
        lo = (phi - 0.5 * np.pi) % two_pi
        hi = lo + np.pi
        if hi <= two_pi:
            arcs = [(lo, hi)]
        else:
            arcs = [(lo, two_pi), (0.0, hi - two_pi)]
        new = []
        for a, b in intervals:
            for c, d in arcs:
                s, e = max(a, c), min(b, d)
                if e >= s - 1e-12:
                    new.append((s, e))
        intervals = new
        if not intervals:
            return []
    # merge a wrap-around pair so widths and midpoints come out right
    starts_at_zero = [iv for iv in intervals if iv[0] <= 1e-12]
    ends_at_full = [iv for iv in intervals if iv[1] >= two_pi - 1e-12]
    if starts_at_zero and ends_at_full and starts_at_zero[0] != ends_at_full[0]:
        a0, b0 = starts_at_zero[0]
        a1, b1 = ends_at_full[0]
        intervals = [iv for iv in intervals
                     if iv not in (starts_at_zero[0], ends_at_full[0])]
        intervals.append((a1, b1 + b0))
    return intervals


def codim2_scaling(F):
    """Rank m-2 route: every kernel vector is cos(t) xi_1 + sin(t) xi_2, and
    scalability holds exactly when some direction t keeps all cofactors
    nonnegative.  Decided by exact angular-interval intersection."""
    theta = reduced_diagram_matrix(F).data
    m = F.m
    r = numerics.rank(theta)
    if r != m - 2:
        raise CorankMismatchError(f"codim-2 method needs corank 2, measured corank {m - r}")
    rows_idx = independent_rows(theta)
    R = theta[rows_idx]
    w1, w2 = _completion_vectors(R, m)
    xi1, xi2 = cofactor_pencil(R, w1, w2)

    scale = max(float(np.abs(xi1).max()), float(np.abs(xi2).max()), 1e-300)
    constraints = []
    for j in range(m):
        p, q = xi1[j], xi2[j]
        if np.hypot(p, q) > 1e-12 * scale:
            constraints.append((p, q))
    intervals = _intersect_half_circles(constraints)
    if not intervals:
        return ScalingResult(
            verdict=NOT_SCALABLE,
            method=METHOD_CODIM2,
            certificate_y=_lp_certificate(theta),
        )
    lo, hi = max(intervals, key=lambda iv: iv[1] - iv[0])
    width = hi - lo
    t = 0.5 * (lo + hi)
    c = np.cos(t) * xi1 + np.sin(t) * xi2
    if float(c.min()) < -1e-7 * scale:
        raise InternalNumericError("codim-2 direction produced a negative weight")
    margin = float(c.min()) / float(np.abs(c).sum()) if width > 0 else 0.0
    return _finish_scalable(c, METHOD_CODIM2, strict_margin=margin)
