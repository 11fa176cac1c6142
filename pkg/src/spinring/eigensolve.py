"""Lowest eigenpair by Lanczos with full reorthogonalization, plus a dense oracle.

Full reorthogonalization keeps every Krylov vector.  When that basis would
not fit in KRYLOV_BUDGET bytes (N = 22, 24) the solver switches to ARPACK's
implicitly restarted Lanczos with a bounded basis and the same seeded start.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .errors import ConvergenceError, InvalidArgumentError, SizeLimitError
from .hamiltonian import SparseOperator

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
DENSE_LIMIT = 4096
DEGENERACY_GAP = 1e-8
KRYLOV_BUDGET = 1.5e9  # bytes of stored Krylov vectors before switching to restarts
RESTART_BASIS = 40
METHODS = ("auto", "full", "restarted")


@dataclass
class GroundStateResult:
    energy: float
    vector: np.ndarray
    residual: float
    iterations: int
    degenerate: bool = False
    energy_history: list[float] = field(default_factory=list, repr=False)
    ritz_gap: float = np.inf
    phase_fixed: bool = True

    @property
    def dimension(self) -> int:
        return len(self.vector)


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Flip the global sign so that the largest-magnitude amplitude is positive."""
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def _finish(op, y, Q, history, iterations, gap):
    v = np.zeros(op.dimension)
    for coeff, q in zip(y, Q):
        v += coeff * q
    v /= np.linalg.norm(v)
    v = fix_phase(v)
    hv = op.apply(v)
    energy = float(np.dot(v, hv))
    residual = float(np.linalg.norm(hv - energy * v))
    return GroundStateResult(
        energy=energy,
        vector=v,
        residual=residual,
        iterations=iterations,
        degenerate=bool(gap < DEGENERACY_GAP),
        energy_history=history,
        ritz_gap=float(gap),
    )


def _orthogonalize(r, Q):
    # Two passes of classical Gram-Schmidt against every stored vector.
    for _ in range(2):
        for q in Q:
            r -= np.dot(q, r) * q
    return r


def _lanczos(op, tol, max_iter, q, deflate=()):
    """Core loop from start vector ``q``; every Krylov vector is kept orthogonal to ``deflate``."""
    n = op.dimension
    deflate = list(deflate)
    q = _orthogonalize(q, deflate)
    q /= np.linalg.norm(q)
    Q = [q]
    alphas, betas, history = [], [], []
    scale = 1.0
    best = None
    for it in range(1, min(max_iter, n - len(deflate)) + 1):
        w = op.apply(Q[-1])
        alpha = float(np.dot(Q[-1], w))
        alphas.append(alpha)
        w -= alpha * Q[-1]
        if len(Q) > 1:
            w -= betas[-1] * Q[-2]
        w = _orthogonalize(w, deflate + Q)
        beta = float(np.linalg.norm(w))
        scale = max(scale, abs(alpha), beta)

        theta, Y = eigh_tridiagonal(np.array(alphas), np.array(betas), select="i", select_range=(0, min(1, it - 1)))
        history.append(float(theta[0]))
        gap = float(theta[1] - theta[0]) if len(theta) > 1 else np.inf
        estimate = beta * abs(Y[-1, 0])
        exhausted = beta <= 1e-14 * scale or it == n - len(deflate)

        if estimate <= 0.1 * tol or exhausted or it == max_iter:
            best = _finish(op, Y[:, 0], Q, history, it, gap)
            if best.residual <= tol:
                return best, True
            if exhausted:
                break
        betas.append(beta)
        if not exhausted:
            Q.append(w / beta)

    if best is None:
        best = _finish(op, Y[:, 0], Q[: len(alphas)], history, len(alphas), gap)
    return best, False


def lanczos_ground(
    op: SparseOperator,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    probe_degeneracy: bool = False,
    method: str = "auto",
) -> GroundStateResult:
    """Ground state of ``op`` to residual ``||Hv - Ev|| <= tol``.

    The start vector is drawn from ``numpy.random.default_rng(seed)``, so the
    result is reproducible for a given seed.  Raises ConvergenceError (with the
    best estimate attached) if ``max_iter`` Lanczos steps are not enough.

    The degeneracy flag normally comes from the gap between the two lowest
    Ritz values.  A single Krylov sequence holds only one vector of an exactly
    degenerate eigenspace, so that gap cannot reveal an exact degeneracy.
    ``probe_degeneracy=True`` pays for a second run in the orthogonal
    complement of the ground vector and uses the true E_1 - E_0 instead.

    ``method="restarted"`` (chosen by "auto" when max_iter stored vectors
    would exceed KRYLOV_BUDGET) bounds memory to RESTART_BASIS vectors.  There
    ``max_iter`` caps restart cycles, the degeneracy flag uses the two lowest
    converged eigenvalues, and no energy history is recorded.
    """
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    if method not in METHODS:
        raise InvalidArgumentError(f"method must be one of {METHODS}")
    n = op.dimension
    if n < 1:
        raise InvalidArgumentError("empty operator")
    if n == 1:
        e = float(op.matrix[0, 0])
        return GroundStateResult(e, np.ones(1), 0.0, 0, energy_history=[e])

    rng = np.random.default_rng(seed)
    if method == "auto":
        method = "restarted" if 8.0 * n * min(max_iter, n) > KRYLOV_BUDGET else "full"
    if method == "restarted" and n > RESTART_BASIS + 2:
        return _restarted(op, tol, max_iter, rng.standard_normal(n))
    best, ok = _lanczos(op, tol, max_iter, rng.standard_normal(n))
    if not ok:
        raise ConvergenceError(
            f"Lanczos residual {best.residual:.3e} > tol {tol:.1e} after {best.iterations} iterations",
            best,
        )
    if probe_degeneracy:
        # the excited estimate is an upper bound on E_1 even when not converged
        excited, _ = _lanczos(op, tol, max_iter, rng.standard_normal(n), deflate=[best.vector])
        best.ritz_gap = min(best.ritz_gap, excited.energy - best.energy)
        best.degenerate = bool(best.ritz_gap < DEGENERACY_GAP)
    return best


def _restarted(op, tol, max_iter, v0):
    n = op.dimension
    calls = [0]

    def matvec(x):
        calls[0] += 1
        return op.apply(np.ravel(x))

    A = LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    # ARPACK stops on ||r|| <= tol' |theta|; the row-sum norm bounds |theta|
    norm_bound = float(np.abs(op.matrix).sum(axis=1).max()) or 1.0
    converged = True
    start = v0
    for _ in range(2):
        try:
            w, V = eigsh(A, k=2, which="SA", v0=start, ncv=RESTART_BASIS, maxiter=max_iter,
                         tol=0.1 * tol / norm_bound)
        except ArpackNoConvergence as exc:
            w, V, converged = exc.eigenvalues, exc.eigenvectors, False
        if len(w) == 0:
            w, V = np.array([np.inf]), (start / np.linalg.norm(start))[:, None]
        order = np.argsort(w)
        v = fix_phase(V[:, order[0]] / np.linalg.norm(V[:, order[0]]))
        hv = op.apply(v)
        energy = float(np.dot(v, hv))
        residual = float(np.linalg.norm(hv - energy * v))
        gap = float(w[order[1]] - w[order[0]]) if len(w) > 1 else np.inf
        best = GroundStateResult(energy, v, residual, calls[0], bool(gap < DEGENERACY_GAP), [], gap)
        if residual <= tol or not converged:
            break
        start = v  # one polishing pass from the converged vector
    if residual > tol:
        raise ConvergenceError(
            f"restarted Lanczos residual {residual:.3e} > tol {tol:.1e} after {calls[0]} products", best)
    return best


@dataclass
class Spectrum:
    values: np.ndarray
    vectors: np.ndarray
    op: SparseOperator | None = None

    def ground(self) -> GroundStateResult:
        v = fix_phase(self.vectors[:, 0].copy())
        gap = self.values[1] - self.values[0] if len(self.values) > 1 else np.inf
        residual = 0.0
        if self.op is not None:
            residual = float(np.linalg.norm(self.op.apply(v) - self.values[0] * v))
        return GroundStateResult(
            energy=float(self.values[0]),
            vector=v,
            residual=residual,
            iterations=0,
            degenerate=bool(gap < DEGENERACY_GAP),
            ritz_gap=float(gap),
        )


def dense_spectrum(op: SparseOperator) -> Spectrum:
    """Full spectrum via LAPACK; only for dimension <= 4096."""
    if op.dimension > DENSE_LIMIT:
        raise SizeLimitError(f"dimension {op.dimension} exceeds dense limit {DENSE_LIMIT}")
    w, V = np.linalg.eigh(op.to_dense())
    return Spectrum(w, V, op)
