"""Correlators, two-site reduced density matrices, concurrence and overlaps.

Site labels are 1-indexed, as in the coupling graphs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import SectorBasis, enumerate_sector
from .eigensolve import DEFAULT_TOL, GroundStateResult, lanczos_ground
from .errors import DegenerateStateError, InvalidArgumentError
from .hamiltonian import assemble, bond_terms
from .lattice import CouplingGraph, perturb_bond

PSD_TOL = 1e-10
_SYSY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]]).real  # sigma_y (x) sigma_y is real


def _vector(state) -> np.ndarray:
    return state.vector if isinstance(state, GroundStateResult) else np.asarray(state)


def _check_pair(basis: SectorBasis, i: int, j: int):
    if i == j:
        raise InvalidArgumentError("correlator needs two distinct sites")
    for s in (i, j):
        if not 1 <= s <= basis.n_sites:
            raise InvalidArgumentError(f"site {s} outside 1..{basis.n_sites}")


def bond_expectation(state, basis: SectorBasis, i: int, j: int, delta: float = 1.0) -> float:
    """<S^x_i S^x_j + S^y_i S^y_j + delta S^z_i S^z_j>."""
    _check_pair(basis, i, j)
    v = _vector(state)
    parallel, rows, cols = bond_terms(basis, i, j)
    p = v * v
    zz = 0.25 * (p[parallel].sum() - p[~parallel].sum())
    flip = 0.5 * np.dot(v[rows], v[cols])
    return float(delta * zz + flip)


def correlator(state, basis: SectorBasis, i: int, j: int) -> float:
    """G_ij = <S_i . S_j>."""
    return bond_expectation(state, basis, i, j, 1.0)


def bond_correlations(state, graph: CouplingGraph, basis: SectorBasis) -> np.ndarray:
    """<S_i . S_j> on every bond of ``graph``, in bond order."""
    return np.array([correlator(state, basis, i, j) for i, j in graph.pairs])


def nn_correlation(state, graph: CouplingGraph, basis: SectorBasis) -> float:
    """F_0 = (1/N) * sum over bonds of <S_i . S_j>."""
    return float(np.sum(bond_correlations(state, graph, basis)) / graph.n_sites)


def two_site_rdm(state, basis: SectorBasis, i: int, j: int) -> np.ndarray:
    """Reduced density matrix of sites (i, j) in the basis (uu, ud, du, dd).

    Only the ud/du coherence can be nonzero for a state of fixed magnetization.
    """
    _check_pair(basis, i, j)
    v = _vector(state)
    bi, bj = basis.bits(i), basis.bits(j)
    slot = 2 * (1 - bi) + (1 - bj)
    rho = np.zeros((4, 4))
    rho[np.diag_indices(4)] = np.bincount(slot, weights=v * v, minlength=4)
    ud = np.flatnonzero((bi == 1) & (bj == 0))
    partner = basis.rank_array(basis.states[ud] ^ ((1 << (i - 1)) | (1 << (j - 1))))
    c = float(np.dot(v[ud], v[partner]))
    rho[1, 2] = rho[2, 1] = c
    return rho


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, U = np.linalg.eigh(rho)
    return (U * np.sqrt(np.clip(w, 0.0, None))) @ U.conj().T


def concurrence_wootters(rho: np.ndarray) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit density matrix.

    The l_k are obtained as singular values of sqrt(rho) sqrt(rho~), which
    avoids taking square roots of tiny eigenvalues of rho rho~.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise InvalidArgumentError("expected a 4x4 density matrix")
    if not np.allclose(rho, rho.conj().T, atol=PSD_TOL):
        raise InvalidArgumentError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > PSD_TOL:
        raise InvalidArgumentError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise InvalidArgumentError("density matrix is not positive semidefinite")
    root = _psd_sqrt(rho)
    root_tilde = _SYSY @ root.conj() @ _SYSY
    lam = np.linalg.svd(root @ root_tilde, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1:].sum()))


def concurrence_isotropic(G: float) -> float:
    """Concurrence of an SU(2)-invariant pair from G = <S_i . S_j>: max(0, -(4G + 1)/2)."""
    if not -0.75 - 1e-12 <= G <= 0.25 + 1e-12:
        raise InvalidArgumentError(f"G={G} outside the physical range [-3/4, 1/4]")
    return max(0.0, -(4.0 * G + 1.0) / 2.0)


def aggregate_concurrence(F0: float, n_bonds: int, n_sites: int) -> float:
    """C_g = -(1/2) [4 F_0 + M/N], the bond-averaged isotropic concurrence."""
    return -0.5 * (4.0 * F0 + n_bonds / n_sites)


def overlap(a, b) -> float:
    """|<a|b>| for two real or complex state vectors."""
    va, vb = _vector(a), _vector(b)
    if va.shape != vb.shape:
        raise InvalidArgumentError(f"dimension mismatch {va.shape} vs {vb.shape}")
    return float(min(1.0, abs(np.vdot(va, vb))))


def total_spin_squared(state, basis: SectorBasis) -> float:
    """<S_total^2> = 3N/4 + 2 * sum_{i<j} G_ij."""
    N = basis.n_sites
    s = 0.75 * N
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            s += 2.0 * correlator(state, basis, i, j)
    return s


@dataclass
class CorrelationReport:
    G: np.ndarray
    F0: float
    C: np.ndarray
    C_g: float
    degenerate: bool = False

    @property
    def mean_bond_concurrence(self) -> float:
        """Plain average of the per-bond concurrences."""
        return float(np.mean(self.C))


def correlation_report(state, graph: CouplingGraph, basis: SectorBasis) -> CorrelationReport:
    """Per-bond correlators and Wootters concurrences, F_0 and C_g."""
    G = bond_correlations(state, graph, basis)
    F0 = float(G.sum() / graph.n_sites)
    C = np.array([concurrence_wootters(two_site_rdm(state, basis, i, j)) for i, j in graph.pairs])
    degenerate = state.degenerate if isinstance(state, GroundStateResult) else False
    return CorrelationReport(G, F0, C, aggregate_concurrence(F0, graph.n_bonds, graph.n_sites), degenerate)


def rayleigh_quotient(op, v) -> np.longdouble:
    """<v|H|v> / <v|v> accumulated in extended precision.

    Finite differences of ground energies at eps ~ 1e-4 lose about four
    digits; double-precision round-off (~1e-15) would otherwise swamp the
    O(eps^2) truncation term.
    """
    m = op.matrix.astype(np.longdouble)
    x = np.asarray(v, dtype=np.longdouble)
    return np.dot(x, m @ x) / np.dot(x, x)


def ground_state(graph: CouplingGraph, basis: SectorBasis | None = None, **solver) -> GroundStateResult:
    """Assemble and solve in one step; ``basis`` defaults to the S^z = 0 sector."""
    basis = basis or enumerate_sector(graph.n_sites)
    return lanczos_ground(assemble(graph, basis), **solver)


@dataclass
class HellmannFeynmanCheck:
    numeric: float
    expectation: float
    discrepancy: float


def hellmann_feynman_check(
    graph: CouplingGraph,
    basis: SectorBasis,
    bond: int,
    eps: float,
    tol: float = 1e-12,
    seed: int = 0,
) -> HellmannFeynmanCheck:
    """Compare a central-difference dE_0/dJ_kl with the bond expectation value.

    ``bond`` is 1-indexed.  The bond operator carries the graph's anisotropy,
    so for Delta = 1 the expectation is <S_k . S_l>.
    """
    if eps <= 0:
        raise InvalidArgumentError("eps must be positive")
    g0 = ground_state(graph, basis, tol=tol, seed=seed, probe_degeneracy=True)
    if g0.degenerate:
        raise DegenerateStateError("ground state is (nearly) degenerate; dE/dJ is ill-defined")
    energies, strengths = [], []
    for shift in (eps, -eps):
        g = perturb_bond(graph, bond, shift)
        op = assemble(g, basis)
        gs = lanczos_ground(op, tol=tol, seed=seed)
        energies.append(rayleigh_quotient(op, gs.vector))
        strengths.append(np.longdouble(g.bonds[bond - 1][2]))
    # divide by the strengths actually used, not by 2 * eps
    numeric = float((energies[0] - energies[1]) / (strengths[0] - strengths[1]))
    k, l, _ = graph.bonds[bond - 1]
    expect = bond_expectation(g0, basis, k, l, graph.anisotropy)
    return HellmannFeynmanCheck(numeric, expect, abs(numeric - expect))


def nn_correlation_gradient(
    graph: CouplingGraph,
    basis: SectorBasis,
    eps: float,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> np.ndarray:
    """Central-difference dF_0/dJ_kl for every bond of ``graph``."""
    if eps <= 0:
        raise InvalidArgumentError("eps must be positive")
    grad = np.zeros(graph.n_bonds)
    for b in range(1, graph.n_bonds + 1):
        F = []
        for shift in (eps, -eps):
            g = perturb_bond(graph, b, shift)
            gs = ground_state(g, basis, tol=tol, seed=seed)
            if gs.degenerate:
                raise DegenerateStateError(f"degenerate ground state after shifting bond {b}")
            F.append(nn_correlation(gs, g, basis))
        grad[b - 1] = (F[0] - F[1]) / (2 * eps)
    return grad


def stationarity_scan(
    graph: CouplingGraph,
    basis: SectorBasis | None = None,
    eps: float = 1e-3,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> float:
    """max_kl |dF_0/dJ_kl| at a uniform-coupling point (zero in exact arithmetic)."""
    if not graph.is_uniform:
        raise InvalidArgumentError("stationarity only holds at uniform couplings")
    basis = basis or enumerate_sector(graph.n_sites)
    g0 = ground_state(graph, basis, tol=tol, seed=seed, probe_degeneracy=True)
    if g0.degenerate:
        raise DegenerateStateError("uniform ground state is (nearly) degenerate")
    return float(np.max(np.abs(nn_correlation_gradient(graph, basis, eps, tol, seed))))
