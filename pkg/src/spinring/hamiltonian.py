"""Sector-restricted Heisenberg / XXZ Hamiltonian as a sparse symmetric matrix.

In the S^z product basis a bond (i, j) of strength J contributes
J * Delta * s_i * s_j on the diagonal (s = +-1/2) and J / 2 between two
configurations that differ by swapping an antiparallel pair on (i, j).
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sps

from .basis import SectorBasis
from .errors import InvalidArgumentError
from .lattice import CouplingGraph


class SparseOperator:
    """Real symmetric operator on a SectorBasis, stored as CSR."""

    def __init__(self, matrix: sps.csr_array, basis: SectorBasis):
        self.matrix = matrix
        self.basis = basis

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Return H @ v."""
        v = np.asarray(v)
        if v.shape != (self.dimension,):
            raise InvalidArgumentError(f"vector of shape {v.shape} does not match dimension {self.dimension}")
        return self.matrix @ v

    __matmul__ = apply

    def expectation(self, v: np.ndarray) -> float:
        return float(np.dot(v, self.apply(v)))

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def asymmetry(self) -> float:
        """Largest |H_ab - H_ba| over stored entries."""
        d = self.matrix - self.matrix.T
        return float(abs(d).max()) if d.nnz else 0.0


def bond_terms(basis: SectorBasis, i: int, j: int):
    """Diagonal sign and flip map of the bond (i, j) over ``basis``.

    Returns ``(parallel, rows, cols)``: a boolean mask of states whose spins
    on i and j are parallel, and the index pairs connected by the exchange
    flip (row -> col).
    """
    bi = basis.bits(i)
    bj = basis.bits(j)
    parallel = bi == bj
    rows = np.flatnonzero(~parallel)
    flipped = basis.states[rows] ^ ((1 << (i - 1)) | (1 << (j - 1)))
    cols = basis.rank_array(flipped)
    return parallel, rows, cols


def assemble(graph: CouplingGraph, basis: SectorBasis) -> SparseOperator:
    """Build H = sum_bonds J_ij (S^x S^x + S^y S^y + Delta S^z S^z) in ``basis``."""
    if graph.n_sites != basis.n_sites:
        raise InvalidArgumentError(
            f"graph has {graph.n_sites} sites but basis has {basis.n_sites}"
        )
    dim = basis.dimension
    delta = graph.anisotropy
    diag = np.zeros(dim)
    rows, cols, vals = [np.arange(dim, dtype=np.int32)], [np.arange(dim, dtype=np.int32)], []
    for i, j, J in graph.bonds:
        parallel, r, c = bond_terms(basis, i, j)
        if delta != 0.0 and J != 0.0:
            diag += np.where(parallel, 0.25, -0.25) * (J * delta)
        if J != 0.0 and len(r):
            rows.append(r.astype(np.int32))
            cols.append(c.astype(np.int32))
            vals.append(np.full(len(r), 0.5 * J))
    vals.insert(0, diag)
    m = sps.coo_array(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    ).tocsr()
    m.sort_indices()
    return SparseOperator(m, basis)
