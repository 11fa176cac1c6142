import functools

import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]]) / 2
SY = np.array([[0, -1j], [1j, 0]]) / 2
SZ = np.array([[1, 0], [0, -1]]) / 2  # local basis (up, down)

_criterion_lines = []


def site_op(op, site, n_sites):
    """op acting on 1-indexed ``site`` in the full 2^N space (site 1 = leftmost factor)."""
    mats = [np.eye(2)] * n_sites
    mats = list(mats)
    mats[site - 1] = op
    return functools.reduce(np.kron, mats)


def kron_hamiltonian(graph):
    """Dense full-space Hamiltonian from Kronecker products; independent of the bit basis code."""
    N = graph.n_sites
    H = np.zeros((2**N, 2**N), dtype=complex)
    for i, j, J in graph.bonds:
        for op, w in ((SX, 1.0), (SY, 1.0), (SZ, graph.anisotropy)):
            H += J * w * site_op(op, i, N) @ site_op(op, j, N)
    return H


def sector_indices(basis):
    """Full-space (Kronecker) index of every sector configuration, in sector order."""
    N = basis.n_sites
    out = []
    for s in basis.states:
        idx = 0
        for k in range(1, N + 1):
            up = (int(s) >> (k - 1)) & 1
            idx = 2 * idx + (1 - up)
        out.append(idx)
    return np.array(out)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the terminal summary."""
    def record(label, ok, detail=""):
        _criterion_lines.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
