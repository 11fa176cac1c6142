"""Exact diagonalization of spin-1/2 Heisenberg and XY rings with engineered couplings."""
from .basis import SectorBasis, enumerate_sector
from .eigensolve import GroundStateResult, dense_spectrum, lanczos_ground
from .errors import (
    ConvergenceError,
    DegenerateStateError,
    InvalidArgumentError,
    SizeLimitError,
    UnsupportedRegimeError,
)
from .hamiltonian import SparseOperator, assemble
from .lattice import CouplingGraph, ModulationProfile, build_chain, build_cubic, build_ring, perturb_bond
from .observables import (
    concurrence_isotropic,
    concurrence_wootters,
    correlation_report,
    correlator,
    ground_state,
    hellmann_feynman_check,
    nn_correlation,
    overlap,
    stationarity_scan,
    two_site_rdm,
)

__version__ = "0.1.0"
