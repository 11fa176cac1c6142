"""Jordan-Wigner treatment of the XY (Delta = 0) ring.

The XY ring maps onto spinless fermions hopping with amplitude t_i = J_i / 2.
The closing bond (N, 1) picks up the sign -(-1)^{N_f}: it is periodic for an
odd fermion number and antiperiodic for an even one.  At half filling this
means periodic for odd N/2 and antiperiodic for even N/2.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .basis import enumerate_sector
from .eigensolve import dense_spectrum, lanczos_ground
from .errors import InvalidArgumentError, UnsupportedRegimeError
from .hamiltonian import assemble
from .lattice import CouplingGraph, ModulationProfile, ZeroCouplingWarning, build_ring, cos_pi_frac
from .observables import overlap

TIE_TOL = 1e-12


@dataclass(frozen=True)
class FreeFermionModel:
    n_sites: int
    hopping: np.ndarray
    periodic: bool

    @property
    def is_translation_invariant(self) -> bool:
        return bool(np.all(self.hopping == self.hopping[0]))

    def matrix(self) -> np.ndarray:
        """N x N single-particle Hamiltonian in real space."""
        N = self.n_sites
        h = np.zeros((N, N))
        for i in range(N - 1):
            h[i, i + 1] = h[i + 1, i] = self.hopping[i]
        sign = 1.0 if self.periodic else -1.0
        h[N - 1, 0] += sign * self.hopping[N - 1]
        h[0, N - 1] += sign * self.hopping[N - 1]
        return h

    def momenta(self) -> np.ndarray:
        """Allowed k in (-pi, pi]: 2 pi n / N (periodic) or (2n + 1) pi / N (antiperiodic)."""
        N = self.n_sites
        if self.periodic:
            n = np.arange(-(N // 2) + 1, N // 2 + 1) if N % 2 == 0 else np.arange(-(N // 2), N // 2 + 1)
            return 2 * np.pi * n / N
        n = np.arange(-(N // 2), (N + 1) // 2)
        return (2 * n + 1) * np.pi / N

    def modes(self) -> tuple[np.ndarray, np.ndarray | None]:
        """Single-particle energies, ascending, with their momenta when defined.

        Ties are ordered by smallest |k| first, then positive k.
        """
        if self.is_translation_invariant:
            k = self.momenta()
            e = 2.0 * self.hopping[0] * np.cos(k)
            order = np.lexsort((-np.sign(k), np.abs(k), np.round(e / TIE_TOL) * TIE_TOL))
            return e[order], k[order]
        return np.linalg.eigvalsh(self.matrix()), None


def to_free_fermion(graph: CouplingGraph, n_fermions: int | None = None) -> FreeFermionModel:
    """Fermionic hopping model of an XY ring; boundary set by the fermion parity.

    ``n_fermions`` defaults to half filling.
    """
    if graph.anisotropy != 0.0:
        raise InvalidArgumentError("Jordan-Wigner free fermions need Delta = 0")
    if not graph.is_ring():
        raise InvalidArgumentError("graph is not a ring")
    N = graph.n_sites
    nf = N // 2 if n_fermions is None else n_fermions
    return FreeFermionModel(N, graph.strengths / 2.0, periodic=bool(nf % 2))


@dataclass
class FillingResult:
    energy: float
    occupied: np.ndarray
    shell_degenerate: bool


def single_particle_ground(model: FreeFermionModel, n_fermions: int) -> FillingResult:
    """Fill the ``n_fermions`` lowest modes.

    ``occupied`` holds momenta for translation-invariant models and mode
    energies otherwise.  ``shell_degenerate`` flags a filling that splits a
    degenerate shell, where the choice of occupied modes is convention.
    """
    if not 0 <= n_fermions <= model.n_sites:
        raise InvalidArgumentError("0 <= n_fermions <= N required")
    e, k = model.modes()
    split = 0 < n_fermions < len(e) and abs(e[n_fermions] - e[n_fermions - 1]) < TIE_TOL
    occ = k[:n_fermions] if k is not None else e[:n_fermions]
    return FillingResult(float(e[:n_fermions].sum()), occ, bool(split))


def _require_odd_half(N: int):
    if N % 2 or (N // 2) % 2 == 0:
        raise UnsupportedRegimeError(f"N={N}: the k-space construction needs N/2 odd")


def fermi_point(N: int) -> float:
    return math.pi / 2 - math.pi / N


@dataclass(frozen=True)
class KSpaceHopping:
    """Momentum-space form of the cosine-modulated hopping.

    ``amplitude[m]`` is the coefficient of a_k^dagger a_{k + 2 pi / N} for
    k = momenta[m]; the Hermitian conjugate supplies the reverse hops.
    """

    n_sites: int
    J: float
    momenta: np.ndarray
    amplitude: np.ndarray
    k_fermi: float

    def matrix(self) -> np.ndarray:
        """N x N single-particle matrix in the momentum basis (ordered as ``momenta``)."""
        N = self.n_sites
        h = np.zeros((N, N), dtype=complex)
        n_index = np.rint(self.momenta * N / (2 * np.pi)).astype(int) % N
        where = {n: m for m, n in enumerate(n_index)}
        for m, n in enumerate(n_index):
            target = where[(n + 1) % N]
            h[m, target] += self.amplitude[m]
            h[target, m] += np.conj(self.amplitude[m])
        return h

    def inner_region(self) -> np.ndarray:
        """Mask of momenta with |k| <= k_f."""
        return np.abs(self.momenta) <= self.k_fermi + 1e-12


def kspace_hadd(N: int, J: float = 1.0) -> KSpaceHopping:
    """(J/2) e^{-i pi/N} cos(k + pi/N) hopping from k to k + 2 pi/N.

    Momenta are 2 pi n / N with n = -(N/2 - 1) .. N/2.  The cosine is
    evaluated on exact multiples of pi/N, so it vanishes exactly at k = +-k_f.
    """
    _require_odd_half(N)
    n = np.arange(-(N // 2) + 1, N // 2 + 1)
    k = 2 * np.pi * n / N
    phase = np.exp(-1j * np.pi / N)
    amp = np.array([0.5 * J * cos_pi_frac(2 * m + 1, N) for m in n]) * phase
    return KSpaceHopping(N, J, k, amp, fermi_point(N))


def fourier_matrix(N: int, momenta: np.ndarray) -> np.ndarray:
    """U[l, m] = exp(i k_m l) / sqrt(N) with sites l = 1..N, so a_l^dagger = sum_m U[l, m] a_k^dagger."""
    l = np.arange(1, N + 1)[:, None]
    return np.exp(1j * momenta[None, :] * l) / math.sqrt(N)


def realspace_hadd(N: int, J: float = 1.0) -> np.ndarray:
    """Periodic real-space hopping matrix with t_i = (J/2) cos(2 pi i / N) on bond (i, i+1)."""
    h = np.zeros((N, N))
    for i in range(1, N + 1):
        t = 0.5 * J * cos_pi_frac(2 * i, N)
        a, b = i - 1, i % N
        h[a, b] += t
        h[b, a] += t
    return h


def fourier_roundtrip_error(N: int, J: float = 1.0) -> float:
    """Largest entrywise deviation between the back-transformed k-space matrix and the real-space hopping."""
    hk = kspace_hadd(N, J)
    U = fourier_matrix(N, hk.momenta)
    # a_l^dagger = sum_k U[l,k] a_k^dagger  =>  h_real = conj(U) h_k U^T
    back = U.conj() @ hk.matrix() @ U.T
    return float(np.max(np.abs(back - realspace_hadd(N, J))))


def verify_conserved_number(N: int, J: float = 1.0) -> float:
    """Frobenius norm of [n_inner, h_add] in the single-particle momentum basis."""
    hk = kspace_hadd(N, J)
    n_op = np.diag(hk.inner_region().astype(float))
    h = hk.matrix()
    return float(np.linalg.norm(n_op @ h - h @ n_op))


@dataclass
class ZeroModeReport:
    n_sites: int
    hadd_on_ground: float
    hadd_on_max: float
    hadd_on_ferro_up: float
    hadd_on_ferro_down: float
    ground_overlap: float
    ground_energy_uniform: float
    ground_energy_modulated: float
    free_fermion_energy: float

    def passed(self, tol: float = 1e-10) -> bool:
        return (
            max(self.hadd_on_ground, self.hadd_on_max, self.hadd_on_ferro_up, self.hadd_on_ferro_down) <= tol
            and self.ground_overlap >= 1 - tol
            and abs(self.free_fermion_energy - self.ground_energy_uniform) <= tol
        )


def verify_zero_modes(N: int, J: float = 1.0, seed: int = 0) -> ZeroModeReport:
    """Many-body check, in the spin basis, of the four H_add zero modes.

    H_add (bond strengths J cos(2 pi i / N), Delta = 0) is applied to the
    ground and highest states of the uniform XY ring in the S^z = 0 sector and
    to both saturated ferromagnets.  Also compares the ground state of
    H0 + H_add (strengths 2 J cos^2(pi i / N)) with the uniform one.
    """
    _require_odd_half(N)
    if N > 14:
        raise UnsupportedRegimeError("many-body zero-mode check is limited to N <= 14")
    basis = enumerate_sector(N)
    h0 = assemble(build_ring(N, ModulationProfile.uniform(J), delta=0.0), basis)
    with warnings.catch_warnings():
        # H_add alone has sign-changing strengths, and H0 + H_add has a zero bond.
        warnings.simplefilter("ignore", ZeroCouplingWarning)
        hadd_graph = build_ring(N, ModulationProfile.cosine(0.0, J, 1), delta=0.0)
        total = build_ring(N, ModulationProfile.cosine(J, J, 1), delta=0.0)
    hadd = assemble(hadd_graph, basis)
    spec = dense_spectrum(h0)
    ground = spec.ground()
    top = spec.vectors[:, -1]
    full = lanczos_ground(assemble(total, basis), seed=seed)

    ferro = []
    for n_up in (N, 0):
        b = enumerate_sector(N, n_up)
        op = assemble(hadd_graph, b)
        ferro.append(float(np.linalg.norm(op.apply(np.ones(1)))))

    ff = single_particle_ground(to_free_fermion(build_ring(N, ModulationProfile.uniform(J), 0.0)), N // 2)
    return ZeroModeReport(
        n_sites=N,
        hadd_on_ground=float(np.linalg.norm(hadd.apply(ground.vector))),
        hadd_on_max=float(np.linalg.norm(hadd.apply(top))),
        hadd_on_ferro_up=ferro[0],
        hadd_on_ferro_down=ferro[1],
        ground_overlap=overlap(full, ground),
        ground_energy_uniform=ground.energy,
        ground_energy_modulated=full.energy,
        free_fermion_energy=ff.energy,
    )
