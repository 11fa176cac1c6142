"""The invariant suite behind ``spinring properties``."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..basis import enumerate_sector
from ..eigensolve import dense_spectrum, lanczos_ground
from ..freefermion import (
    fourier_roundtrip_error,
    kspace_hadd,
    single_particle_ground,
    to_free_fermion,
    verify_conserved_number,
    verify_zero_modes,
)
from ..hamiltonian import assemble
from ..lattice import ModulationProfile, build_cubic, build_ring
from ..observables import (
    aggregate_concurrence,
    concurrence_isotropic,
    concurrence_wootters,
    correlator,
    hellmann_feynman_check,
    nn_correlation,
    overlap,
    stationarity_scan,
    total_spin_squared,
    two_site_rdm,
)
from .runners import ResultTable


@dataclass
class PropertyReport:
    results: list[tuple[str, bool, str]] = field(default_factory=list)
    runtime: float = 0.0

    def record(self, name: str, passed: bool, detail: str = ""):
        self.results.append((name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.results if not ok]

    def to_table(self) -> ResultTable:
        t = ResultTable("properties", ["check", "passed", "detail"])
        t.rows = [{"check": n, "passed": ok, "detail": d} for n, ok, d in self.results]
        return t


def oracle_graphs(quick: bool):
    ring_sizes = (4, 6, 8, 10, 12) if quick else (4, 6, 8, 10, 12, 14)
    graphs = {f"ring N={N}": build_ring(N) for N in ring_sizes}
    graphs["alternating ring N=10 J=0.5"] = build_ring(10, ModulationProfile.alternating(0.5))
    graphs["cosine ring N=12 A=0.95"] = build_ring(12, ModulationProfile.cosine(1.0, 0.95, 1))
    graphs["XY ring N=10"] = build_ring(10, delta=0.0)
    graphs["ladder 2x4 periodic"] = build_cubic([2, 4], periodic=True)
    graphs["ladder 2x3 open"] = build_cubic([2, 3])
    graphs["cube 2x2x2"] = build_cubic([2, 2, 2])
    return graphs


def random_graphs(count: int, seed: int, max_sites: int = 12):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        N = int(rng.choice([s for s in (6, 8, 10, 12) if s <= max_sites]))
        strengths = rng.uniform(0.5, 1.5, N)
        out.append((build_ring(N, ModulationProfile.custom(strengths)), int(rng.integers(1, N + 1))))
    return out


def run_properties(
    quick: bool = False,
    seed: int = 0,
    concurrence: Callable[[np.ndarray], float] = concurrence_wootters,
) -> PropertyReport:
    """Run every invariant check; ``concurrence`` may be swapped to test the suite itself."""
    rep = PropertyReport()
    t0 = time.perf_counter()
    n_max = 12 if quick else 14

    for N in range(2, 13, 2):
        b = enumerate_sector(N)
        ok = all(b.rank(b.unrank(k)) == k for k in range(b.dimension)) and b.dimension == math.comb(N, N // 2)
        ok &= bool(np.array_equal(b.rank_array(b.states), np.arange(b.dimension)))
        rep.record(f"rank/unrank round trip N={N}", ok, f"dim={b.dimension}")

    for name, g in oracle_graphs(quick).items():
        basis = enumerate_sector(g.n_sites)
        op = assemble(g, basis)
        lz = lanczos_ground(op, seed=seed)
        dn = dense_spectrum(op).ground()
        dE = abs(lz.energy - dn.energy)
        ov = overlap(lz, dn)
        rep.record(f"lanczos vs dense: {name}", dE <= 1e-10 and ov >= 1 - 1e-9, f"dE={dE:.2e} overlap={ov:.15f}")
        rep.record(f"hamiltonian symmetric: {name}", op.asymmetry() == 0.0, f"dim={op.dimension}")
        hist = np.array(lz.energy_history)
        rep.record(f"lanczos energies non-increasing: {name}", bool(np.all(np.diff(hist) <= 1e-12)), "")

    for N in range(4, n_max + 1, 2):
        g = build_ring(N)
        basis = enumerate_sector(N)
        gs = lanczos_ground(assemble(g, basis), seed=seed)
        s2 = total_spin_squared(gs, basis)
        rep.record(f"ground state has S=0: ring N={N}", abs(s2) <= 1e-8, f"<S^2>={s2:.2e}")

    for g in (build_ring(8), build_ring(12, ModulationProfile.cosine(1.0, 0.5, 1)), build_cubic([2, 2, 2])):
        full = enumerate_sector(g.n_sites, g.n_sites)
        v = assemble(g, full).apply(np.ones(1))[0]
        expected = 0.25 * g.anisotropy * g.strengths.sum()
        rep.record(f"ferromagnet eigenvalue N={g.n_sites}, M={g.n_bonds}", abs(v - expected) <= 1e-12,
                   f"{v} vs {expected}")

    equiv_sizes = (4, 6, 8, 10, 12)
    for N in equiv_sizes:
        for label, prof in (("uniform", ModulationProfile.uniform()),
                            ("cosine A=0.5", ModulationProfile.cosine(1.0, 0.5, 1))):
            g = build_ring(N, prof)
            basis = enumerate_sector(N)
            gs = lanczos_ground(assemble(g, basis), seed=seed)
            worst = 0.0
            for i in range(1, N + 1):
                for j in range(i + 1, N + 1):
                    c_w = concurrence(two_site_rdm(gs, basis, i, j))
                    c_i = concurrence_isotropic(correlator(gs, basis, i, j))
                    worst = max(worst, abs(c_w - c_i))
            rep.record(f"wootters == isotropic, all pairs: {label} N={N}", worst <= 1e-10, f"max diff={worst:.2e}")
        g = build_ring(N)
        gs = lanczos_ground(assemble(g, basis), seed=seed)
        F0 = nn_correlation(gs, g, basis)
        cg = aggregate_concurrence(F0, g.n_bonds, g.n_sites)
        cb = concurrence(two_site_rdm(gs, basis, 1, 2))
        rep.record(f"aggregate C_g == bond C: ring N={N}", abs(cg - cb) <= 1e-10, f"C_g={cg:.12f} C_12={cb:.12f}")

    stationary = {"ring N=8": build_ring(8), "ring N=10": build_ring(10),
                  "ladder 2x4 periodic": build_cubic([2, 4], True), "cube 2x2x2": build_cubic([2, 2, 2])}
    for name, g in stationary.items():
        m = stationarity_scan(g, eps=1e-3, seed=seed)
        rep.record(f"dF0/dJ = 0 at uniform point: {name}", m <= 1e-5, f"max={m:.2e}")

    for k, (g, bond) in enumerate(random_graphs(5, seed)):
        basis = enumerate_sector(g.n_sites)
        a = hellmann_feynman_check(g, basis, bond, 1e-4, seed=seed)
        b = hellmann_feynman_check(g, basis, bond, 5e-5, seed=seed)
        ratio = a.discrepancy / b.discrepancy if b.discrepancy else math.inf
        rep.record(f"hellmann-feynman random graph {k} (N={g.n_sites}, bond {bond})",
                   a.discrepancy <= 1e-6 and 3.5 <= ratio <= 4.5,
                   f"disc={a.discrepancy:.2e} ratio={ratio:.2f}")

    xy_sizes = (6, 10) if quick else (6, 10, 14)
    for N in xy_sizes:
        hk = kspace_hadd(N)
        kf_zero = hk.amplitude[np.argmin(np.abs(hk.momenta - hk.k_fermi))] == 0.0
        rep.record(f"XY: cos(k_f + pi/N) == 0, N={N}", kf_zero, "")
        c = verify_conserved_number(N)
        rep.record(f"XY: [n, h_add] = 0, N={N}", c <= 1e-12, f"norm={c:.1e}")
        f = fourier_roundtrip_error(N)
        rep.record(f"XY: k-space h_add round trip, N={N}", f <= 1e-12, f"max err={f:.1e}")
        z = verify_zero_modes(N)
        rep.record(f"XY: zero modes and ground overlap, N={N}", z.passed(), f"overlap={z.ground_overlap:.15f}")
    for N in (6, 8, 10, 12):
        g = build_ring(N, delta=0.0)
        ff = single_particle_ground(to_free_fermion(g), N // 2)
        ed = dense_spectrum(assemble(g, enumerate_sector(N))).values[0]
        rep.record(f"XY: free-fermion E0 == ED, N={N}", abs(ff.energy - ed) <= 1e-10, f"{ff.energy:.12f} vs {ed:.12f}")

    rep.runtime = time.perf_counter() - t0
    return rep
