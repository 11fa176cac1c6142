"""Acceptance criteria 1-10, each at its stated tolerance.

Every test records a PASS/FAIL line that pytest prints in an
"acceptance criteria" section of the terminal summary.  Criteria 5 and 9 are
split: the literal wording is checked as written and is expected to fail (see
the notes on each), and the physically meaningful form is checked separately.
"""
import math
import os

import numpy as np
import pytest

from spinring.basis import enumerate_sector
from spinring.eigensolve import dense_spectrum, lanczos_ground
from spinring.experiments import run_fig1, run_fig3, run_table1
from spinring.experiments.output import to_csv
from spinring.experiments.properties import random_graphs
from spinring.freefermion import (
    kspace_hadd,
    single_particle_ground,
    to_free_fermion,
    verify_conserved_number,
    verify_zero_modes,
)
from spinring.hamiltonian import assemble
from spinring.lattice import ModulationProfile, build_cubic, build_ring, cos_pi_frac
from spinring.observables import (
    bond_correlations,
    concurrence_isotropic,
    concurrence_wootters,
    correlator,
    hellmann_feynman_check,
    overlap,
    stationarity_scan,
    two_site_rdm,
)

# published table1 reference: overlap and |E(H) - E(H0)| per N
TABLE1 = {12: (0.999988, 2.5e-5), 14: (0.999983, 2.6e-5), 16: (0.999978, 2.5e-5),
          18: (0.999974, 2.4e-5), 20: (0.999971, 2.3e-5), 22: (0.999967, 2.2e-5), 24: (0.999964, 2.0e-5)}
LARGE = os.environ.get("SPINRING_LARGE") == "1"


def oracle_graphs():
    g = {f"ring N={N}": build_ring(N) for N in range(2, 15, 2)}
    g["alternating ring N=12"] = build_ring(12, ModulationProfile.alternating(0.3))
    g["cosine ring N=14 A=0.95"] = build_ring(14, ModulationProfile.cosine(1.0, 0.95, 1))
    g["XY ring N=12"] = build_ring(12, delta=0.0)
    g["ladder 2x4 periodic"] = build_cubic([2, 4], periodic=True)
    g["ladder 2x6 open"] = build_cubic([2, 6])
    g["cube 2x2x2"] = build_cubic([2, 2, 2])
    return g


def test_criterion_1_oracle_equivalence(criterion):
    worst_dE, worst_ov = 0.0, 1.0
    for name, g in oracle_graphs().items():
        op = assemble(g, enumerate_sector(g.n_sites))
        assert op.dimension <= 4096
        lz, dn = lanczos_ground(op), dense_spectrum(op).ground()
        worst_dE = max(worst_dE, abs(lz.energy - dn.energy))
        worst_ov = min(worst_ov, overlap(lz, dn))
    ok = worst_dE <= 1e-10 and worst_ov >= 1 - 1e-9
    criterion("1 oracle equivalence", ok, f"max |dE|={worst_dE:.1e}, min overlap={worst_ov:.15f}")
    assert ok


def test_criterion_2_exact_small_cases(criterion):
    e2 = lanczos_ground(assemble(build_ring(2), enumerate_sector(2))).energy
    g4, b4 = build_ring(4), enumerate_sector(4)
    gs4 = lanczos_ground(assemble(g4, b4))
    G = bond_correlations(gs4, g4, b4)
    C = [concurrence_wootters(two_site_rdm(gs4, b4, i, j)) for i, j in g4.pairs]
    ok = (abs(e2 + 0.75) <= 1e-10 and abs(gs4.energy + 2) <= 1e-10
          and np.all(np.abs(G + 0.5) <= 1e-10) and np.all(np.abs(np.array(C) - 0.5) <= 1e-10))
    criterion("2 exact small cases", ok, f"E0(2)={e2:.12f} E0(4)={gs4.energy:.12f} G={G[0]:.12f} C={C[0]:.12f}")
    assert ok


def test_criterion_3_concurrence_anchor(criterion):
    c_inf = concurrence_isotropic(0.25 - math.log(2))
    anchor = abs(c_inf - (2 * math.log(2) - 1)) <= 1e-15 and round(c_inf, 3) == 0.386
    cs = []
    for N in range(4, 17, 2):
        b = enumerate_sector(N)
        gs = lanczos_ground(assemble(build_ring(N), b))
        cs.append(concurrence_isotropic(correlator(gs, b, 1, 2)))
    monotone = all(a > b for a, b in zip(cs, cs[1:]))
    close = abs(cs[-1] - c_inf) <= 0.02
    ok = anchor and monotone and close
    criterion("3 concurrence anchor", ok,
              f"C(inf)={c_inf:.6f} C(4..16)={[round(c, 5) for c in cs]} |C(16)-C(inf)|={abs(cs[-1] - c_inf):.4f}")
    assert ok


@pytest.fixture(scope="module")
def table1():
    Ns = [12, 14, 16, 18, 20] + ([22, 24] if LARGE else [])
    return run_table1(Ns)


def test_criterion_4_table1(table1, criterion):
    lines, ok = [], True
    for r in table1.rows:
        ov, dE = TABLE1[r["N"]]
        row_ok = r["status"] == "ok" and abs(r["overlap"] - ov) <= 2e-5 and r["delta_E"] <= 1e-4
        # raw total difference reproduces the published two-digit values
        row_ok &= float(f"{r['delta_E']:.1e}") == dE
        ok &= row_ok
        lines.append(f"N={r['N']}: {r['overlap']:.6f} (pub {ov}) dE={r['delta_E']:.2e}")
    ok &= all(a >= b for a, b in zip(table1.column("overlap"), table1.column("overlap")[1:]))
    criterion("4 table1 reproduction", ok, "; ".join(lines))
    assert ok


@pytest.fixture(scope="module")
def fig1():
    return run_fig1([8, 10, 12], J_grid=[0.01, 0.95, 1.0, 1.05])


def test_criterion_5a_fig1_local_maximum(fig1, criterion):
    detail, ok = [], True
    for N in (8, 10, 12):
        agg = dict(zip(fig1.column("J", N=N), fig1.column("aggregate_C", N=N)))
        ok &= agg[1.0] > agg[0.95] and agg[1.0] > agg[1.05]
        detail.append(f"N={N}: {agg[0.95]:.5f} < {agg[1.0]:.5f} > {agg[1.05]:.5f}")
    criterion("5a fig1 local maximum at J=1", ok, "; ".join(detail))
    assert ok


def test_criterion_5b_fig1_strong_bond_literal(fig1, criterion):
    """Strong-bond concurrence at J=0.01 within 0.02 of 0.5, as worded.

    Expected to FAIL.  At J=0.01 the strong bonds hold almost pure singlets
    with C close to 1.  The 0.5 of the dimer limit is the bond-averaged
    concurrence (half the bonds at 1, half at 0); see criterion 5c.
    """
    vals = fig1.column("strong_bond_C", J=0.01)
    ok = all(abs(v - 0.5) <= 0.02 for v in vals)
    criterion("5b fig1 strong-bond C(J=0.01) = 0.5 (literal)", ok, f"strong-bond C = {[round(float(v), 6) for v in vals]}")
    assert ok


def test_criterion_5c_fig1_dimer_limit_bond_average(fig1, criterion):
    mean = fig1.column("mean_bond_C", J=0.01)
    strong = fig1.column("strong_bond_C", J=0.01)
    ok = all(abs(v - 0.5) <= 0.02 for v in mean) and all(v >= 0.98 for v in strong)
    criterion("5c fig1 bond-averaged C(J=0.01) = 0.5", ok, f"mean-bond C = {[round(v, 6) for v in mean]}")
    assert ok


def test_criterion_6_stationarity(criterion):
    graphs = {"ring N=8": build_ring(8), "ring N=10": build_ring(10),
              "ladder 2x4 periodic": build_cubic([2, 4], periodic=True), "cube 2x2x2": build_cubic([2, 2, 2])}
    vals = {name: stationarity_scan(g, eps=1e-3) for name, g in graphs.items()}
    ok = all(v <= 1e-5 for v in vals.values())
    criterion("6 stationarity", ok, ", ".join(f"{k}: {v:.1e}" for k, v in vals.items()))
    assert ok


def test_criterion_7_hellmann_feynman(criterion):
    detail, ok = [], True
    for g, bond in random_graphs(5, seed=2024):
        assert g.n_sites <= 12 and not g.is_uniform
        basis = enumerate_sector(g.n_sites)
        a = hellmann_feynman_check(g, basis, bond, 1e-4)
        b = hellmann_feynman_check(g, basis, bond, 5e-5)
        ratio = a.discrepancy / b.discrepancy
        ok &= a.discrepancy <= 1e-6 and 3.5 <= ratio <= 4.5
        detail.append(f"N={g.n_sites} bond {bond}: {a.discrepancy:.1e} ratio {ratio:.2f}")
    criterion("7 Hellmann-Feynman", ok, "; ".join(detail))
    assert ok


def test_criterion_8_xy_exact(criterion):
    detail, ok = [], True
    for N in (6, 10, 14):
        hk = kspace_hadd(N)
        exact_zero = cos_pi_frac(2 * (N // 2 - 1) + 2, 2 * N) == 0.0  # k_f + pi/N = pi/2
        exact_zero &= np.count_nonzero(hk.amplitude == 0) == 2
        comm = verify_conserved_number(N)
        z = verify_zero_modes(N)
        row = (exact_zero and comm <= 1e-12 and z.hadd_on_ground <= 1e-10 and z.ground_overlap >= 1 - 1e-10
               and abs(z.free_fermion_energy - z.ground_energy_uniform) <= 1e-10)
        ok &= row
        detail.append(f"N={N}: comm={comm:.0e} |Hadd psi|={z.hadd_on_ground:.0e} 1-ov={1 - z.ground_overlap:.0e}")
    e6 = single_particle_ground(to_free_fermion(build_ring(6, delta=0.0)), 3).energy
    ok &= abs(e6 + 2.0) <= 1e-10
    criterion("8 XY exact statements", ok, "; ".join(detail) + f"; E0(6)={e6:.12f}")
    assert ok


@pytest.fixture(scope="module")
def fig3():
    return run_fig3([16, 18, 20], [0.5, 0.95])


def test_criterion_9a_fig3_literal(fig3, criterion):
    """n=1 strictly beats every n not in {0, 1}, as worded.

    Expected to FAIL.  The profiles for n and N-n are identical bond by bond
    (cos(2 pi (N-n) i/N) = cos(2 pi n i/N)), so n=N-1 ties n=1 exactly and a
    strict inequality cannot hold.  See criterion 9b.
    """
    detail, ok = [], True
    for N in (16, 18, 20):
        for A in (0.5, 0.95):
            ov = dict(zip(fig3.column("harmonic", N=N, amplitude=A), fig3.column("overlap", N=N, amplitude=A)))
            ok &= all(ov[1] > v for n, v in ov.items() if n not in (0, 1))
            detail.append(f"N={N} A={A}: ov(1)-ov(N-1)={ov[1] - ov[N - 1]:.1e}")
    criterion("9a fig3 n=1 beats all n not in {0,1} (literal)", ok, "; ".join(detail))
    assert ok


def test_criterion_9b_fig3_distinct_harmonics(fig3, criterion):
    detail, ok = [], True
    for N in (16, 18, 20):
        for A in (0.5, 0.95):
            ov = dict(zip(fig3.column("harmonic", N=N, amplitude=A), fig3.column("overlap", N=N, amplitude=A)))
            rivals = {n: v for n, v in ov.items() if n not in (0, 1, N - 1)}
            best = max(rivals, key=rivals.get)
            ok &= all(ov[1] > v for v in rivals.values())
            ok &= ov[N - 1] == ov[1]
            ok &= abs(ov[0] - 1.0) <= 1e-12
            detail.append(f"N={N} A={A}: ov(1)={ov[1]:.6f} best other n={best} {rivals[best]:.6f} |1-ov(0)|={abs(1 - ov[0]):.0e}")
    criterion("9b fig3 n=1 beats all distinct harmonics, ov(0)=1", ok, "; ".join(detail))
    assert ok


def test_criterion_10_determinism(criterion):
    runs = [
        lambda: run_fig1([8, 10], J_grid=[0.5, 1.0, 2.0]),
        lambda: run_table1([12, 14]),
        lambda: run_fig3([10], [0.5, 0.95]),
    ]
    ok = all(to_csv(f()) == to_csv(f()) for f in runs)
    criterion("10 determinism", ok, "fig1, table1, fig3 CSV repeated byte-for-byte")
    assert ok
