import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinring.errors import InvalidArgumentError, SizeLimitError
from spinring.lattice import (
    CouplingGraph,
    ModulationProfile,
    ZeroCouplingWarning,
    build_chain,
    build_cubic,
    build_ring,
    cos_pi_frac,
    perturb_bond,
)


def test_uniform_ring_bonds():
    g = build_ring(4, ModulationProfile.uniform(1.0))
    assert g.bonds == ((1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 1, 1.0))
    assert g.n_bonds == 4
    assert g.is_ring() and g.is_bipartite


def test_cosine_ring_values():
    with pytest.warns(ZeroCouplingWarning):
        g = build_ring(8, ModulationProfile.cosine(1.0, 1.0, 1))
    s = g.strengths
    assert s[0] == pytest.approx(1 + math.cos(math.pi / 4), abs=1e-15)
    assert s[0] == pytest.approx(1.70711, abs=1e-5)
    assert s[3] == 0.0
    assert s[7] == 2.0


def test_alternating_ring():
    g = build_ring(6, ModulationProfile.alternating(0.5))
    assert list(g.strengths) == [1, 0.5, 1, 0.5, 1, 0.5]


@pytest.mark.parametrize("N", [0, 3, 7, -2])
def test_ring_rejects_odd_or_small(N):
    with pytest.raises(InvalidArgumentError):
        build_ring(N)


def test_ring_size_limit():
    with pytest.raises(SizeLimitError):
        build_ring(26)


def test_two_site_ring_is_one_bond():
    g = build_ring(2)
    assert g.bonds == ((1, 2, 1.0),)


@pytest.mark.parametrize(
    "extents, periodic, n_sites, n_bonds",
    [([2, 2], False, 4, 4), ([2, 4], True, 8, 12), ([2, 2, 2], False, 8, 12), ([4, 4], True, 16, 32), ([2, 3], False, 6, 7)],
)
def test_cubic_counts(extents, periodic, n_sites, n_bonds):
    g = build_cubic(extents, periodic)
    assert (g.n_sites, g.n_bonds) == (n_sites, n_bonds)


def test_cube_is_bipartite_and_balanced():
    g = build_cubic([2, 2, 2])
    labels = g.bipartition()
    assert g.is_bipartite
    assert labels.count("A") == labels.count("B") == 4


def test_odd_periodic_extent_not_bipartite():
    g = build_cubic([3, 2], periodic=True)
    assert not g.is_bipartite and g.bipartition() is None


def test_cubic_size_limit():
    with pytest.raises(SizeLimitError):
        build_cubic([5, 5])


def test_cubic_extent_too_small():
    with pytest.raises(InvalidArgumentError):
        build_cubic([1, 4])


def test_perturb_bond():
    g = build_ring(4)
    p = perturb_bond(g, 1, 0.01)
    assert p.strengths[0] == pytest.approx(1.01)
    assert list(p.strengths[1:]) == [1, 1, 1]
    assert list(g.strengths) == [1, 1, 1, 1]
    assert perturb_bond(g, 2, 0.0) == g


def test_perturb_zero_bond():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ZeroCouplingWarning)
        g = build_ring(8, ModulationProfile.cosine(1.0, 1.0, 1))
    assert perturb_bond(g, 4, 0.1).strengths[3] == pytest.approx(0.1)


@pytest.mark.parametrize("bond", [0, 5, -1])
def test_perturb_bond_out_of_range(bond):
    with pytest.raises(InvalidArgumentError):
        perturb_bond(build_ring(4), bond, 0.1)


def test_graph_validation():
    with pytest.raises(InvalidArgumentError):
        CouplingGraph(3, ((1, 2, 1.0), (2, 1, 1.0)))
    with pytest.raises(InvalidArgumentError):
        CouplingGraph(3, ((1, 1, 1.0),))
    with pytest.raises(InvalidArgumentError):
        CouplingGraph(3, ((1, 4, 1.0),))


def test_chain_is_not_ring():
    g = build_chain(6)
    assert g.n_bonds == 5 and not g.is_ring() and g.is_bipartite


def test_cosine_harmonic_zero_is_uniform():
    s = ModulationProfile.cosine(1.0, 0.3, 0).strengths(10)
    assert np.all(s == 1.3)


@given(st.integers(2, 12).map(lambda k: 2 * k), st.integers(1, 30), st.floats(0, 1))
def test_cosine_sum_rule(N, n, A):
    if n % N == 0:
        return
    s = ModulationProfile.cosine(1.0, A, n).strengths(N)
    assert s.sum() == pytest.approx(N, abs=1e-12)


@given(st.integers(2, 12).map(lambda k: 2 * k), st.integers(0, 30))
def test_harmonic_and_its_mirror_give_identical_profiles(N, n):
    a = ModulationProfile.cosine(1.0, 0.7, n).strengths(N)
    b = ModulationProfile.cosine(1.0, 0.7, N - n).strengths(N)
    assert np.array_equal(a, b)


@given(st.integers(-200, 200), st.integers(1, 40))
def test_cos_pi_frac_matches_math_cos(m, n):
    assert cos_pi_frac(m, n) == pytest.approx(math.cos(math.pi * m / n), abs=1e-14)


def test_profile_dict_round_trip():
    for p in (ModulationProfile.uniform(2.0), ModulationProfile.alternating(0.3),
              ModulationProfile.cosine(1.0, 0.5, 3), ModulationProfile.custom([1, 2, 3, 4])):
        assert ModulationProfile.from_dict(p.to_dict()) == p


def test_profile_from_amplitude():
    p = ModulationProfile.from_dict({"kind": "cosine", "J": 2.0, "amplitude": 0.5, "harmonic": 2})
    assert p.J_prime == 1.0 and p.harmonic == 2


def test_custom_profile_length_mismatch():
    with pytest.raises(InvalidArgumentError):
        build_ring(6, ModulationProfile.custom([1, 2, 3]))
