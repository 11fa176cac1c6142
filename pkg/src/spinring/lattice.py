"""Coupling graphs for rings, open chains and small cubic lattices.

Sites and bonds are 1-indexed: bond ``i`` of a ring connects sites ``i`` and
``i + 1`` (site ``N + 1`` is site 1).  Strengths are dimensionless, in units
of the reference coupling J.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, SizeLimitError

MAX_SITES = 24

PROFILE_KINDS = ("uniform", "alternating", "cosine", "custom")


class ZeroCouplingWarning(UserWarning):
    """A bond strength is <= 0; the ground state may be degenerate."""


def cos_pi_frac(m: int, n: int) -> float:
    """Return cos(pi * m / n) for integers m, n.

    The argument is reduced exactly before calling ``math.cos`` so that
    equivalent angles give bit-identical results and the quarter-turn
    zeros are exactly 0.0.
    """
    if n <= 0:
        raise InvalidArgumentError("denominator must be positive")
    m %= 2 * n
    if m > n:
        m = 2 * n - m
    if 2 * m == n:
        return 0.0
    if m == 0:
        return 1.0
    if m == n:
        return -1.0
    return math.cos(math.pi * m / n)


@dataclass(frozen=True)
class ModulationProfile:
    """Bond-strength profile along a ring.

    ``cosine`` gives J_i = J + J' cos(2 pi n i / N); ``alternating`` gives 1 on
    odd bonds and J on even bonds; ``custom`` takes the strengths verbatim.
    """

    kind: str = "uniform"
    J: float = 1.0
    J_prime: float = 0.0
    harmonic: int = 1
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise InvalidArgumentError(f"unknown profile kind {self.kind!r}")
        if self.kind == "cosine" and int(self.harmonic) != self.harmonic:
            raise InvalidArgumentError("harmonic index must be an integer")
        if self.kind == "custom" and not self.values:
            raise InvalidArgumentError("custom profile needs a list of strengths")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def uniform(cls, J: float = 1.0) -> "ModulationProfile":
        return cls("uniform", J=J)

    @classmethod
    def alternating(cls, J: float) -> "ModulationProfile":
        return cls("alternating", J=J)

    @classmethod
    def cosine(cls, J: float = 1.0, J_prime: float = 1.0, harmonic: int = 1) -> "ModulationProfile":
        return cls("cosine", J=J, J_prime=J_prime, harmonic=int(harmonic))

    @classmethod
    def custom(cls, values: Sequence[float]) -> "ModulationProfile":
        return cls("custom", values=tuple(values))

    @property
    def amplitude(self) -> float:
        """Relative modulation amplitude J'/J of a cosine profile."""
        return self.J_prime / self.J if self.J else math.inf

    def strengths(self, n_sites: int) -> np.ndarray:
        """Bond strengths J_1..J_N for a ring of ``n_sites`` sites."""
        i = np.arange(1, n_sites + 1)
        if self.kind == "uniform":
            return np.full(n_sites, float(self.J))
        if self.kind == "alternating":
            return np.where(i % 2 == 1, 1.0, float(self.J))
        if self.kind == "cosine":
            c = np.array([cos_pi_frac(2 * self.harmonic * k, n_sites) for k in i])
            return self.J + self.J_prime * c
        if len(self.values) != n_sites:
            raise InvalidArgumentError(
                f"custom profile has {len(self.values)} values for {n_sites} bonds"
            )
        return np.array(self.values, dtype=float)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "custom":
            d["values"] = list(self.values)
        else:
            d["J"] = self.J
        if self.kind == "cosine":
            d["Jprime"] = self.J_prime
            d["harmonic"] = self.harmonic
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ModulationProfile":
        """Parse the config-file form ``{kind, J, Jprime|amplitude, harmonic}``."""
        kind = d.get("kind", "uniform")
        J = float(d.get("J", 1.0))
        if kind == "cosine":
            if "Jprime" in d and "amplitude" in d:
                raise InvalidArgumentError("give either Jprime or amplitude, not both")
            if "amplitude" in d:
                J_prime = float(d["amplitude"]) * J
            else:
                J_prime = float(d.get("Jprime", J))
            return cls.cosine(J, J_prime, int(d.get("harmonic", 1)))
        if kind == "custom":
            return cls.custom(d.get("values", ()))
        if kind in ("uniform", "alternating"):
            return cls(kind, J=J)
        raise InvalidArgumentError(f"unknown profile kind {kind!r}")


@dataclass(frozen=True)
class CouplingGraph:
    """Sites 1..N, weighted bond list and a global anisotropy Delta."""

    n_sites: int
    bonds: tuple[tuple[int, int, float], ...]
    anisotropy: float = 1.0
    _labels: tuple[int, ...] | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise InvalidArgumentError("n_sites must be positive")
        bonds = tuple((int(i), int(j), float(J)) for i, j, J in self.bonds)
        seen = set()
        for i, j, _ in bonds:
            if not (1 <= i <= self.n_sites and 1 <= j <= self.n_sites):
                raise InvalidArgumentError(f"bond ({i}, {j}) out of range 1..{self.n_sites}")
            if i == j:
                raise InvalidArgumentError(f"self-bond on site {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InvalidArgumentError(f"duplicate bond {key}")
            seen.add(key)
        object.__setattr__(self, "bonds", bonds)
        object.__setattr__(self, "anisotropy", float(self.anisotropy))
        object.__setattr__(self, "_labels", self._two_colour())

    @property
    def n_bonds(self) -> int:
        """Link number M."""
        return len(self.bonds)

    @property
    def strengths(self) -> np.ndarray:
        return np.array([J for _, _, J in self.bonds], dtype=float)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.bonds]

    @property
    def is_uniform(self) -> bool:
        s = self.strengths
        return bool(np.all(s == s[0])) if len(s) else True

    @property
    def is_bipartite(self) -> bool:
        return self._labels is not None

    def bipartition(self) -> tuple[str, ...] | None:
        """Per-site sublattice labels 'A'/'B', or None if the graph is not bipartite."""
        if self._labels is None:
            return None
        return tuple("AB"[c] for c in self._labels)

    def is_ring(self) -> bool:
        """True if bond i connects sites i and i+1 (mod N), in order."""
        N = self.n_sites
        if N < 3 or self.n_bonds != N:
            return False
        return all((i, j) == (k, k % N + 1) for k, (i, j, _) in enumerate(self.bonds, start=1))

    def with_strengths(self, strengths: Sequence[float]) -> "CouplingGraph":
        if len(strengths) != self.n_bonds:
            raise InvalidArgumentError("need one strength per bond")
        bonds = tuple((i, j, float(J)) for (i, j, _), J in zip(self.bonds, strengths))
        return CouplingGraph(self.n_sites, bonds, self.anisotropy)

    def _two_colour(self):
        adj = [[] for _ in range(self.n_sites + 1)]
        for i, j, _ in self.bonds:
            adj[i].append(j)
            adj[j].append(i)
        colour = [-1] * (self.n_sites + 1)
        for start in range(1, self.n_sites + 1):
            if colour[start] >= 0:
                continue
            colour[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if colour[v] < 0:
                        colour[v] = 1 - colour[u]
                        stack.append(v)
                    elif colour[v] == colour[u]:
                        return None
        return tuple(colour[1:])


def build_ring(n_sites: int, profile: ModulationProfile | None = None, delta: float = 1.0) -> CouplingGraph:
    """Ring of ``n_sites`` (even) sites with strengths from ``profile``.

    Non-positive strengths are allowed but trigger a ZeroCouplingWarning.
    """
    if int(n_sites) != n_sites or n_sites < 2 or n_sites % 2:
        raise InvalidArgumentError(f"ring size must be even and >= 2, got {n_sites}")
    if n_sites > MAX_SITES:
        raise SizeLimitError(f"N={n_sites} exceeds the {MAX_SITES}-site limit")
    profile = profile or ModulationProfile.uniform()
    J = profile.strengths(n_sites)
    if n_sites == 2:
        # (1,2) and (2,1) are the same pair: keep a single bond of strength J_1.
        J = J[:1]
        bonds = ((1, 2, float(J[0])),)
    else:
        bonds = tuple((i, i % n_sites + 1, float(J[i - 1])) for i in range(1, n_sites + 1))
    if np.any(J <= 0):
        bad = [int(i) + 1 for i in np.flatnonzero(J <= 0)]
        warnings.warn(
            f"non-positive coupling on bond(s) {bad}; ground state may be degenerate",
            ZeroCouplingWarning,
            stacklevel=2,
        )
    return CouplingGraph(n_sites, bonds, delta)


def build_chain(n_sites: int, strengths: Sequence[float] | float = 1.0, delta: float = 1.0) -> CouplingGraph:
    """Open chain; ``strengths`` is a scalar or one value per bond (N - 1 of them)."""
    if n_sites < 2:
        raise InvalidArgumentError("chain needs at least two sites")
    if n_sites > MAX_SITES:
        raise SizeLimitError(f"N={n_sites} exceeds the {MAX_SITES}-site limit")
    J = np.broadcast_to(np.asarray(strengths, dtype=float), (n_sites - 1,))
    return CouplingGraph(n_sites, tuple((i, i + 1, float(J[i - 1])) for i in range(1, n_sites)), delta)


def build_cubic(extents: Sequence[int], periodic: bool = False, J: float = 1.0, delta: float = 1.0) -> CouplingGraph:
    """Hypercubic lattice with the given extents, sites numbered row-major from 1.

    With ``periodic`` a wrap bond is added along every axis of extent > 2;
    an axis of extent 2 already connects its only pair.
    """
    extents = [int(e) for e in extents]
    if not extents or any(e < 2 for e in extents):
        raise InvalidArgumentError("every extent must be >= 2")
    n = math.prod(extents)
    if n > MAX_SITES:
        raise SizeLimitError(f"lattice has {n} sites, limit is {MAX_SITES}")
    bonds = []
    for lin, coord in enumerate(np.ndindex(*extents)):
        for axis, ext in enumerate(extents):
            nxt = list(coord)
            if coord[axis] + 1 < ext:
                nxt[axis] += 1
            elif periodic and ext > 2:
                nxt[axis] = 0
            else:
                continue
            other = int(np.ravel_multi_index(nxt, extents))
            bonds.append((lin + 1, other + 1, float(J)))
    return CouplingGraph(n, tuple(bonds), delta)


def perturb_bond(graph: CouplingGraph, bond: int, eps: float) -> CouplingGraph:
    """Copy of ``graph`` with the strength of (1-indexed) ``bond`` shifted by ``eps``."""
    if not 1 <= bond <= graph.n_bonds:
        raise InvalidArgumentError(f"bond index {bond} outside 1..{graph.n_bonds}")
    s = graph.strengths
    s[bond - 1] += eps
    return graph.with_strengths(s)
