"""Fixed-magnetization sectors of the spin-1/2 Hilbert space.

A configuration is an integer whose bit ``b`` is set when the spin on site
``b + 1`` points up.  Within a sector of fixed popcount, ascending integer
order coincides with colexicographic order of the set-bit positions, so the
rank of a state is the combinatorial-number-system sum of binomials.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .errors import InvalidArgumentError, SizeLimitError
from .lattice import MAX_SITES


def _binomial_table(n: int) -> np.ndarray:
    # table[p, k] = C(p, k)
    table = np.zeros((n + 1, n + 2), dtype=np.int64)
    for p in range(n + 1):
        for k in range(n + 2):
            table[p, k] = comb(p, k)
    return table


class SectorBasis:
    """Sorted list of N-bit configurations with ``n_up`` set bits."""

    def __init__(self, n_sites: int, n_up: int):
        if n_sites > MAX_SITES:
            raise SizeLimitError(f"N={n_sites} exceeds the {MAX_SITES}-site limit")
        if n_sites < 1 or not 0 <= n_up <= n_sites:
            raise InvalidArgumentError(f"need 0 <= n_up <= N, got N={n_sites}, n_up={n_up}")
        self.n_sites = int(n_sites)
        self.n_up = int(n_up)
        self._binom = _binomial_table(self.n_sites)
        everything = np.arange(1 << self.n_sites, dtype=np.int64)
        states = everything[np.bitwise_count(everything) == self.n_up]
        states.setflags(write=False)
        self.states = states

    @property
    def dimension(self) -> int:
        return len(self.states)

    def __len__(self):
        return self.dimension

    def __repr__(self):
        return f"SectorBasis(n_sites={self.n_sites}, n_up={self.n_up}, dimension={self.dimension})"

    def rank(self, config: int) -> int:
        """Index of ``config`` in the sorted sector."""
        config = int(config)
        if config < 0 or config >> self.n_sites or config.bit_count() != self.n_up:
            raise InvalidArgumentError(
                f"configuration {config:#b} is not in the N={self.n_sites}, n_up={self.n_up} sector"
            )
        r, k = 0, 0
        for b in range(self.n_sites):
            if config >> b & 1:
                k += 1
                r += comb(b, k)
        return r

    def rank_array(self, configs: np.ndarray) -> np.ndarray:
        """Vectorized ``rank`` for configurations already known to lie in the sector."""
        configs = np.asarray(configs, dtype=np.int64)
        r = np.zeros(configs.shape, dtype=np.int64)
        k = np.zeros(configs.shape, dtype=np.int64)
        for b in range(self.n_sites):
            bit = (configs >> b) & 1
            k += bit
            r += bit * self._binom[b, k]
        return r

    def unrank(self, index: int) -> int:
        if not 0 <= index < self.dimension:
            raise InvalidArgumentError(f"index {index} outside 0..{self.dimension - 1}")
        return int(self.states[index])

    def bits(self, site: int) -> np.ndarray:
        """Occupation (1 = up) of 1-indexed ``site`` across the basis."""
        return (self.states >> (site - 1)) & 1


def enumerate_sector(n_sites: int, n_up: int | None = None) -> SectorBasis:
    """Sector with ``n_up`` up spins; defaults to S^z = 0 (n_up = N // 2)."""
    if n_up is None:
        n_up = n_sites // 2
    return SectorBasis(n_sites, n_up)
