"""Bitmask view of a graph for exhaustive subset scans.

Sites map to bit positions in ascending site order, so ascending masks
visit subsets in a stable order.  Only the enumeration-heavy modules
(mono-connectivity, oracle) use this; it is not part of the public API.
"""

from __future__ import annotations

from .graph import Graph, SiteId


class BitGraph:
    __slots__ = ("sites", "index", "adj", "full", "n")

    def __init__(self, g: Graph):
        self.sites: tuple[SiteId, ...] = g.site_list
        self.index = {p: i for i, p in enumerate(self.sites)}
        self.n = len(self.sites)
        self.full = (1 << self.n) - 1
        self.adj = [0] * self.n
        for a, b in g.pairs:
            ia, ib = self.index[a], self.index[b]
            self.adj[ia] |= 1 << ib
            self.adj[ib] |= 1 << ia

    def mask_of(self, region) -> int:
        m = 0
        for p in region:
            m |= 1 << self.index[p]
        return m

    def set_of(self, mask: int) -> frozenset[SiteId]:
        return frozenset(self.sites[i] for i in bits(mask))

    def is_connected(self, mask: int) -> bool:
        if mask == 0:
            return True
        seen = mask & -mask
        frontier = seen
        adj = self.adj
        while frontier:
            reach = 0
            m = frontier
            while m:
                low = m & -m
                reach |= adj[low.bit_length() - 1]
                m ^= low
            frontier = reach & mask & ~seen
            seen |= frontier
        return seen == mask

    def interior(self, mask: int) -> int:
        """Bits of ``mask`` adjacent to at least one bit outside it."""
        out = self.full & ~mask
        ii = 0
        m = mask
        adj = self.adj
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & out:
                ii |= low
            m ^= low
        return ii


def bits(mask: int):
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
