"""Efficient iso-tree construction via sublevel/superlevel merge trees.

Ties are broken symbolically: sites are ranked by (value, site id), so
the ranked graph has a unique value per site.  Two union-find sweeps
build the sublevel and superlevel merge trees, a leaf-pruning merge
combines them into the augmented contour tree (one node per site), and
that tree maps directly onto the iso-tree of the ranked graph.  A final
contraction of equal-value edges yields the iso-tree of the original
function, with gaps re-expressed in input units.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping

from .errors import InternalInconsistencyError, PreconditionError
from .graph import JCut, ScalarGraph, SiteId
from .tree import IsoTree, IsoZone, TreeEdge
from .unionfind import UnionFind


class RankPerturbation:
    """Order-preserving bijection of sites onto ranks 0..n-1.

    Ranks follow (value, site id) lexicographically, so equal values are
    broken by site order and strict value order is preserved exactly.
    """

    __slots__ = ("_order", "_rank")

    def __init__(self, order: tuple[SiteId, ...]):
        self._order = order
        self._rank = {p: i for i, p in enumerate(order)}

    @property
    def order(self) -> tuple[SiteId, ...]:
        """Sites sorted ascending by (value, site id); index = rank."""
        return self._order

    @property
    def rank(self) -> Mapping[SiteId, int]:
        return dict(self._rank)

    def rank_of(self, p: SiteId) -> int:
        return self._rank[p]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankPerturbation):
            return NotImplemented
        return self._order == other._order


@dataclass(frozen=True)
class MergeTree:
    """Parent relation over all sites from one union-find sweep.

    Sublevel flavor: every parent has a strictly greater rank (the tree
    root is the global maximum).  Superlevel flavor: parents have
    strictly smaller ranks and the root is the global minimum.
    """

    flavor: str  # "sublevel" | "superlevel"
    parent: Mapping[SiteId, SiteId | None]

    def children(self) -> dict[SiteId, set[SiteId]]:
        out: dict[SiteId, set[SiteId]] = {p: set() for p in self.parent}
        for p, q in self.parent.items():
            if q is not None:
                out[q].add(p)
        return out


@dataclass(frozen=True)
class AugmentedContourTree:
    """Free tree over all sites; every edge is oriented (lower, higher) by rank."""

    sites: frozenset[SiteId]
    edges: tuple[tuple[SiteId, SiteId], ...]


def perturb_rank(sg: ScalarGraph) -> RankPerturbation:
    """Rank sites by (value, site id); injective and order-preserving."""
    return RankPerturbation(tuple(sorted(sg.graph.sites, key=lambda p: (sg.value_of(p), p))))


def _sweep(sg: ScalarGraph, rp: RankPerturbation, ascending: bool) -> dict[SiteId, SiteId | None]:
    g = sg.graph
    if not g.is_connected():
        raise PreconditionError("merge-tree sweeps require a connected graph")
    order = rp.order if ascending else tuple(reversed(rp.order))
    parent: dict[SiteId, SiteId | None] = {}
    uf = UnionFind()
    # newest[root] is the most recently added site of the component: the
    # "top" while sweeping up, the "bottom" while sweeping down.
    newest: dict[SiteId, SiteId] = {}
    for x in order:
        uf.add(x)
        parent[x] = None
        roots = {uf.find(q) for q in g.neighbors(x) if q in parent and q != x}
        roots.discard(uf.find(x))
        for root in sorted(roots, key=rp.rank_of):
            parent[newest[root]] = x
            uf.union(root, x)
        newest[uf.find(x)] = x
    return parent


def sublevel_merge_tree(sg: ScalarGraph, rp: RankPerturbation) -> MergeTree:
    """Track components of the growing sublevel sets; edges point up-rank."""
    return MergeTree("sublevel", _sweep(sg, rp, ascending=True))


def superlevel_merge_tree(sg: ScalarGraph, rp: RankPerturbation) -> MergeTree:
    """Track components of the growing superlevel sets; edges point down-rank."""
    return MergeTree("superlevel", _sweep(sg, rp, ascending=False))


def merge_to_augmented_ct(jt: MergeTree, st: MergeTree) -> AugmentedContourTree:
    """Leaf-pruning merge of the two sweep trees into the contour tree.

    A site is prunable when it is childless in one tree and has exactly
    one child in the other: the edge to its parent in the childless tree
    is a contour-tree edge.  Pruned sites are spliced out of both trees;
    the process ends when a single site remains.
    """
    if jt.parent.keys() != st.parent.keys():
        raise PreconditionError("merge trees cover different site sets")
    sites = set(jt.parent.keys())
    if len(sites) <= 1:
        return AugmentedContourTree(frozenset(sites), ())

    p_sub: dict[SiteId, SiteId | None] = dict(jt.parent)
    p_sup: dict[SiteId, SiteId | None] = dict(st.parent)
    ch_sub = {p: set(c) for p, c in jt.children().items()}
    ch_sup = {p: set(c) for p, c in st.children().items()}

    def lower_leaf(x: SiteId) -> bool:
        return not ch_sub[x] and len(ch_sup[x]) == 1

    def upper_leaf(x: SiteId) -> bool:
        return not ch_sup[x] and len(ch_sub[x]) == 1

    heap = sorted(sites)
    edges: list[tuple[SiteId, SiteId]] = []
    remaining = set(sites)

    def splice(parent: dict, children: dict, x: SiteId) -> list[SiteId]:
        """Remove x, reconnecting its unique child (if any) to its parent."""
        touched = []
        pp = parent.pop(x)
        kids = children.pop(x)
        if pp is not None:
            ch = children[pp]
            ch.discard(x)
            touched.append(pp)
        for c in kids:
            parent[c] = pp
            if pp is not None:
                children[pp].add(c)
            touched.append(c)
        return touched

    while len(remaining) > 1:
        while heap:
            x = heapq.heappop(heap)
            if x in remaining and (lower_leaf(x) or upper_leaf(x)):
                break
        else:
            raise InternalInconsistencyError("leaf-pruning merge stalled; malformed merge trees")
        if lower_leaf(x):
            mate = p_sub[x]
            if mate is None:
                raise InternalInconsistencyError(f"lower leaf {x!r} has no sublevel parent")
            edges.append((x, mate))
        else:
            mate = p_sup[x]
            if mate is None:
                raise InternalInconsistencyError(f"upper leaf {x!r} has no superlevel parent")
            edges.append((mate, x))
        remaining.discard(x)
        for touched in splice(p_sub, ch_sub, x) + splice(p_sup, ch_sup, x):
            if touched in remaining:
                heapq.heappush(heap, touched)

    return AugmentedContourTree(frozenset(sites), tuple(sorted(edges)))


def ct_to_iso_tree(sg: ScalarGraph, rp: RankPerturbation, ct: AugmentedContourTree) -> IsoTree:
    """Iso-tree of the rank-valued graph: singleton zones, rank gaps.

    Each contour-tree edge becomes an L-cut edge whose bipartition is
    the split the edge induces on the tree's sites.
    """
    adj: dict[SiteId, list[SiteId]] = {p: [] for p in ct.sites}
    for lo, hi in ct.edges:
        adj[lo].append(hi)
        adj[hi].append(lo)

    # Root the tree and collect, for every edge, the site set hanging
    # below its child endpoint; the cut's low side is whichever side
    # contains the edge's lower endpoint.
    root = min(ct.sites)
    order: list[SiteId] = []
    parent: dict[SiteId, SiteId | None] = {root: None}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for other in adj[v]:
            if other not in parent:
                parent[other] = v
                stack.append(other)
    below: dict[SiteId, set[SiteId]] = {p: {p} for p in ct.sites}
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            below[p] |= below[v]

    zones = [IsoZone(frozenset({p}), rp.rank_of(p)) for p in ct.sites]
    edges = []
    for lo, hi in ct.edges:
        child = hi if parent.get(hi) == lo else lo
        side = frozenset(below[child])
        low_side = side if lo in side else frozenset(ct.sites - side)
        edges.append(TreeEdge(lo, hi, JCut(low_side), rp.rank_of(hi) - rp.rank_of(lo)))
    reference = sg.reference_site()
    return IsoTree(zones, edges, reference, rp.rank_of(reference))


def build_iso_tree(sg: ScalarGraph, reduce: bool = True) -> IsoTree:
    """Full pipeline: rank, sweep both ways, merge, map, optionally reduce.

    With ``reduce=False`` the returned tree is the iso-tree of the
    rank-valued graph (singleton zones, gaps in rank units).
    """
    rp = perturb_rank(sg)
    jt = sublevel_merge_tree(sg, rp)
    st = superlevel_merge_tree(sg, rp)
    ct = merge_to_augmented_ct(jt, st)
    tree_h = ct_to_iso_tree(sg, rp, ct)
    return reduce_by_f(sg, tree_h) if reduce else tree_h


def reduce_by_f(sg: ScalarGraph, tree_h: IsoTree) -> IsoTree:
    """Contract equal-value edges of the ranked tree back to input units.

    Edges whose endpoint zones carry the same input value merge their
    zones; surviving edges keep their bipartitions and get gaps measured
    in input values.  The result is the iso-tree of the original graph.
    """

    def f_of(zone_rep: SiteId) -> float:
        zone = tree_h.zone_by_rep(zone_rep)
        values = {sg.value_of(p) for p in zone.sites}
        if len(values) != 1:
            raise InternalInconsistencyError(
                f"zone {zone_rep!r} mixes input values {sorted(values)}"
            )
        return values.pop()

    uf = UnionFind(z.rep for z in tree_h.zones)
    for e in tree_h.edges:
        if f_of(e.low) == f_of(e.up):
            uf.union(e.low, e.up)

    merged_sites: dict[SiteId, set[SiteId]] = {}
    merged_values: dict[SiteId, set[float]] = {}
    for z in tree_h.zones:
        root = uf.find(z.rep)
        merged_sites.setdefault(root, set()).update(z.sites)
        merged_values.setdefault(root, set()).add(f_of(z.rep))
    zones_by_root: dict[SiteId, IsoZone] = {}
    for root, sites in merged_sites.items():
        values = merged_values[root]
        if len(values) != 1:
            raise InternalInconsistencyError(
                f"contracted zone {root!r} mixes input values {sorted(values)}"
            )
        zones_by_root[root] = IsoZone(frozenset(sites), values.pop())

    edges = []
    for e in tree_h.edges:
        low_root, up_root = uf.find(e.low), uf.find(e.up)
        if low_root == up_root:
            continue
        low_zone, up_zone = zones_by_root[low_root], zones_by_root[up_root]
        edges.append(TreeEdge(low_zone.rep, up_zone.rep, e.cut, up_zone.value - low_zone.value))

    reference = sg.reference_site()
    return IsoTree(zones_by_root.values(), edges, reference, sg.value_of(reference))
