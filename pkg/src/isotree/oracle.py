"""Definition-literal brute force: the ground truth for every fast path.

Every bipartition of the site set is tested against the level-cut
inequality in both orientations; winners are assembled into the iso-tree
with all invariants asserted.  Exponential on purpose: the value of this
module is fidelity, not speed, so it is capped at desk scale.
"""

from __future__ import annotations

from ._bitgraph import BitGraph, bits
from .errors import PreconditionError, SizeLimitError
from .graph import JCut, ScalarGraph
from .mono import is_mono_connected
from .tree import (
    IsoTree,
    LCut,
    _paired_edges,
    build_iso_tree_from_cuts,
    check_iso_tree,
    zones_from_cuts,
)

DEFAULT_ORACLE_CAP = 14


def _oriented_l_cut_masks(sg: ScalarGraph, bg: BitGraph) -> list[int]:
    """Low-side masks of all level cuts, found by scanning every bipartition."""
    n = bg.n
    if n < 2:
        return []
    value = [sg.value_of(p) for p in bg.sites]
    winners: list[int] = []
    for high in range(1 << (n - 1)):
        mask = (high << 1) | 1
        if mask == bg.full:
            continue
        comp = bg.full & ~mask
        if not (bg.is_connected(mask) and bg.is_connected(comp)):
            continue
        ii_x = [value[i] for i in bits(bg.interior(mask))]
        ii_c = [value[i] for i in bits(bg.interior(comp))]
        # Strictness means at most one orientation can win.
        if max(ii_x) < min(ii_c):
            winners.append(mask)
        elif max(ii_c) < min(ii_x):
            winners.append(comp)
    return winners


def _check_preconditions(sg: ScalarGraph, cap: int, trust_mono: bool) -> None:
    n = len(sg.graph)
    if n > cap:
        raise SizeLimitError(f"{n} sites exceeds the oracle cap of {cap}")
    if not trust_mono:
        witness = is_mono_connected(sg.graph, cap=cap)
        if not witness.verdict:
            raise PreconditionError(
                f"graph is not mono-connected (counterexample: {witness.counterexample!r})"
            )


def brute_force_l_cuts(
    sg: ScalarGraph, cap: int = DEFAULT_ORACLE_CAP, trust_mono: bool = False
) -> tuple[LCut, ...]:
    """All level cuts of the graph, with gaps read off the adjacent zone values.

    Pass ``trust_mono=True`` to skip the mono-connectivity scan for
    inputs known to be mono-connected (e.g. generated grids and paths).
    """
    _check_preconditions(sg, cap, trust_mono)
    bg = BitGraph(sg.graph)
    cuts = sorted((JCut(bg.set_of(m)) for m in _oriented_l_cut_masks(sg, bg)), key=JCut.sort_key)
    zones = zones_from_cuts(sg, cuts)
    pairs = _paired_edges(cuts, [z.sites for z in zones])
    return tuple(
        LCut(cut, zones[up_idx].value - zones[low_idx].value)
        for cut, (low_idx, up_idx) in zip(cuts, pairs)
    )


def brute_force_iso_tree(
    sg: ScalarGraph, cap: int = DEFAULT_ORACLE_CAP, trust_mono: bool = False
) -> IsoTree:
    """Iso-tree assembled from the brute-force cut set, invariants asserted."""
    cuts = brute_force_l_cuts(sg, cap=cap, trust_mono=trust_mono)
    tree = build_iso_tree_from_cuts(sg, cuts)
    check_iso_tree(sg, tree)
    return tree
