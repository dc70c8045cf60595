"""Mono-connectivity checking and graph generators.

A connected graph is mono-connected when, for every Jordan cut, the
immediate interiors of both sides are connected.  The check here is an
exhaustive scan of all bipartitions and is therefore capped by site
count; it is meant as a desk-scale oracle, not a decision procedure.

The generators produce families that are mono-connected by construction:
paths, and rectangular grids triangulated with a fixed NW-SE diagonal
per unit square (a triangulation of a topological disk).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from ._bitgraph import BitGraph
from .errors import PreconditionError, SizeLimitError
from .graph import Graph, JCut, ScalarGraph, SiteId

DEFAULT_ENUMERATION_CAP = 16

ValuePolicy = Callable[[int], Sequence[float]]
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def ramp(start: float = 0, step: float = 1) -> ValuePolicy:
    """Values start, start+step, ... in site order."""
    return lambda n: [start + i * step for i in range(n)]


def constant(value: float = 0) -> ValuePolicy:
    return lambda n: [value] * n


def seeded_random(seed: int, low: int = 0, high: int = 5) -> ValuePolicy:
    """Integer values drawn uniformly from [low, high] with a fixed seed."""

    def draw(n: int) -> Sequence[float]:
        rng = random.Random(seed)
        return [rng.randint(low, high) for _ in range(n)]

    return draw


def _resolve_values(values: ValuePolicy | Sequence[float], n: int) -> list[float]:
    out = list(values(n)) if callable(values) else list(values)
    if len(out) != n:
        raise ValueError(f"expected {n} values, got {len(out)}")
    return out


@dataclass(frozen=True)
class MonoWitness:
    """Outcome of a mono-connectivity check.

    On a connected graph a false verdict always carries the first failing
    J-cut in canonical enumeration order and the side (low/up) whose
    immediate interior is disconnected.  A disconnected input yields a
    false verdict with no counterexample cut.
    """

    verdict: bool
    counterexample: JCut | None = None
    failing_side: str | None = None


def _enumerate_cut_masks(bg: BitGraph) -> Iterator[int]:
    # Fixing the least site's bit halves the scan and makes the emitted
    # side the canonical (least-site-containing) one.
    n = bg.n
    if n < 2:
        return
    for high in range(1 << (n - 1)):
        mask = (high << 1) | 1
        if mask == bg.full:
            continue
        if bg.is_connected(mask) and bg.is_connected(bg.full & ~mask):
            yield mask


def enumerate_j_cuts(g: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> list[JCut]:
    """All unordered bipartitions with both sides non-empty and connected.

    Each bipartition appears once, represented by the side containing the
    least site, in ascending bitmask order over the sorted site list.
    """
    if len(g) > cap:
        raise SizeLimitError(f"{len(g)} sites exceeds the enumeration cap of {cap}")
    if not g.is_connected():
        raise PreconditionError("J-cut enumeration requires a connected graph")
    bg = BitGraph(g)
    return [JCut(bg.set_of(mask)) for mask in _enumerate_cut_masks(bg)]


def is_mono_connected(g: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> MonoWitness:
    """Exhaustively decide mono-connectivity, producing a witness on failure."""
    if len(g) > cap:
        raise SizeLimitError(f"{len(g)} sites exceeds the enumeration cap of {cap}")
    if not g.is_connected():
        return MonoWitness(verdict=False)
    bg = BitGraph(g)
    for mask in _enumerate_cut_masks(bg):
        if not bg.is_connected(bg.interior(mask)):
            return MonoWitness(False, JCut(bg.set_of(mask)), "low")
        comp = bg.full & ~mask
        if not bg.is_connected(bg.interior(comp)):
            return MonoWitness(False, JCut(bg.set_of(mask)), "up")
    return MonoWitness(verdict=True)


def path_site_ids(n: int) -> list[SiteId]:
    """Letter ids up to 26 sites, zero-padded numeric ids beyond."""
    if n <= len(_LETTERS):
        return list(_LETTERS[:n])
    width = len(str(n - 1))
    return [f"s{i:0{width}d}" for i in range(n)]


def gen_path(n: int, values: ValuePolicy | Sequence[float]) -> ScalarGraph:
    """Path of ``n`` sites with values assigned in path order."""
    if n < 1:
        raise PreconditionError("a path needs at least one site")
    ids = path_site_ids(n)
    g = Graph(ids, [(ids[i], ids[i + 1]) for i in range(n - 1)])
    vals = _resolve_values(values, n)
    return ScalarGraph(g, dict(zip(ids, vals)))


def grid_site_id(row: int, col: int) -> SiteId:
    return f"r{row}c{col}"


def gen_tri_grid(width: int, height: int, values: ValuePolicy | Sequence[float]) -> ScalarGraph:
    """Triangulated width x height grid, mono-connected by construction.

    Adjacency is horizontal + vertical neighbors plus the NW-SE diagonal
    of every unit square; values are assigned in row-major site order.
    """
    if width < 1 or height < 1:
        raise PreconditionError("grid dimensions must be positive")
    ids = [grid_site_id(r, c) for r in range(height) for c in range(width)]
    pairs: list[tuple[SiteId, SiteId]] = []
    for r in range(height):
        for c in range(width):
            if c + 1 < width:
                pairs.append((grid_site_id(r, c), grid_site_id(r, c + 1)))
            if r + 1 < height:
                pairs.append((grid_site_id(r, c), grid_site_id(r + 1, c)))
            if c + 1 < width and r + 1 < height:
                pairs.append((grid_site_id(r, c), grid_site_id(r + 1, c + 1)))
    g = Graph(ids, pairs)
    vals = _resolve_values(values, width * height)
    return ScalarGraph(g, dict(zip(ids, vals)))
