"""Hexagonal binning of the 2D layout with a hard per-bin capacity.

Points are assigned to pointy-top hexagonal cells via axial coordinates and
cube rounding. Any cell holding more than ``capacity`` points is subdivided
into cells of half the size, recursively up to MAX_DEPTH; whatever still
overflows at the bottom is chunked into sibling bins in corpus order. The
result always partitions the input and never exceeds capacity.

Hexagons do not nest, so a child cell can straddle its parent's border;
bin ids therefore carry the full subdivision path to stay unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .corpus import Corpus, SentimentDistribution
from .projection import Point2D

DEFAULT_CAPACITY = 15
MAX_DEPTH = 6

_SQRT3 = math.sqrt(3.0)


def axial_cell(x: float, y: float, size: float) -> tuple[int, int]:
    """Axial (q, r) of the pointy-top hexagon of circumradius ``size`` containing (x, y)."""
    qf = (_SQRT3 / 3.0 * x - y / 3.0) / size
    rf = (2.0 / 3.0 * y) / size
    # cube rounding
    xf, zf = qf, rf
    yf = -xf - zf
    rx, ry, rz = round(xf), round(yf), round(zf)
    dx, dy, dz = abs(rx - xf), abs(ry - yf), abs(rz - zf)
    if dx > dy and dx > dz:
        rx = -ry - rz
    elif dy > dz:
        ry = -rx - rz
    else:
        rz = -rx - ry
    return int(rx), int(rz)


@dataclass(frozen=True)
class HexBin:
    bin_id: str
    q: int
    r: int
    depth: int
    cell_size: float
    comment_ids: tuple[str, ...]
    sentiment_mix: SentimentDistribution

    @property
    def size(self) -> int:
        return len(self.comment_ids)


def _subdivide(
    members: list[Point2D],
    size: float,
    depth: int,
    capacity: int,
    path: str,
    corpus: Optional[Corpus],
    out: list[HexBin],
) -> None:
    cells: dict[tuple[int, int], list[Point2D]] = {}
    for p in members:
        cells.setdefault(axial_cell(p.x, p.y, size), []).append(p)

    for (q, r), cell_members in sorted(cells.items()):
        cell_path = f"{path}/{depth}:{q}:{r}" if path else f"{depth}:{q}:{r}"
        if len(cell_members) <= capacity:
            out.append(_make_bin(cell_path, q, r, depth, size, cell_members, corpus))
        elif depth < MAX_DEPTH:
            _subdivide(cell_members, size / 2.0, depth + 1, capacity, cell_path, corpus, out)
        else:
            # bottomed out (coincident or near-coincident points): chunk in place
            for chunk_idx in range(0, len(cell_members), capacity):
                chunk = cell_members[chunk_idx : chunk_idx + capacity]
                out.append(
                    _make_bin(
                        f"{cell_path}#{chunk_idx // capacity}", q, r, depth, size, chunk, corpus
                    )
                )


def _make_bin(
    bin_id: str,
    q: int,
    r: int,
    depth: int,
    size: float,
    members: list[Point2D],
    corpus: Optional[Corpus],
) -> HexBin:
    ids = tuple(p.comment_id for p in members)
    if corpus is not None:
        mix = SentimentDistribution.from_labels(corpus.get(cid).sentiment for cid in ids)
    else:
        mix = SentimentDistribution.from_counts(0, len(ids), 0)
    return HexBin(bin_id, q, r, depth, size, ids, mix)


def build_hexbins(
    points: Sequence[Point2D],
    capacity: int = DEFAULT_CAPACITY,
    cell_size: float = 1.0,
    corpus: Optional[Corpus] = None,
) -> list[HexBin]:
    """Bin points into hexagons of at most ``capacity`` members.

    Deterministic: identical (points, capacity, cell_size) give identical
    bin ids and memberships. Input order is preserved inside each bin, so
    corpus order is the chunking order for overflow bins.
    """
    if capacity < 1:
        raise ValueError("capacity must be >= 1")
    if not cell_size > 0:
        raise ValueError("cell_size must be > 0")
    out: list[HexBin] = []
    if points:
        _subdivide(list(points), cell_size, 0, capacity, "", corpus, out)
    return out
