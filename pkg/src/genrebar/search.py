"""Top-k nearest-neighbor search over genre vectors.

Brute force is the reference implementation; the KD-tree index is purely an
acceleration and must return entry-for-entry identical results, which the
test suite enforces by randomized equivalence. Both paths share the same
scalar distance function and the same (distance, song id) ordering, so ties
resolve identically everywhere.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import NamedTuple

from .core import Dataset, GenreVector, weights_distance
from .errors import DimensionMismatchError, EmptyDatasetError, InvalidKError

# Absolute slack on the KD-tree plane-distance pruning bound; distances live
# in [0, sqrt(2)], so this absorbs any last-ulp rounding asymmetry without
# ever pruning a true neighbor.
_PRUNE_SLACK = 1e-12

_LEAF_SIZE = 16


class SearchHit(NamedTuple):
    song_id: str
    distance: float


@dataclass(frozen=True)
class SearchResult:
    """Ranked (song id, distance) pairs, nearest first, ties by ascending id."""

    entries: tuple[SearchHit, ...]
    query: GenreVector
    k_requested: int

    def __post_init__(self):
        if self.k_requested < 1:
            raise ValueError(f"k_requested must be positive, got {self.k_requested}")
        seen: set[str] = set()
        previous = 0.0
        for hit in self.entries:
            if hit.song_id in seen:
                raise ValueError(f"duplicate song id in result: {hit.song_id!r}")
            seen.add(hit.song_id)
            if hit.distance < previous:
                raise ValueError("result distances must be nondecreasing")
            previous = hit.distance


def _validate(query: GenreVector, k: int, space_k: int, size: int) -> None:
    if k < 1:
        raise InvalidKError(f"k must be at least 1, got {k}")
    if len(query.weights) != space_k:
        raise DimensionMismatchError(
            f"query has {len(query.weights)} components, dataset space has {space_k}"
        )
    if size == 0:
        raise EmptyDatasetError("cannot search an empty dataset")


def search_top_k(dataset: Dataset, query: GenreVector, k: int) -> SearchResult:
    """Return the min(k, N) songs nearest the query by Euclidean distance."""
    _validate(query, k, dataset.space.k, len(dataset))
    ranked = sorted(
        (weights_distance(query.weights, song.genres.weights), song.id)
        for song in dataset.songs
    )
    entries = tuple(SearchHit(song_id, dist) for dist, song_id in ranked[:k])
    return SearchResult(entries=entries, query=query, k_requested=k)


class _Leaf:
    __slots__ = ("items",)

    def __init__(self, items):
        self.items = items


class _Split:
    __slots__ = ("axis", "value", "left", "right")

    def __init__(self, axis, value, left, right):
        self.axis = axis
        self.value = value
        self.left = left
        self.right = right


def _build(items: list[tuple[tuple[float, ...], str]], depth: int, k_dims: int):
    if len(items) <= _LEAF_SIZE:
        return _Leaf(items)
    axis = depth % k_dims
    items.sort(key=lambda item: item[0][axis])
    mid = len(items) // 2
    value = items[mid][0][axis]
    return _Split(
        axis,
        value,
        _build(items[:mid], depth + 1, k_dims),
        _build(items[mid:], depth + 1, k_dims),
    )


class SearchIndex:
    """KD-tree over a dataset snapshot; result-identical to brute force."""

    def __init__(self, dataset: Dataset):
        if len(dataset) == 0:
            raise EmptyDatasetError("cannot index an empty dataset")
        self.space_k = dataset.space.k
        self.size = len(dataset)
        points = [(song.genres.weights, song.id) for song in dataset.songs]
        self._root = _build(points, 0, self.space_k)

    def query(self, query: GenreVector, k: int) -> tuple[SearchHit, ...]:
        _validate(query, k, self.space_k, self.size)
        q = query.weights
        limit = min(k, self.size)
        best: list[tuple[float, str]] = []

        def visit(node) -> None:
            if isinstance(node, _Leaf):
                for weights, song_id in node.items:
                    candidate = (weights_distance(q, weights), song_id)
                    if len(best) < limit:
                        bisect.insort(best, candidate)
                    elif candidate < best[-1]:
                        bisect.insort(best, candidate)
                        best.pop()
                return
            gap = q[node.axis] - node.value
            near, far = (node.left, node.right) if gap <= 0.0 else (node.right, node.left)
            visit(near)
            if len(best) < limit or abs(gap) <= best[-1][0] + _PRUNE_SLACK:
                visit(far)

        visit(self._root)
        return tuple(SearchHit(song_id, dist) for dist, song_id in best)


def build_index(dataset: Dataset) -> SearchIndex:
    """Build an immutable acceleration index over the dataset as it is now."""
    return SearchIndex(dataset)


def search_top_k_indexed(index: SearchIndex, query: GenreVector, k: int) -> SearchResult:
    """Same contract as search_top_k, served by the index snapshot."""
    entries = index.query(query, k)
    return SearchResult(entries=entries, query=query, k_requested=k)
