"""Genre spaces, simplex-constrained proportion vectors, songs and datasets.

A genre vector assigns a song fractional membership in K genres: every
component lies in [0, 1] and the components sum to one. All other modules
build on the types and the Euclidean distance defined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DimensionMismatchError, NegativeWeightError, ZeroMassError

# Tolerance for accepting externally supplied vectors. Vectors produced
# internally (normalize, dataset parsing) sum to exactly 1.0.
SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class GenreSpace:
    """Ordered set of K genre names; component i of every vector refers to names[i]."""

    names: tuple[str, ...]

    def __post_init__(self):
        trimmed = tuple(str(n).strip() for n in self.names)
        if any(not n for n in trimmed):
            raise ValueError("genre names must be non-empty")
        if len(trimmed) < 2:
            raise ValueError(f"a genre space needs at least 2 genres, got {len(trimmed)}")
        if len(set(trimmed)) != len(trimmed):
            raise ValueError(f"genre names must be unique: {trimmed}")
        object.__setattr__(self, "names", trimmed)

    @property
    def k(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class GenreVector:
    """A point on the (K-1)-simplex: per-genre proportions in [0, 1] summing to one."""

    weights: tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if len(weights) < 2:
            raise ValueError("a genre vector needs at least 2 components")
        for i, w in enumerate(weights):
            if not math.isfinite(w):
                raise ValueError(f"component {i} is not finite: {w!r}")
            if w < 0.0 or w > 1.0:
                raise ValueError(f"component {i} out of [0, 1]: {w!r}")
        total = math.fsum(weights)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"weights sum to {total!r}, expected 1 within {SUM_TOLERANCE}")
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class SongRecord:
    """A song plus its soft-genre annotation."""

    id: str
    title: str
    artist: str
    genres: GenreVector

    def __post_init__(self):
        if not self.id:
            raise ValueError("song id must be a non-empty string")


@dataclass(frozen=True)
class Dataset:
    """An immutable collection of songs annotated against one genre space."""

    space: GenreSpace
    songs: tuple[SongRecord, ...]
    _by_id: dict[str, SongRecord] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        songs = tuple(self.songs)
        by_id: dict[str, SongRecord] = {}
        for song in songs:
            if len(song.genres) != self.space.k:
                raise ValueError(
                    f"song {song.id!r} has {len(song.genres)} weights, space has {self.space.k}"
                )
            if song.id in by_id:
                raise ValueError(f"duplicate song id {song.id!r}")
            by_id[song.id] = song
        object.__setattr__(self, "songs", songs)
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.songs)

    def song(self, song_id: str) -> SongRecord | None:
        return self._by_id.get(song_id)


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by validate_vector; data, not an exception."""

    code: str
    message: str
    index: int | None = None


def force_exact_sum(weights: list[float]) -> tuple[float, ...]:
    """Absorb rounding residue into the largest component so fsum(weights) == 1.0.

    The first pass sets the largest component to 1 - sum(others); the nudge
    loop walks it by single ulps for the rare case where one rounding step
    is not enough. Components stay inside [0, 1] because the largest
    component is at least 1/K and the adjustment is at most a few ulps.
    """
    out = list(weights)
    if math.fsum(out) == 1.0:
        return tuple(out)
    imax = max(range(len(out)), key=lambda i: out[i])
    others = math.fsum(w for i, w in enumerate(out) if i != imax)
    out[imax] = 1.0 - others
    for _ in range(10):
        residue = 1.0 - math.fsum(out)
        if residue == 0.0:
            break
        out[imax] = math.nextafter(out[imax], math.inf if residue > 0.0 else -math.inf)
    return tuple(out)


def normalize(raw, space: GenreSpace) -> GenreVector:
    """Scale a sequence of K nonnegative reals into an exact-sum GenreVector.

    Accepts vote counts, percentages or fractions; only the relative
    proportions matter. The result sums to exactly 1.0 (largest component
    absorbs the rounding residue).
    """
    values = [float(x) for x in raw]
    if len(values) != space.k:
        raise DimensionMismatchError(
            f"expected {space.k} proportions for space {space.names}, got {len(values)}"
        )
    for i, x in enumerate(values):
        if not (math.isfinite(x) and x >= 0.0):
            raise NegativeWeightError(
                f"proportion at index {i} must be a finite nonnegative real, got {x!r}"
            )
    total = math.fsum(values)
    if total == 0.0:
        raise ZeroMassError("all proportions are zero")
    scaled = [min(x / total, 1.0) for x in values]
    return GenreVector(force_exact_sum(scaled))


def distance(u: GenreVector, v: GenreVector) -> float:
    """Euclidean distance between two genre vectors."""
    return weights_distance(u.weights, v.weights)


def weights_distance(u: tuple[float, ...], v: tuple[float, ...]) -> float:
    """Euclidean distance on bare weight tuples; shared by search paths.

    Left-to-right summation, so every caller computes bit-identical values.
    """
    if len(u) != len(v):
        raise DimensionMismatchError(f"vector lengths differ: {len(u)} vs {len(v)}")
    acc = 0.0
    for a, b in zip(u, v):
        d = a - b
        acc += d * d
    return math.sqrt(acc)


def validate_vector(weights, space: GenreSpace) -> list[Violation]:
    """Check a raw weight sequence against the GenreVector invariants.

    Returns an empty list for valid vectors, otherwise one Violation per
    broken invariant. The sum check runs on the raw values as given.
    """
    values = [float(w) for w in weights]
    violations: list[Violation] = []
    if len(values) != space.k:
        violations.append(
            Violation(
                code="DimensionMismatch",
                message=f"expected {space.k} weights, got {len(values)}",
            )
        )
    finite = True
    for i, w in enumerate(values):
        if not math.isfinite(w):
            violations.append(
                Violation(code="NonFiniteWeight", message=f"weight at index {i} is {w!r}", index=i)
            )
            finite = False
        elif w < 0.0:
            violations.append(
                Violation(code="NegativeWeight", message=f"negative component at index {i}: {w!r}", index=i)
            )
        elif w > 1.0:
            violations.append(
                Violation(code="WeightAboveOne", message=f"component at index {i} exceeds 1: {w!r}", index=i)
            )
    if finite and values:
        total = math.fsum(values)
        if abs(total - 1.0) > SUM_TOLERANCE:
            violations.append(
                Violation(
                    code="SumOutOfTolerance",
                    message=f"sum {total!r} differs from 1 by more than {SUM_TOLERANCE}",
                )
            )
    return violations
