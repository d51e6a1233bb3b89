"""Headless interaction model of the stacked genre bar.

A bar for K genres is K contiguous segments whose widths encode the
proportions, separated by K-1 draggable handles sitting at the cumulative
sums. Dragging a handle moves proportion mass between the two adjacent
genres only; the handle clamps at its neighbors, so segments can reach
zero width but never invert. The web UI mirrors these semantics exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GenreSpace, GenreVector
from .errors import DimensionMismatchError, NonMonotonicHandlesError, OutOfRangeHandleError

# Drag positions snap to multiples of STEP (0.1%) so repeated gestures are
# reproducible across pointer resolutions.
STEP = 0.001

_HANDLE_CONSISTENCY = 1e-12


@dataclass(frozen=True)
class BarState:
    """A genre vector together with its derived handle positions."""

    vector: GenreVector
    handles: tuple[float, ...]

    def __post_init__(self):
        handles = tuple(float(h) for h in self.handles)
        k = len(self.vector)
        if len(handles) != k - 1:
            raise ValueError(f"expected {k - 1} handles for a {k}-genre bar, got {len(handles)}")
        previous = 0.0
        for i, h in enumerate(handles):
            if not math.isfinite(h) or h < 0.0 or h > 1.0:
                raise ValueError(f"handle {i} out of [0, 1]: {h!r}")
            if h < previous:
                raise ValueError(f"handle {i} below handle {i - 1}: {h!r} < {previous!r}")
            previous = h
        for i, (h, c) in enumerate(zip(handles, _cumulative(self.vector.weights))):
            if abs(h - c) > _HANDLE_CONSISTENCY:
                raise ValueError(f"handle {i} is {h!r}, cumulative sum is {c!r}")
        object.__setattr__(self, "handles", handles)

    @classmethod
    def from_vector(cls, vector: GenreVector) -> "BarState":
        return cls(vector, handles_from_vector(vector))


@dataclass(frozen=True)
class DragEvent:
    """One handle drop: which handle, and the unclamped bar coordinate it was released at."""

    handle_index: int
    target_position: float

    def __post_init__(self):
        if self.handle_index < 0:
            raise ValueError(f"handle index must be nonnegative, got {self.handle_index}")
        if not math.isfinite(self.target_position):
            raise ValueError(f"target position must be finite, got {self.target_position!r}")


def _cumulative(weights: tuple[float, ...]) -> tuple[float, ...]:
    # min() guards the last-ulp case where a rounding-up partial sum would
    # push a handle past the end of the bar.
    acc = 0.0
    out = []
    for w in weights[:-1]:
        acc = min(acc + w, 1.0)
        out.append(acc)
    return tuple(out)


def quantize(position: float) -> float:
    """Snap a bar coordinate to the nearest STEP multiple (halves round up)."""
    return math.floor(position * 1000.0 + 0.5) / 1000.0


def handles_from_vector(vector: GenreVector) -> tuple[float, ...]:
    """Cumulative sums of the first K-1 weights; inverse of vector_from_handles."""
    return _cumulative(vector.weights)


def vector_from_handles(handles, space: GenreSpace) -> GenreVector:
    """Rebuild the proportion vector from K-1 handle positions.

    weights[i] spans handles[i-1]..handles[i], with 0 and 1 as the outer
    boundaries.
    """
    values = tuple(float(h) for h in handles)
    if len(values) != space.k - 1:
        raise DimensionMismatchError(
            f"expected {space.k - 1} handles for space {space.names}, got {len(values)}"
        )
    previous = 0.0
    for i, h in enumerate(values):
        if not math.isfinite(h) or h < 0.0 or h > 1.0:
            raise OutOfRangeHandleError(f"handle {i} out of [0, 1]: {h!r}")
        if h < previous:
            raise NonMonotonicHandlesError(f"handle {i} below handle {i - 1}: {h!r} < {previous!r}")
        previous = h
    bounds = (0.0,) + values + (1.0,)
    weights = tuple(bounds[i + 1] - bounds[i] for i in range(space.k))
    return GenreVector(weights)


def apply_drag(state: BarState, event: DragEvent) -> BarState:
    """Move one handle and re-derive the two adjacent weights.

    The target is quantized to STEP, then clamped between the neighboring
    handles (or the bar ends), so every drop position is legal. Only the two
    segments touching the dragged handle change; their combined mass is the
    span between the fixed neighbors, which the drag cannot alter.
    """
    k = len(state.vector)
    i = event.handle_index
    if i > k - 2:
        raise IndexError(f"handle index {i} out of range for a {k}-genre bar")
    lower = state.handles[i - 1] if i > 0 else 0.0
    upper = state.handles[i + 1] if i < k - 2 else 1.0
    position = min(max(quantize(event.target_position), lower), upper)
    if position == state.handles[i]:
        return state
    handles = list(state.handles)
    handles[i] = position
    weights = list(state.vector.weights)
    weights[i] = position - lower
    weights[i + 1] = upper - position
    return BarState(GenreVector(tuple(weights)), tuple(handles))


def segment_pixel_widths(state: BarState, total_width: int) -> tuple[int, ...]:
    """Apportion total_width pixels over the segments, largest remainder first.

    Every width is the floor or ceiling of the exact proportion, so widths
    sum exactly to total_width and each deviates from exact by at most one
    pixel. Remainder ties go to the larger weight, then the lower index.
    """
    weights = state.vector.weights
    k = len(weights)
    if total_width < k:
        raise ValueError(f"total width {total_width} smaller than segment count {k}")
    exact = [w * total_width for w in weights]
    widths = [math.floor(e) for e in exact]
    leftover = total_width - sum(widths)
    by_remainder = sorted(range(k), key=lambda j: (-(exact[j] - widths[j]), -weights[j], j))
    for j in by_remainder[:leftover]:
        widths[j] += 1
    return tuple(widths)
