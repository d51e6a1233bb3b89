"""Soft-music-genre dataset engine.

Songs carry weighted multi-genre proportions (points on the probability
simplex); queries retrieve the k nearest songs by Euclidean distance; the
bar model turns a horizontally stacked bar into a slider for editing those
proportions.
"""

from .bar import BarState, DragEvent, apply_drag, handles_from_vector, segment_pixel_widths, vector_from_handles
from .core import (
    SUM_TOLERANCE,
    Dataset,
    GenreSpace,
    GenreVector,
    SongRecord,
    Violation,
    distance,
    normalize,
    validate_vector,
)
from .dataset_io import (
    DATASET_VERSION,
    FixtureSpec,
    fixture_f1,
    generate_fixture,
    parse_dataset,
    serialize_dataset,
)
from .search import SearchHit, SearchIndex, SearchResult, build_index, search_top_k, search_top_k_indexed

__version__ = "0.1.0"

__all__ = [
    "SUM_TOLERANCE",
    "DATASET_VERSION",
    "BarState",
    "Dataset",
    "DragEvent",
    "FixtureSpec",
    "GenreSpace",
    "GenreVector",
    "SearchHit",
    "SearchIndex",
    "SearchResult",
    "SongRecord",
    "Violation",
    "apply_drag",
    "build_index",
    "distance",
    "fixture_f1",
    "generate_fixture",
    "handles_from_vector",
    "normalize",
    "parse_dataset",
    "search_top_k",
    "search_top_k_indexed",
    "segment_pixel_widths",
    "serialize_dataset",
    "validate_vector",
    "vector_from_handles",
]
