"""The "genrebar/1" dataset file format plus deterministic fixture generation.

A dataset is one JSON document: version tag, genre-name array, song array.
Serialization is canonical: fixed key order, songs sorted by id, weights
printed with exactly six decimal digits, so equal datasets always produce
byte-identical documents. Weights are quantized to that same six-decimal
grid when fixtures are generated, which keeps serialize/parse round trips
lossless. See docs/dataset-format.md for the byte-level rules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Dataset,
    GenreSpace,
    GenreVector,
    SongRecord,
    Violation,
    force_exact_sum,
    validate_vector,
)
from .errors import MalformedDocumentError, UnknownVersionError, ValidationFailedError

DATASET_VERSION = "genrebar/1"

_TITLE_FIRST = (
    "Midnight", "Dusty", "Golden", "Lonesome", "Electric", "Velvet",
    "Broken", "Silver", "Wandering", "Crimson", "Hollow", "Restless",
)
_TITLE_SECOND = (
    "Train", "River", "Moon", "Highway", "Sparrow", "Porch",
    "Canyon", "Ember", "Crossroads", "Lantern", "Mockingbird", "Rain",
)
_ARTIST_FIRST = (
    "Abilene", "Cass", "Delta", "Ezra", "Harlan", "Iris",
    "Jubal", "Lena", "Mercer", "Nadine", "Otis", "Pearl",
)
_ARTIST_LAST = (
    "Calhoun", "Delacroix", "Ellington", "Fontaine", "Greaves", "Hollis",
    "Kingsley", "LaRue", "Montrose", "Vance", "Whitfield", "Winslow",
)


@dataclass(frozen=True)
class FixtureSpec:
    """Recipe for a deterministic synthetic dataset."""

    seed: int
    n_songs: int
    space: GenreSpace

    def __post_init__(self):
        if self.n_songs < 1:
            raise ValueError(f"n_songs must be at least 1, got {self.n_songs}")


def canonical_vector(vector: GenreVector) -> GenreVector:
    """Quantize weights to the six-decimal serialization grid, exact sum restored.

    The final pass routes every weight through its serialized rendering, so
    canonical vectors are bit-exact fixed points of parse(serialize(...)).
    """
    quantized = force_exact_sum([round(w, 6) for w in vector.weights])
    snapped = [float(f"{w:.6f}") for w in quantized]
    return GenreVector(force_exact_sum(snapped))


def _structural(message: str) -> MalformedDocumentError:
    return MalformedDocumentError(message)


def parse_dataset(document: str) -> Dataset:
    """Parse a "genrebar/1" document into a Dataset.

    Weight arrays that sum to one within tolerance are re-normalized to an
    exact sum on load, so serialization round-off never invalidates a file.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise _structural(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise _structural("top-level value must be an object")
    version = data.get("version")
    if version is None:
        raise _structural('missing "version" key')
    if version != DATASET_VERSION:
        raise UnknownVersionError(f"unknown format version {version!r}, expected {DATASET_VERSION!r}")

    genres = data.get("genres")
    if not isinstance(genres, list) or not all(isinstance(g, str) for g in genres):
        raise _structural('"genres" must be an array of strings')
    try:
        space = GenreSpace(tuple(genres))
    except ValueError as exc:
        raise ValidationFailedError(
            f"invalid genre list: {exc}",
            violations=[Violation(code="InvalidGenreList", message=str(exc))],
        ) from exc

    raw_songs = data.get("songs")
    if not isinstance(raw_songs, list):
        raise _structural('"songs" must be an array')

    songs: list[SongRecord] = []
    seen_ids: set[str] = set()
    for position, entry in enumerate(raw_songs):
        where = f"song record {position}"
        if not isinstance(entry, dict):
            raise _structural(f"{where} must be an object")
        song_id = entry.get("id")
        if not isinstance(song_id, str) or not song_id:
            raise _structural(f"{where} needs a non-empty string id")
        title = entry.get("title")
        artist = entry.get("artist")
        if not isinstance(title, str) or not isinstance(artist, str):
            raise _structural(f"{where} ({song_id!r}) needs string title and artist")
        weights = entry.get("weights")
        if not isinstance(weights, list) or not all(
            isinstance(w, (int, float)) and not isinstance(w, bool) for w in weights
        ):
            raise _structural(f"{where} ({song_id!r}) needs a numeric weights array")
        if song_id in seen_ids:
            raise ValidationFailedError(
                f"duplicate song id {song_id!r}",
                record_id=song_id,
                violations=[Violation(code="DuplicateId", message=f"id {song_id!r} repeats")],
            )
        violations = validate_vector(weights, space)
        if violations:
            raise ValidationFailedError(
                f"song {song_id!r} has an invalid genre vector",
                record_id=song_id,
                violations=violations,
            )
        seen_ids.add(song_id)
        vector = GenreVector(force_exact_sum([float(w) for w in weights]))
        songs.append(SongRecord(id=song_id, title=title, artist=artist, genres=vector))

    return Dataset(space=space, songs=tuple(songs))


def serialize_dataset(dataset: Dataset) -> str:
    """Render a Dataset as its canonical "genrebar/1" document.

    Equal datasets serialize to byte-identical text: keys in fixed order,
    records sorted by id, weights with exactly six decimal digits, one song
    per line, trailing newline.
    """
    genres = ", ".join(json.dumps(name) for name in dataset.space.names)
    lines = [
        "{",
        f'  "version": {json.dumps(DATASET_VERSION)},',
        f'  "genres": [{genres}],',
    ]
    if not dataset.songs:
        lines.append('  "songs": []')
    else:
        lines.append('  "songs": [')
        records = []
        for song in sorted(dataset.songs, key=lambda s: s.id):
            weights = ", ".join(f"{w:.6f}" for w in song.genres.weights)
            records.append(
                f'    {{"id": {json.dumps(song.id)}, "title": {json.dumps(song.title)}, '
                f'"artist": {json.dumps(song.artist)}, "weights": [{weights}]}}'
            )
        lines.append(",\n".join(records))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def generate_fixture(spec: FixtureSpec) -> Dataset:
    """Deterministic synthetic dataset, uniform on the simplex.

    Each vector is K unit-rate exponential variates normalized to sum one,
    then snapped to the canonical six-decimal grid. Ids are zero-padded to
    at least four digits so lexicographic and numeric order agree.
    """
    rng = np.random.default_rng(spec.seed)
    k = spec.space.k
    variates = rng.exponential(1.0, size=(spec.n_songs, k))
    name_picks = rng.integers(0, 12, size=(spec.n_songs, 4))
    width = max(4, len(str(spec.n_songs)))
    songs = []
    for i in range(spec.n_songs):
        total = math.fsum(variates[i])
        vector = GenreVector(force_exact_sum([min(x / total, 1.0) for x in variates[i]]))
        a, b, c, d = (int(p) for p in name_picks[i])
        songs.append(
            SongRecord(
                id=f"song-{i + 1:0{width}d}",
                title=f"{_TITLE_FIRST[a]} {_TITLE_SECOND[b]}",
                artist=f"{_ARTIST_FIRST[c]} {_ARTIST_LAST[d]}",
                genres=canonical_vector(vector),
            )
        )
    return Dataset(space=spec.space, songs=tuple(songs))


_F1_ROWS = (
    ("song-0001", "Half Moon Shuffle", "The Split Measures", (0.5, 0.25, 0.25)),
    ("song-0002", "County Line", "Mae Harlow", (0.223, 0.60, 0.177)),
    ("song-0003", "Twelve Bars Deep", "Elder Boone", (1.0, 0.0, 0.0)),
    ("song-0004", "Gravel Road Home", "The Tin Lanterns", (0.0, 1.0, 0.0)),
    ("song-0005", "Blue Note Evening", "Ada Quintrell", (0.0, 0.0, 1.0)),
    ("song-0006", "Three Way Split", "The Equal Parts", (1 / 3, 1 / 3, 1 / 3)),
)


def fixture_f1() -> Dataset:
    """The canonical six-song, three-genre demo dataset used across the tests."""
    space = GenreSpace(("Blues", "Country", "Jazz"))
    songs = tuple(
        SongRecord(id=sid, title=title, artist=artist, genres=canonical_vector(GenreVector(weights)))
        for sid, title, artist, weights in _F1_ROWS
    )
    return Dataset(space=space, songs=songs)
