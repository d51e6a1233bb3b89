"""HTTP service exposing the dataset and search to clients.

State is one immutable (dataset, index) snapshot swapped wholesale on
reload: request handlers read the snapshot reference exactly once, so a
response can never mix songs from two dataset versions and in-flight
searches finish against the snapshot they started with. Wire formats and
error codes are documented in docs/http-api.md.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .core import Dataset, SongRecord, normalize
from .dataset_io import parse_dataset
from .errors import GenreBarError, InvalidKError
from .search import SearchIndex, build_index, search_top_k_indexed

DEFAULT_K = 5
DEFAULT_MAX_K = 100

# Domain error codes that map to HTTP 400 on the search path.
_BAD_REQUEST_CODES = {
    "DimensionMismatch",
    "NegativeWeight",
    "ZeroMass",
    "InvalidK",
    "EmptyDataset",
    "MalformedBody",
}


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8000
    dataset_path: Path | None = None
    default_k: int = DEFAULT_K
    max_k: int = DEFAULT_MAX_K
    webui_dir: Path | None = None

    def __post_init__(self):
        if not 1 <= self.default_k <= self.max_k:
            raise ValueError(
                f"default_k must satisfy 1 <= default_k <= max_k, got {self.default_k}/{self.max_k}"
            )


class ApiError(Exception):
    """Carried through handlers and rendered as {"error", "detail"} JSON."""

    def __init__(self, status: int, code: str, detail: str, violations: list | None = None):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail
        self.violations = violations


@dataclass(frozen=True)
class Snapshot:
    """One immutable dataset version plus its search index."""

    dataset: Dataset
    index: SearchIndex | None  # None only for an empty dataset


class DatasetStore:
    """Publishes immutable snapshots; reads are lock-free, reloads serialized."""

    def __init__(self, dataset_path: Path | None = None):
        self._path = Path(dataset_path) if dataset_path is not None else None
        self._reload_lock = threading.Lock()
        self._snapshot: Snapshot | None = None

    @property
    def snapshot(self) -> Snapshot | None:
        return self._snapshot

    def publish(self, dataset: Dataset) -> Snapshot:
        snapshot = Snapshot(dataset=dataset, index=build_index(dataset) if len(dataset) else None)
        self._snapshot = snapshot
        return snapshot

    def load_from_path(self) -> Snapshot:
        """Read, parse and publish the configured dataset file.

        The new snapshot is built fully before the swap; on any failure the
        previous snapshot keeps serving.
        """
        if self._path is None:
            raise ApiError(422, "NoDatasetPath", "service was started without a dataset path")
        with self._reload_lock:
            try:
                document = self._path.read_text(encoding="utf-8")
            except OSError as exc:
                raise ApiError(422, "ReadFailed", f"cannot read {self._path}: {exc}") from exc
            try:
                dataset = parse_dataset(document)
            except GenreBarError as exc:
                raise ApiError(
                    422,
                    exc.code,
                    str(exc),
                    violations=_violations_payload(exc),
                ) from exc
            return self.publish(dataset)


def _violations_payload(exc: GenreBarError) -> list | None:
    violations = getattr(exc, "violations", None)
    if not violations:
        return None
    return [
        {"code": v.code, "message": v.message, "index": v.index}
        for v in violations
    ]


def _song_payload(song: SongRecord) -> dict:
    return {
        "id": song.id,
        "title": song.title,
        "artist": song.artist,
        "proportions": list(song.genres.weights),
    }


def _require_snapshot(store: DatasetStore) -> Snapshot:
    snapshot = store.snapshot
    if snapshot is None:
        raise ApiError(503, "NoDataset", "no dataset loaded")
    return snapshot


def _parse_search_body(body, max_k: int, default_k: int) -> tuple[list[float], int]:
    if not isinstance(body, dict):
        raise ApiError(400, "MalformedBody", "request body must be a JSON object")
    proportions = body.get("proportions")
    if not isinstance(proportions, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in proportions
    ):
        raise ApiError(400, "MalformedBody", '"proportions" must be an array of numbers')
    if not all(math.isfinite(float(p)) for p in proportions):
        raise ApiError(400, "MalformedBody", '"proportions" must all be finite')
    k = body.get("k", default_k)
    if not isinstance(k, int) or isinstance(k, bool):
        raise ApiError(400, "InvalidK", '"k" must be an integer')
    if not 1 <= k <= max_k:
        raise ApiError(400, "InvalidK", f'"k" must be between 1 and {max_k}, got {k}')
    return [float(p) for p in proportions], k


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    """Build the service; loads the configured dataset eagerly when given."""
    config = config or ServiceConfig()
    app = FastAPI(title="genrebar", docs_url=None, redoc_url=None)
    store = DatasetStore(config.dataset_path)
    app.state.store = store
    app.state.config = config
    if config.dataset_path is not None:
        store.load_from_path()

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError):
        payload = {"error": exc.code, "detail": exc.detail}
        if exc.violations is not None:
            payload["violations"] = exc.violations
        return JSONResponse(payload, status_code=exc.status)

    @app.get("/api/genres")
    def genres():
        snapshot = _require_snapshot(store)
        return {"genres": list(snapshot.dataset.space.names), "count": len(snapshot.dataset)}

    @app.post("/api/search")
    async def search(request: Request):
        try:
            body = await request.json()
        except Exception as exc:
            raise ApiError(400, "MalformedBody", "request body must be valid JSON") from exc
        snapshot = _require_snapshot(store)
        proportions, k = _parse_search_body(body, config.max_k, config.default_k)
        try:
            query = normalize(proportions, snapshot.dataset.space)
            if snapshot.index is None:
                raise ApiError(400, "EmptyDataset", "dataset has no songs")
            result = search_top_k_indexed(snapshot.index, query, k)
        except GenreBarError as exc:
            status = 400 if exc.code in _BAD_REQUEST_CODES else 500
            raise ApiError(status, exc.code, str(exc)) from exc
        entries = []
        for hit in result.entries:
            song = snapshot.dataset.song(hit.song_id)
            entries.append({**_song_payload(song), "distance": hit.distance})
        return {"query": list(query.weights), "k": k, "entries": entries}

    @app.get("/api/songs/{song_id:path}")
    def song_by_id(song_id: str):
        snapshot = _require_snapshot(store)
        song = snapshot.dataset.song(song_id)
        if song is None:
            raise ApiError(404, "UnknownSong", f"no song with id {song_id!r}")
        return _song_payload(song)

    @app.post("/api/reload")
    def reload_dataset():
        snapshot = store.load_from_path()
        return {"status": "ok", "count": len(snapshot.dataset)}

    webui = config.webui_dir
    if webui is not None and Path(webui).is_dir():
        app.mount("/", StaticFiles(directory=webui, html=True), name="webui")
    else:

        @app.get("/")
        def no_webui():
            return JSONResponse(
                {
                    "error": "NoWebUi",
                    "detail": "web UI bundle not built; the API is available under /api",
                },
                status_code=404,
            )

    return app
