"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a PASS/FAIL line (see conftest.pytest_runtest_logreport).
This suite must pass with no web UI build present; nothing here touches
frontend artifacts.
"""

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor

import requests
from fastapi.testclient import TestClient

from genrebar.bar import BarState, DragEvent, apply_drag, handles_from_vector, vector_from_handles
from genrebar.cli import main as cli_main
from genrebar.core import Dataset, GenreVector, SongRecord, normalize
from genrebar.dataset_io import (
    FixtureSpec,
    fixture_f1,
    generate_fixture,
    parse_dataset,
    serialize_dataset,
)
from genrebar.search import build_index, search_top_k, search_top_k_indexed
from genrebar.service import ServiceConfig, create_app
from conftest import LiveServer
from helpers import make_space
from test_search import oracle_top_k, random_dataset, random_query


def test_oracle_equivalence_randomized():
    """Both search paths match an independent exhaustive-sort oracle exactly,
    including tie order, over 100 randomized trials; runtime under 30 s."""
    rng = random.Random(0xBA55)
    started = time.monotonic()
    for trial in range(100):
        n = rng.randint(1, 500)
        k_dims = rng.randint(2, 6)
        dataset = random_dataset(rng, n, k_dims)
        query = random_query(rng, k_dims)
        k = rng.randint(1, n + 5)
        expected = oracle_top_k(dataset, query, k)
        brute = search_top_k(dataset, query, k)
        indexed = search_top_k_indexed(build_index(dataset), query, k)
        assert [h.song_id for h in brute.entries] == [sid for sid, _ in expected], f"trial {trial}"
        assert [h.song_id for h in indexed.entries] == [sid for sid, _ in expected], f"trial {trial}"
        for hit, (_, dist) in zip(brute.entries, expected):
            assert abs(hit.distance - dist) <= 1e-12
        assert indexed.entries == brute.entries
    assert time.monotonic() - started < 30.0


def test_slider_scenario_library_cli_http_agree(capsys, f1_path):
    """The worked slider query returns the exact-match song first at distance
    zero, the rest ordered per the oracle, identically via library, CLI and
    HTTP. Distance tolerance 1e-9."""
    f1 = fixture_f1()
    proportions = [0.223, 0.60, 0.177]
    query = normalize(proportions, f1.space)
    expected = oracle_top_k(f1, query, 5)

    library = search_top_k(f1, query, 5)
    assert library.entries[0].song_id == "song-0002"
    assert abs(library.entries[0].distance) <= 1e-9
    assert f"{library.entries[0].distance:.6f}" == "0.000000"
    assert [h.song_id for h in library.entries] == [sid for sid, _ in expected]
    for hit, (_, dist) in zip(library.entries, expected):
        assert abs(hit.distance - dist) <= 1e-9

    code = cli_main(
        ["query", str(f1_path), "--proportions", "0.223,0.60,0.177", "-k", "5", "--porcelain"]
    )
    out = capsys.readouterr().out
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert [row[1] for row in rows] == [h.song_id for h in library.entries]
    for row, hit in zip(rows, library.entries):
        assert row[4] == f"{hit.distance:.6f}"  # CLI prints 6-decimal distances
    assert rows[0][4] == "0.000000"

    client = TestClient(create_app(ServiceConfig(dataset_path=f1_path)))
    response = client.post("/api/search", json={"proportions": proportions, "k": 5})
    assert response.status_code == 200
    entries = response.json()["entries"]
    assert [e["id"] for e in entries] == [h.song_id for h in library.entries]
    for wire, hit in zip(entries, library.entries):
        assert abs(wire["distance"] - hit.distance) <= 1e-9


def test_default_playlist_size_is_five(f1_path, tmp_path, space3):
    """Omitting k in POST /api/search returns exactly 5 entries on any
    dataset with at least 5 songs."""
    client = TestClient(create_app(ServiceConfig(dataset_path=f1_path)))
    response = client.post("/api/search", json={"proportions": [1, 1, 1]})
    assert len(response.json()["entries"]) == 5

    bigger = generate_fixture(FixtureSpec(seed=97, n_songs=50, space=space3))
    path = tmp_path / "bigger.json"
    path.write_text(serialize_dataset(bigger), encoding="utf-8")
    client = TestClient(create_app(ServiceConfig(dataset_path=path)))
    response = client.post("/api/search", json={"proportions": [3, 2, 1]})
    assert len(response.json()["entries"]) == 5


def test_simplex_closure_under_drag_fuzz():
    """10^4 random drags never break the simplex invariants; every drag
    touches at most two components and conserves their combined mass."""
    rng = random.Random(0xD12A6)
    state = None
    for step in range(10_000):
        if state is None or step % 500 == 0:
            k = rng.randint(2, 6)
            raw = [rng.random() + 1e-6 for _ in range(k)]
            state = BarState.from_vector(normalize(raw, make_space(k)))
        k = len(state.vector.weights)
        event = DragEvent(rng.randrange(k - 1), rng.uniform(-0.3, 1.3))
        moved = apply_drag(state, event)

        weights = moved.vector.weights
        assert all(0.0 <= w <= 1.0 for w in weights)
        assert abs(math.fsum(weights) - 1.0) <= 1e-12
        changed = [
            j for j, (a, b) in enumerate(zip(state.vector.weights, weights)) if a != b
        ]
        assert len(changed) <= 2
        assert all(j in (event.handle_index, event.handle_index + 1) for j in changed)
        i = event.handle_index
        before = state.vector.weights[i] + state.vector.weights[i + 1]
        after = weights[i] + weights[i + 1]
        assert abs(before - after) <= 1e-12
        state = moved


def test_round_trips():
    """parse/serialize identity on 50 random fixtures, handle round trips
    within 1e-12, canonical serialization byte-identical across runs."""
    rng = random.Random(515151)
    for trial in range(50):
        k = rng.randint(2, 6)
        spec = FixtureSpec(
            seed=rng.randrange(2**63),
            n_songs=rng.randint(1, 40),
            space=make_space(k),
        )
        dataset = generate_fixture(spec)
        document = serialize_dataset(dataset)
        reparsed = parse_dataset(document)
        assert reparsed.space == dataset.space
        assert [s.id for s in reparsed.songs] == [s.id for s in dataset.songs]
        for original, back in zip(dataset.songs, reparsed.songs):
            assert back.title == original.title and back.artist == original.artist
            for a, b in zip(original.genres.weights, back.genres.weights):
                assert abs(a - b) <= 1e-12
        assert serialize_dataset(reparsed) == document  # canonical, two runs byte-identical

        vector = normalize([rng.random() + 1e-9 for _ in range(k)], make_space(k))
        back = vector_from_handles(handles_from_vector(vector), make_space(k))
        assert all(abs(a - b) <= 1e-12 for a, b in zip(vector.weights, back.weights))


def test_fixture_statistics_uniform_on_simplex(space3):
    """Component means of the seed-42, 10^4-song fixture are within 0.01 of 1/3."""
    dataset = generate_fixture(FixtureSpec(seed=42, n_songs=10_000, space=space3))
    n = len(dataset)
    for i in range(3):
        mean = math.fsum(song.genres.weights[i] for song in dataset.songs) / n
        assert abs(mean - 1 / 3) < 0.01, f"component {i} mean {mean}"


def test_reload_atomicity_under_concurrent_searches(tmp_path, space3):
    """100 concurrent searches during reloads all succeed and each response
    is internally consistent with exactly one dataset snapshot."""

    def tagged(version: str, seed: int) -> Dataset:
        base = generate_fixture(FixtureSpec(seed=seed, n_songs=30, space=space3))
        songs = tuple(
            SongRecord(id=s.id, title=f"{version} {s.title}", artist=s.artist, genres=s.genres)
            for s in base.songs
        )
        return Dataset(space=space3, songs=songs)

    documents = [serialize_dataset(tagged("v1", 1)), serialize_dataset(tagged("v2", 2))]
    path = tmp_path / "hot.json"
    path.write_text(documents[0], encoding="utf-8")
    app = create_app(ServiceConfig(dataset_path=path))

    with LiveServer(app) as server:
        def worker(_index):
            session = requests.Session()
            outcomes = []
            for _ in range(3):
                response = session.post(
                    f"{server.base_url}/api/search",
                    json={"proportions": [random.random() + 0.01 for _ in range(3)], "k": 10},
                    timeout=30,
                )
                assert response.status_code == 200
                entries = response.json()["entries"]
                assert len(entries) == 10
                versions = {entry["title"].split()[0] for entry in entries}
                assert len(versions) == 1, f"mixed snapshot: {versions}"
                outcomes.append(versions.pop())
            return outcomes

        with ThreadPoolExecutor(max_workers=100) as pool:
            futures = [pool.submit(worker, i) for i in range(100)]
            session = requests.Session()
            for flip in range(10):
                path.write_text(documents[(flip + 1) % 2], encoding="utf-8")
                reload_response = session.post(f"{server.base_url}/api/reload", timeout=30)
                assert reload_response.status_code == 200
                time.sleep(0.02)
            seen = set()
            for future in futures:
                seen.update(future.result())
        assert seen <= {"v1", "v2"}
