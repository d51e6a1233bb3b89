from __future__ import annotations

import threading
import time

import pytest
import uvicorn

from genrebar.core import GenreSpace
from genrebar.dataset_io import fixture_f1, serialize_dataset


@pytest.fixture
def space3():
    return GenreSpace(("Blues", "Country", "Jazz"))


@pytest.fixture
def f1():
    return fixture_f1()


@pytest.fixture
def f1_path(tmp_path, f1):
    path = tmp_path / "f1.json"
    path.write_text(serialize_dataset(f1), encoding="utf-8")
    return path


class LiveServer:
    """Real uvicorn server on an ephemeral port, run in a background thread."""

    def __init__(self, app):
        self._server = uvicorn.Server(
            uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
        )
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    def __enter__(self):
        self._thread.start()
        deadline = time.monotonic() + 15
        while not self._server.started:
            if time.monotonic() > deadline:
                raise RuntimeError("server did not start within 15s")
            time.sleep(0.01)
        port = self._server.servers[0].sockets[0].getsockname()[1]
        self.base_url = f"http://127.0.0.1:{port}"
        return self

    def __exit__(self, *exc_info):
        self._server.should_exit = True
        self._thread.join(timeout=15)


@pytest.fixture
def live_server():
    return LiveServer


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {name}: {'PASS' if report.passed else 'FAIL'}")
