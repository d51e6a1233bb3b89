"""Command-line entry point: validate datasets, query, generate, serve.

Exit codes are stable: 0 success, 1 domain/validation error, 2
environment/IO error (unreadable file, busy port). GENREBAR_PORT and
GENREBAR_DATASET override the corresponding serve flags.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
from pathlib import Path

from .bar import BarState, segment_pixel_widths
from .core import GenreSpace, normalize
from .dataset_io import FixtureSpec, generate_fixture, parse_dataset, serialize_dataset
from .errors import GenreBarError, InvalidKError, ValidationFailedError
from .search import search_top_k
from .service import ServiceConfig, create_app

TEXT_BAR_WIDTH = 40

# One fill character per genre index; cycles past eight genres.
FILL_CHARS = "#=+*%@&~"

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_ENV = 2


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_dataset(path: str):
    """Returns (dataset, exit_code); exit_code is None on success."""
    try:
        document = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        return None, _fail(f"cannot read {path}: {exc}", EXIT_ENV)
    try:
        return parse_dataset(document), None
    except ValidationFailedError as exc:
        record = f" (record {exc.record_id})" if exc.record_id else ""
        print(f"error: {exc.code}{record}: {exc.detail}", file=sys.stderr)
        for violation in exc.violations:
            at = f" at index {violation.index}" if violation.index is not None else ""
            print(f"  - {violation.code}{at}: {violation.message}", file=sys.stderr)
        return None, EXIT_DOMAIN
    except GenreBarError as exc:
        return None, _fail(f"{exc.code}: {exc.detail}", EXIT_DOMAIN)


def cmd_validate(args) -> int:
    dataset, code = _read_dataset(args.file)
    if code is not None:
        return code
    print(f"OK ({len(dataset)} songs, {dataset.space.k} genres)")
    return EXIT_OK


def _text_bar(state: BarState) -> str:
    widths = segment_pixel_widths(state, TEXT_BAR_WIDTH)
    return "".join(FILL_CHARS[i % len(FILL_CHARS)] * w for i, w in enumerate(widths))


def cmd_query(args) -> int:
    dataset, code = _read_dataset(args.file)
    if code is not None:
        return code
    try:
        raw = [float(part) for part in args.proportions.split(",")]
    except ValueError:
        return _fail(f"cannot parse proportions {args.proportions!r} as numbers", EXIT_DOMAIN)
    try:
        if args.k < 1:
            raise InvalidKError(f"k must be at least 1, got {args.k}")
        query = normalize(raw, dataset.space)
        result = search_top_k(dataset, query, args.k)
    except GenreBarError as exc:
        return _fail(f"{exc.code}: {exc.detail}", EXIT_DOMAIN)

    if args.porcelain:
        for rank, hit in enumerate(result.entries, start=1):
            song = dataset.song(hit.song_id)
            proportions = ",".join(f"{w:.6f}" for w in song.genres.weights)
            print(f"{rank}\t{song.id}\t{song.title}\t{song.artist}\t{hit.distance:.6f}\t{proportions}")
        return EXIT_OK

    legend = "  ".join(
        f"{name}={FILL_CHARS[i % len(FILL_CHARS)]}" for i, name in enumerate(dataset.space.names)
    )
    echoed = " ".join(f"{w:.6f}" for w in query.weights)
    print(f"query: [{echoed}]  k={args.k}")
    print(f"genres: {legend}")
    id_width = max((len(hit.song_id) for hit in result.entries), default=4)
    title_width = max(
        (len(dataset.song(hit.song_id).title) for hit in result.entries), default=5
    )
    for rank, hit in enumerate(result.entries, start=1):
        song = dataset.song(hit.song_id)
        bar = _text_bar(BarState.from_vector(song.genres))
        print(
            f"{rank:>4}  {song.id:<{id_width}}  {song.title:<{title_width}}  "
            f"{hit.distance:.6f}  {bar}"
        )
    return EXIT_OK


def cmd_gen(args) -> int:
    names = tuple(part.strip() for part in args.genres.split(","))
    try:
        space = GenreSpace(names)
    except ValueError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    if args.songs < 1:
        return _fail(f"--songs must be at least 1, got {args.songs}", EXIT_DOMAIN)
    dataset = generate_fixture(FixtureSpec(seed=args.seed, n_songs=args.songs, space=space))
    sys.stdout.write(serialize_dataset(dataset))
    return EXIT_OK


def _bind_socket(host: str, port: int) -> socket.socket:
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    sock.bind((host, port))
    sock.listen(128)
    return sock


def cmd_serve(args) -> int:
    import uvicorn

    dataset_path = os.environ.get("GENREBAR_DATASET", args.dataset)
    if dataset_path is None:
        return _fail("serve needs --dataset or GENREBAR_DATASET", EXIT_ENV)
    port_text = os.environ.get("GENREBAR_PORT")
    if port_text is not None:
        try:
            port = int(port_text)
        except ValueError:
            return _fail(f"GENREBAR_PORT is not an integer: {port_text!r}", EXIT_ENV)
    else:
        port = args.port

    dataset, code = _read_dataset(dataset_path)
    if code is not None:
        return EXIT_ENV  # invalid dataset refuses to serve, regardless of failure kind
    webui = Path(args.webui) if args.webui else None
    if webui is not None and not webui.is_dir():
        webui = None
    config = ServiceConfig(
        port=port,
        dataset_path=Path(dataset_path),
        default_k=args.default_k,
        max_k=args.max_k,
        webui_dir=webui,
    )
    try:
        sock = _bind_socket(args.host, port)
    except OSError as exc:
        return _fail(f"cannot bind {args.host}:{port}: {exc}", EXIT_ENV)
    app = create_app(config)
    print(
        f"serving {len(dataset)} songs / {dataset.space.k} genres "
        f"on http://{args.host}:{port}",
        file=sys.stderr,
    )
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genrebar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a dataset file")
    p_validate.add_argument("file")
    p_validate.set_defaults(func=cmd_validate)

    p_query = sub.add_parser("query", help="top-k search against a dataset file")
    p_query.add_argument("file")
    p_query.add_argument(
        "--proportions",
        required=True,
        help="comma-separated proportions in genre-space order (any nonnegative scale)",
    )
    p_query.add_argument("-k", type=int, default=5, help="number of songs (default 5)")
    p_query.add_argument(
        "--porcelain", action="store_true", help="tab-separated machine-readable output"
    )
    p_query.set_defaults(func=cmd_query)

    p_gen = sub.add_parser("gen", help="write a deterministic fixture dataset to stdout")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--songs", type=int, default=10)
    p_gen.add_argument("--genres", default="Blues,Country,Jazz", help="comma-separated genre names")
    p_gen.set_defaults(func=cmd_gen)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--dataset", help="dataset file (env GENREBAR_DATASET overrides)")
    p_serve.add_argument("--port", type=int, default=8000, help="port (env GENREBAR_PORT overrides)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--default-k", type=int, default=5, dest="default_k")
    p_serve.add_argument("--max-k", type=int, default=100, dest="max_k")
    p_serve.add_argument(
        "--webui",
        default="frontend/dist",
        help="directory with the built web UI (served at /; API works without it)",
    )
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
