import json
import socket
import subprocess
import sys
import time
import urllib.error
import urllib.request

import pytest

from genrebar.cli import main
from genrebar.core import normalize
from genrebar.dataset_io import parse_dataset, serialize_dataset
from genrebar.search import search_top_k


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_ok(self, capsys, f1_path):
        code, out, _ = run_cli(capsys, "validate", str(f1_path))
        assert code == 0
        assert out.strip() == "OK (6 songs, 3 genres)"

    def test_sum_violation_names_record(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"version": "genrebar/1", "genres": ["A", "B"],'
            ' "songs": [{"id": "s1", "title": "t", "artist": "a", "weights": [0.5, 0.6]}]}'
        )
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == 1
        assert "s1" in err
        assert "SumOutOfTolerance" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "validate", str(tmp_path / "absent.json"))
        assert code == 2
        assert "cannot read" in err


class TestQuery:
    def test_ranking_matches_library(self, capsys, f1, f1_path):
        code, out, _ = run_cli(
            capsys, "query", str(f1_path), "--proportions", "0.223,0.60,0.177", "--porcelain"
        )
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()]
        expected = search_top_k(f1, normalize([0.223, 0.60, 0.177], f1.space), 5)
        assert [r[1] for r in rows] == [h.song_id for h in expected.entries]
        assert [r[4] for r in rows] == [f"{h.distance:.6f}" for h in expected.entries]
        assert rows[0][1] == "song-0002"
        assert rows[0][4] == "0.000000"

    def test_percentage_scale_same_ranking(self, capsys, f1_path):
        _, out_fracs, _ = run_cli(
            capsys, "query", str(f1_path), "--proportions", "0.223,0.60,0.177", "--porcelain"
        )
        _, out_pcts, _ = run_cli(
            capsys, "query", str(f1_path), "--proportions", "22.3,60,17.7", "--porcelain"
        )
        ids = lambda text: [line.split("\t")[1] for line in text.strip().splitlines()]
        assert ids(out_fracs) == ids(out_pcts)

    def test_human_output_renders_text_bars(self, capsys, f1_path):
        code, out, _ = run_cli(capsys, "query", str(f1_path), "--proportions", "1,0,0", "-k", "1")
        assert code == 0
        assert "song-0003" in out
        assert "#" * 40 in out  # pure-Blues song fills the whole 40-char bar
        assert "Blues=#" in out

    def test_k_zero_rejected(self, capsys, f1_path):
        code, _, err = run_cli(
            capsys, "query", str(f1_path), "--proportions", "1,1,1", "-k", "0"
        )
        assert code == 1
        assert "InvalidK" in err

    def test_zero_mass_rejected(self, capsys, f1_path):
        code, _, err = run_cli(capsys, "query", str(f1_path), "--proportions", "0,0,0")
        assert code == 1
        assert "ZeroMass" in err

    def test_unparseable_proportions(self, capsys, f1_path):
        code, _, err = run_cli(capsys, "query", str(f1_path), "--proportions", "a,b,c")
        assert code == 1

    def test_k_defaults_to_five(self, capsys, f1_path):
        _, out, _ = run_cli(capsys, "query", str(f1_path), "--proportions", "1,1,1", "--porcelain")
        assert len(out.strip().splitlines()) == 5


class TestGen:
    def test_deterministic_bytes(self, capsys):
        code, first, _ = run_cli(capsys, "gen", "--seed", "42", "--songs", "3",
                                 "--genres", "Blues,Country,Jazz")
        assert code == 0
        _, second, _ = run_cli(capsys, "gen", "--seed", "42", "--songs", "3",
                               "--genres", "Blues,Country,Jazz")
        assert first == second

    def test_single_genre_rejected(self, capsys):
        code, _, err = run_cli(capsys, "gen", "--genres", "Blues")
        assert code == 1

    def test_zero_songs_rejected(self, capsys):
        code, _, _ = run_cli(capsys, "gen", "--songs", "0")
        assert code == 1

    def test_output_passes_validate(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "gen", "--seed", "7", "--songs", "100")
        assert code == 0
        dataset = parse_dataset(out)
        assert len(dataset) == 100
        path = tmp_path / "gen.json"
        path.write_text(out, encoding="utf-8")
        code, out2, _ = run_cli(capsys, "validate", str(path))
        assert code == 0
        assert "OK (100 songs, 3 genres)" in out2


class TestServe:
    def test_invalid_dataset_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code = main(["serve", "--dataset", str(path), "--port", "0"])
        capsys.readouterr()
        assert code == 2

    def test_busy_port_exits_2(self, capsys, f1_path):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            code = main(["serve", "--dataset", str(f1_path), "--port", str(port)])
        finally:
            blocker.close()
        capsys.readouterr()
        assert code == 2

    def test_serve_smoke(self, f1_path, tmp_path):
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
        probe.close()
        process = subprocess.Popen(
            [sys.executable, "-m", "genrebar", "serve", "--dataset", str(f1_path),
             "--port", str(port), "--webui", str(tmp_path / "missing-dist")],
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        try:
            base = f"http://127.0.0.1:{port}"
            body = None
            for _ in range(200):
                try:
                    with urllib.request.urlopen(f"{base}/api/genres", timeout=1) as response:
                        body = response.read().decode()
                    break
                except OSError:
                    if process.poll() is not None:
                        raise AssertionError(process.stderr.read().decode())
                    time.sleep(0.05)
            assert body is not None
            assert json.loads(body) == {"genres": ["Blues", "Country", "Jazz"], "count": 6}
            # missing webui bundle leaves the API alive and "/" as a hint
            try:
                urllib.request.urlopen(base + "/", timeout=1)
                raise AssertionError("expected 404 from /")
            except urllib.error.HTTPError as exc:
                assert exc.code == 404
        finally:
            process.terminate()
            process.wait(timeout=10)


def test_unknown_subcommand_exits_nonzero():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
