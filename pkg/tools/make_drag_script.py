"""Regenerate tests/data/drag_script.json.

The file freezes drag sequences plus the bar model's resulting vectors; the
frontend replays the same events through its TypeScript port and must land
on identical values. Rerun after any change to the drag semantics:

    python3 tools/make_drag_script.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from genrebar.bar import BarState, DragEvent, apply_drag
from genrebar.core import GenreSpace, GenreVector

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "drag_script.json"


def build_script(name: str, genres: tuple[str, ...], initial: tuple[float, ...], seed: int, steps: int):
    rng = random.Random(seed)
    state = BarState.from_vector(GenreVector(initial))
    k = len(initial)
    events = []
    for _ in range(steps):
        event = DragEvent(rng.randrange(k - 1), round(rng.uniform(-0.2, 1.2), 4))
        events.append({"handle": event.handle_index, "target": event.target_position})
        state = apply_drag(state, event)
    return {
        "name": name,
        "genres": list(genres),
        "initial": list(initial),
        "events": events,
        "final": list(state.vector.weights),
        "finalHandles": list(state.handles),
    }


def main() -> None:
    scripts = [
        build_script(
            "toy-three-genre",
            ("Blues", "Country", "Jazz"),
            (0.5, 0.25, 0.25),
            seed=1001,
            steps=40,
        ),
        build_script(
            "four-genre",
            ("Blues", "Country", "Jazz", "Folk"),
            (0.4, 0.3, 0.2, 0.1),
            seed=2002,
            steps=60,
        ),
    ]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"scripts": scripts}, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
