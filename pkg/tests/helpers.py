"""Shared hypothesis strategies and builders for the test suite."""

from __future__ import annotations

import math

from hypothesis import strategies as st

from genrebar.core import GenreSpace, normalize


def make_space(k: int) -> GenreSpace:
    return GenreSpace(tuple(f"genre-{i}" for i in range(k)))


def raw_weights(k_min=2, k_max=6):
    return st.integers(k_min, k_max).flatmap(
        lambda k: st.lists(
            st.floats(min_value=0.0, max_value=1e6, allow_nan=False),
            min_size=k,
            max_size=k,
        ).filter(lambda xs: math.fsum(xs) > 1e-9)
    )


def simplex_vectors(k_min=2, k_max=6):
    return raw_weights(k_min, k_max).map(lambda xs: normalize(xs, make_space(len(xs))))
