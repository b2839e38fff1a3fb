from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oppgen.embedding import (
    FallbackEmbedder,
    centroid,
    cosine_distance,
    is_unit,
)
from oppgen.errors import DimensionMismatch, EmptyInput, EmptyText, ZeroVector


@pytest.fixture(scope="module")
def embedder():
    return FallbackEmbedder(dimension=384, seed=0)


def test_embed_unit_norm(embedder):
    vecs = embedder.embed(["seaside towns", "x", "a much longer piece of text about inns"])
    for v in vecs:
        assert is_unit(v)


def test_embed_deterministic(embedder):
    a = embedder.embed(["coastal regeneration strategy"])[0]
    b = embedder.embed(["coastal regeneration strategy"])[0]
    assert np.array_equal(a, b)
    # a fresh instance with the same seed agrees too
    c = FallbackEmbedder(dimension=384, seed=0).embed(["coastal regeneration strategy"])[0]
    assert np.array_equal(a, c)


def test_embed_seed_changes_vectors():
    a = FallbackEmbedder(seed=0).embed(["coastal regeneration"])[0]
    b = FallbackEmbedder(seed=1).embed(["coastal regeneration"])[0]
    assert not np.allclose(a, b)


def test_embed_rejects_empty_text(embedder):
    with pytest.raises(EmptyText):
        embedder.embed([""])
    with pytest.raises(EmptyText):
        embedder.embed(["ok", ""])


def test_embed_order_preserving(embedder):
    texts = ["alpha beta", "gamma delta", "epsilon zeta"]
    batch = embedder.embed(texts)
    singles = [embedder.embed([t])[0] for t in texts]
    for row, single in zip(batch, singles):
        assert np.array_equal(row, single)


def test_ngram_overlap_monotonicity(embedder):
    # distance(no shared n-grams) >= distance(~50% shared n-grams)
    base = "harbour pier fishing boats tides"
    half = "harbour pier fishing wwww qqqq"
    disjoint = "zzzz xxxx vvvv kkkk jjjj"
    e = embedder.embed([base, half, disjoint])
    d_half = cosine_distance(e[0], e[1])
    d_disjoint = cosine_distance(e[0], e[2])
    assert d_disjoint >= d_half
    assert d_half > 0.0


def test_cosine_distance_identical_is_zero(embedder):
    v = embedder.embed(["same text"])[0]
    assert cosine_distance(v, v) < 1e-9


def test_cosine_distance_orthogonal_and_antipodal():
    u = np.array([1.0, 0.0])
    v = np.array([0.0, 1.0])
    assert cosine_distance(u, v) == pytest.approx(1.0)
    assert cosine_distance(u, -u) == pytest.approx(2.0)


def test_cosine_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        cosine_distance(np.array([1.0, 0.0]), np.array([1.0, 0.0, 0.0]))


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_cosine_distance_symmetry(seed):
    rng = np.random.default_rng(seed)
    u = rng.normal(size=16)
    v = rng.normal(size=16)
    u /= np.linalg.norm(u)
    v /= np.linalg.norm(v)
    assert cosine_distance(u, v) == pytest.approx(cosine_distance(v, u), abs=1e-12)
    assert 0.0 <= cosine_distance(u, v) <= 2.0


def test_centroid_single_vector_is_itself():
    v = np.array([0.6, 0.8], dtype=np.float32)
    assert np.allclose(centroid([v]), v, atol=1e-6)


def test_centroid_derived_two_orthogonal():
    # mean of (1,0) and (0,1) is (0.5, 0.5); normalized -> (0.7071, 0.7071)
    c = centroid([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    assert c[0] == pytest.approx(0.7071, abs=1e-4)
    assert c[1] == pytest.approx(0.7071, abs=1e-4)


def test_centroid_of_copies_is_the_vector():
    v = np.array([0.0, 1.0, 0.0])
    assert np.allclose(centroid([v, v, v, v]), v, atol=1e-7)


def test_centroid_empty_rejected():
    with pytest.raises(EmptyInput):
        centroid([])


def test_centroid_zero_mean_rejected():
    with pytest.raises(ZeroVector):
        centroid([np.array([1.0, 0.0]), np.array([-1.0, 0.0])])
