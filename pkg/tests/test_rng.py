from __future__ import annotations

import numpy as np
import pytest

from polisim.rng import derive_run_stream, sample_fraction


def test_same_seed_same_sequence():
    a = derive_run_stream(7, 0).uniforms(100)
    b = derive_run_stream(7, 0).uniforms(100)
    assert np.array_equal(a, b)


def test_distinct_run_indices_are_independent():
    # no collision of the first 4 draws across 1,000 run indices
    firsts = {tuple(derive_run_stream(7, i).uniforms(4)) for i in range(1000)}
    assert len(firsts) == 1000


def test_distinct_base_seeds_differ():
    a = derive_run_stream(7, 0).uniforms(8)
    b = derive_run_stream(8, 0).uniforms(8)
    assert not np.array_equal(a, b)


def test_negative_run_index_rejected():
    with pytest.raises(ValueError):
        derive_run_stream(1, -1)


def test_sample_fraction_rounding():
    stream = derive_run_stream(1, 0)
    picked = sample_fraction(stream, list(range(400)), 0.021)
    assert len(picked) == 8              # round(8.4)
    assert len(set(picked)) == 8


def test_sample_fraction_edges():
    stream = derive_run_stream(1, 0)
    assert sample_fraction(stream, list(range(10)), 0.0) == []
    full = sample_fraction(stream, list(range(10)), 1.0)
    assert sorted(full) == list(range(10))
    with pytest.raises(ValueError):
        sample_fraction(stream, [1, 2], 1.5)


def test_sample_fraction_uniformity():
    # every item appears with roughly equal frequency over many rounds
    counts = np.zeros(20)
    stream = derive_run_stream(5, 0)
    for _ in range(2000):
        for item in sample_fraction(stream, list(range(20)), 0.25):
            counts[item] += 1
    assert counts.min() > 0.8 * counts.mean()
    assert counts.max() < 1.2 * counts.mean()


def test_partial_shuffle_contract():
    stream = derive_run_stream(2, 0)
    picked = stream.partial_shuffle(50, 12)
    assert len(picked) == 12
    assert len(set(picked.tolist())) == 12
    assert all(0 <= i < 50 for i in picked)
    with pytest.raises(ValueError):
        stream.partial_shuffle(5, 6)


def test_draw_counter_tracks_consumption():
    stream = derive_run_stream(3, 0)
    assert stream.draws == 0
    stream.uniform()
    stream.uniforms(10)
    stream.partial_shuffle(30, 5)
    stream.int_in(1, 6)
    assert stream.draws == 1 + 10 + 5 + 1


def test_int_in_bounds_and_coverage():
    stream = derive_run_stream(4, 0)
    values = {stream.int_in(1, 6) for _ in range(500)}
    assert values == {1, 2, 3, 4, 5, 6}


def test_choice_index_empty():
    stream = derive_run_stream(4, 0)
    with pytest.raises(ValueError):
        stream.choice_index(0)
