import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import S, T
from planarflow import (
    ValueTableFile,
    all_cutsets,
    all_pairs_values,
    build_graph,
    fingerprint,
    gen_grid,
    gen_random_planar,
    sssk_fast,
)
from planarflow.errors import FingerprintMismatch
from planarflow.tables import TableFormatError, cutsets_from_json, cutsets_to_json, dumps


def test_table_file_round_trip(g1):
    f = ValueTableFile.for_graph(g1, all_pairs_values(g1, None))
    text = f.dumps()
    back = ValueTableFile.loads(text)
    assert back == f
    assert back.dumps() == text
    obj = json.loads(text)
    assert set(obj) == {"version", "fingerprint", "n", "entries", "kind"}
    assert obj["entries"][S][S] is None


def test_vector_file(g1):
    f = ValueTableFile.for_graph(g1, sssk_fast(g1, None, S))
    back = ValueTableFile.loads(f.dumps())
    assert back.kind == "vector"
    assert back.lookup(S, T) == 5
    with pytest.raises(TableFormatError):
        back.lookup(T, S)


def test_fingerprint_check(g1):
    f = ValueTableFile.for_graph(g1, all_pairs_values(g1, None))
    f.check(g1)
    with pytest.raises(FingerprintMismatch):
        f.check(gen_grid(2, 2, 1, 3, 0))
    # the rotation is part of the fingerprint
    assert fingerprint(g1) != fingerprint(g1.without_rotation())


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        "not json",
        '{"version": 2, "fingerprint": "x", "n": 1, "kind": "table", "entries": [[null]]}',
        '{"version": 1, "fingerprint": "x", "n": 2, "kind": "table", "entries": [[null]]}',
        '{"version": 1, "fingerprint": "x", "n": 1, "kind": "matrix", "entries": [[null]]}',
        '{"version": 1, "fingerprint": "x", "n": 2, "kind": "vector", "entries": [null]}',
        '{"version": 1, "n": 1, "kind": "table", "entries": [[null]]}',
    ],
)
def test_malformed_table_files(text):
    with pytest.raises(TableFormatError):
        ValueTableFile.loads(text)


def test_cutset_json_round_trip(g1):
    for dedup in (False, True):
        coll = all_cutsets(g1, None, dedup=dedup)
        obj = cutsets_to_json(g1, coll)
        back = cutsets_from_json(json.loads(dumps(obj)))
        assert back == coll
        assert dumps(cutsets_to_json(g1, back)) == dumps(obj)


def test_cutset_json_total_checked(g1):
    obj = cutsets_to_json(g1, all_cutsets(g1, None))
    obj["total_size"] += 1
    with pytest.raises(TableFormatError):
        cutsets_from_json(obj)


@given(st.builds(gen_random_planar, st.integers(2, 25), st.integers(0, 10**15), st.integers(0, 2**64 - 1)))
def test_table_json_round_trip_property(g):
    f = ValueTableFile.for_graph(g, all_pairs_values(g, None))
    text = f.dumps()
    assert ValueTableFile.loads(text).dumps() == text
    assert ValueTableFile.loads(text) == f


def test_huge_values_survive_json():
    g = build_graph(2, [(0, 1, 1 << 60)], [[0], [1]])
    f = ValueTableFile.for_graph(g, all_pairs_values(g, None))
    assert ValueTableFile.loads(f.dumps()).lookup(0, 1) == 1 << 60
