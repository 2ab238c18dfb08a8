import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planarflow import build_graph, derive_dual, gen_grid, gen_random_planar, validate_embedding
from planarflow.errors import (
    CapacityOutOfRange,
    DanglingDart,
    DuplicateDart,
    EulerViolation,
    IdOutOfRange,
    InvalidEmbedding,
    NotConnected,
)
from planarflow.graph import FaceStructure, require_faces, trace_faces

TRIANGLE_ARCS = [(0, 1, 1), (1, 2, 1), (2, 0, 1)]
# arc k: tail-dart 2k, head-dart 2k+1
TRIANGLE_ROT = [[0, 5], [2, 1], [4, 3]]


def test_single_arc_graph():
    g = build_graph(2, [(0, 1, 7)], [[0], [1]])
    assert g.m == 1
    assert g.arcs[0].capacity == 7


def test_triangle_has_two_faces():
    g = build_graph(3, TRIANGLE_ARCS, TRIANGLE_ROT)
    faces = validate_embedding(g)
    assert faces.f == 2
    assert g.n - g.m + faces.f == 2


def test_id_out_of_range():
    with pytest.raises(IdOutOfRange):
        build_graph(2, [(0, 5, 1)])


@pytest.mark.parametrize(
    "arcs, rotation, exc",
    [
        ([(0, 1, -1)], None, CapacityOutOfRange),
        ([(0, 1, 1 << 61)], None, CapacityOutOfRange),
        ([(0, 1, 1 << 60)] * 5, None, CapacityOutOfRange),  # total above 2^62
        ([(0, 1, 1)], [[0, 0], [1]], DuplicateDart),
        ([(0, 1, 1)], [[1], [0]], DanglingDart),
        ([(0, 1, 1)], [[0], []], DanglingDart),
        ([(0, 1, 1)], [[0], [3]], IdOutOfRange),
    ],
)
def test_build_graph_rejects(arcs, rotation, exc):
    with pytest.raises(exc):
        build_graph(2, arcs, rotation)


def test_rotation_kept_verbatim():
    g = build_graph(3, TRIANGLE_ARCS, TRIANGLE_ROT)
    assert [list(r) for r in g.rotation] == TRIANGLE_ROT


def test_tree_has_one_face():
    faces = validate_embedding(build_graph(2, [(0, 1, 3)], [[0], [1]]))
    assert faces.f == 1


def test_lone_vertex():
    faces = validate_embedding(build_graph(1, [], [[]]))
    assert faces.f == 1


def test_disconnected_is_its_own_error():
    g = build_graph(4, [(0, 1, 1), (2, 3, 1)], [[0], [1], [2], [3]])
    with pytest.raises(NotConnected):
        validate_embedding(g)


def _k5():
    arcs = [(i, j, 1) for i, j in itertools.combinations(range(5), 2)]
    darts = [[] for _ in range(5)]
    for k, (i, j, _) in enumerate(arcs):
        darts[i].append(2 * k)
        darts[j].append(2 * k + 1)
    return arcs, darts


def test_k5_never_planar():
    arcs, darts = _k5()
    with pytest.raises(EulerViolation) as info:
        validate_embedding(build_graph(5, arcs, darts))
    assert (info.value.n, info.value.m) == (5, 10)


def test_k5_exhaustive_face_counts():
    # every rotation system of K5 (fixing the first dart at each vertex)
    # traces fewer than the 7 faces Euler's formula would need
    arcs, darts = _k5()
    best = 0
    options = [[[d[0], *p] for p in itertools.permutations(d[1:])] for d in darts]
    for rot in itertools.product(*options):
        _, cycles = trace_faces(build_graph(5, arcs, rot))
        best = max(best, len(cycles))
    assert best < 7


def test_no_rotation_is_invalid():
    with pytest.raises(InvalidEmbedding):
        validate_embedding(build_graph(2, [(0, 1, 1)]))


def test_dual_of_triangle():
    g = build_graph(3, TRIANGLE_ARCS, TRIANGLE_ROT)
    dual = derive_dual(g, validate_embedding(g))
    assert dual.n_faces == 2
    assert len(dual.arcs) == 3


def test_dual_of_single_arc_is_loop():
    g = build_graph(2, [(0, 1, 5)], [[0], [1]])
    dual = derive_dual(g, validate_embedding(g))
    assert dual.n_faces == 1
    (arc,) = dual.arcs
    assert arc.tail == arc.head == 0
    assert arc.capacity == 5


def test_dual_of_small_grid():
    g = gen_grid(2, 2, 1, 9, 0)
    dual = derive_dual(g, validate_embedding(g))
    assert (g.n, g.m, dual.n_faces, len(dual.arcs)) == (4, 4, 2, 4)
    # every arc borders the inner square on one side and the outer face on the other
    assert all(a.tail != a.head for a in dual.arcs)


def test_foreign_faces_rejected():
    g = build_graph(3, TRIANGLE_ARCS, TRIANGLE_ROT)
    other = validate_embedding(gen_grid(2, 2, 1, 1, 0))
    with pytest.raises(InvalidEmbedding):
        require_faces(g, other)
    with pytest.raises(InvalidEmbedding):
        require_faces(g, FaceStructure(3, 3, (0,) * 6, ((),)))


instances = st.one_of(
    st.builds(gen_random_planar, st.integers(2, 60), st.integers(0, 20), st.integers(0, 2**64 - 1)),
    st.builds(gen_grid, st.integers(1, 6), st.integers(1, 6), st.just(0), st.integers(0, 9), st.integers(0, 99)),
)


@given(instances)
def test_faces_partition_darts(g):
    faces = validate_embedding(g)
    assert len(faces.face_of_dart) == 2 * g.m
    counted = sorted(d for cyc in faces.cycles for d in cyc)
    assert counted == list(range(2 * g.m))
    for fid, cyc in enumerate(faces.cycles):
        assert all(faces.face_of_dart[d] == fid for d in cyc)


@given(instances)
def test_dual_cross_reference_round_trips(g):
    faces = validate_embedding(g)
    dual = derive_dual(g, faces)
    assert len(dual.arcs) == g.m
    for k in range(g.m):
        assert dual.dual_to_primal[dual.primal_to_dual[k]] == k
        assert dual.arcs[dual.primal_to_dual[k]].capacity == g.arcs[k].capacity
