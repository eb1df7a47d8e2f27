import pytest
from hypothesis import given, strategies as st

from quivermod import (QuiverError, compose, enumerate_dimvectors,
                       enumerate_paths, euler_form, quiver, theta_pairing,
                       trivial_path, validate_quiver)


def test_validate_a2():
    q = validate_quiver({"vertices": 2, "arrows": [{"id": "a", "src": 1, "tgt": 2}]})
    assert q.vertex_count == 2 and q.acyclic


def test_validate_self_loop_cyclic():
    q = validate_quiver({"vertices": 1, "arrows": [{"id": "l", "src": 1, "tgt": 1}]})
    assert not q.acyclic


def test_validate_out_of_range():
    with pytest.raises(QuiverError):
        validate_quiver({"vertices": 2, "arrows": [{"id": "a", "src": 1, "tgt": 3}]})


def test_validate_duplicate_id():
    with pytest.raises(QuiverError):
        quiver(2, [("a", 1, 2), ("a", 1, 2)])


def test_paths_a2(a2):
    assert [str(p) for p in enumerate_paths(a2)] == ["e1", "e2", "a"]


def test_paths_single_vertex():
    q = quiver(1, [])
    assert [str(p) for p in enumerate_paths(q)] == ["e1"]


def test_paths_k3_count(k3):
    assert len(enumerate_paths(k3)) == 5


def test_paths_cyclic_needs_bound():
    q = quiver(1, [("l", 1, 1)])
    with pytest.raises(QuiverError):
        enumerate_paths(q)
    assert len(enumerate_paths(q, max_len=3)) == 4


def test_paths_deterministic(a3):
    assert enumerate_paths(a3) == enumerate_paths(a3)
    assert [str(p) for p in enumerate_paths(a3)] == ["e1", "e2", "e3", "a", "b", "b*a"]


def test_path_composition(a3):
    a = enumerate_paths(a3)[3]
    b = enumerate_paths(a3)[4]
    ba = compose(b, a)  # apply a, then b
    assert (ba.source, ba.target, ba.arrows) == (1, 3, ("a", "b"))
    with pytest.raises(QuiverError):
        compose(a, b)


def test_euler_examples(a2, k3, arrowfree2):
    assert euler_form(arrowfree2, (1, 2), (3, 4)) == 11
    assert euler_form(k3, (1, 1), (1, 1)) == -1
    assert euler_form(a2, (1, 1), (1, 1)) == 1


def test_euler_length_mismatch(k3):
    with pytest.raises(QuiverError):
        euler_form(k3, (1,), (1, 1))


def test_theta_examples():
    assert theta_pairing((-1, 1), (2, 3)) == 1
    assert theta_pairing((5, -7), (0, 0)) == 0
    for n in range(5):
        assert theta_pairing((-1, 1), (n, n)) == 0
    with pytest.raises(QuiverError):
        theta_pairing((1,), (1, 2))


def test_dimvec_examples(k3):
    assert enumerate_dimvectors(k3, 2, (-1, 1)) == [(1, 1)]
    assert enumerate_dimvectors(k3, 3, (-1, 1)) == []
    assert enumerate_dimvectors(k3, 0, (7, -3)) == [(0, 0)]


def test_dimvecs_sorted(a3):
    vecs = enumerate_dimvectors(a3, 4, (1, -1, 0))
    assert vecs == sorted(vecs)
    assert all(sum(v) == 4 and theta_pairing((1, -1, 0), v) == 0 for v in vecs)


small_vec = st.tuples(*([st.integers(-20, 20)] * 2))


@given(small_vec, small_vec, small_vec)
def test_euler_bilinear(a, b, c):
    q = quiver(2, [("x", 1, 2), ("y", 1, 2), ("z", 1, 2)])
    asum = tuple(x + y for x, y in zip(a, b))
    assert euler_form(q, asum, c) == euler_form(q, a, c) + euler_form(q, b, c)
    csum = tuple(x + y for x, y in zip(b, c))
    assert euler_form(q, a, csum) == euler_form(q, a, b) + euler_form(q, a, c)


@given(small_vec, small_vec, small_vec)
def test_theta_linear(t, a, b):
    asum = tuple(x + y for x, y in zip(a, b))
    assert theta_pairing(t, asum) == theta_pairing(t, a) + theta_pairing(t, b)
    assert theta_pairing(a, b) == theta_pairing(b, a)


@given(small_vec, small_vec)
def test_arrowfree_is_dot_product(a, b):
    q = quiver(2, [])
    assert euler_form(q, a, b) == sum(x * y for x, y in zip(a, b))
