import random
from itertools import product

import pytest

from quivermod import (GenericExtTable, NotStableError, PrimeField, QQ,
                       QuiverError, ext_space, generic_ext,
                       generic_subdimvectors, is_semistable, is_stable,
                       local_model_dimension, local_quiver, moduli_dimension,
                       quiver, random_representation, representation,
                       semistable_nonempty, stable_nonempty)
from quivermod.moduli import CyclicQuiverError, LocalQuiverData


def rep_k3(k3, field, m):
    return representation(k3, field, (1, 1),
                          {"x": [[m[0]]], "y": [[m[1]]], "z": [[m[2]]]})


def test_generic_ext_examples(k3):
    t = GenericExtTable(k3)
    assert t.ext((1, 0), (0, 1)) == 3
    assert t.ext((1, 1), (0, 0)) == 0
    assert t.ext((0, 0), (2, 2)) == 0
    # min over independent general pairs: hom is generically 0, euler = -1
    assert t.ext((1, 1), (1, 1)) == 1
    assert t.ext((1, 0), (1, 1)) == 2


def test_generic_ext_memoized(k3):
    t = GenericExtTable(k3)
    t.ext((2, 2), (2, 2))
    assert ((2, 2), (2, 2)) in t._memo


def test_generic_ext_cyclic_rejected():
    loop = quiver(1, [("l", 1, 1)])
    with pytest.raises(CyclicQuiverError):
        GenericExtTable(loop)


def test_generic_subs_examples(k3, arrowfree2):
    assert generic_subdimvectors(k3, (1, 1)) == [(0, 0), (0, 1), (1, 1)]
    free = generic_subdimvectors(arrowfree2, (2, 1))
    assert free == sorted(product(range(3), range(2)))
    assert generic_subdimvectors(k3, (0, 0)) == [(0, 0)]


def test_generic_subs_closure(k3):
    t = GenericExtTable(k3)
    for alpha in [(1, 1), (2, 2), (2, 1)]:
        subs = t.generic_subdimvectors(alpha)
        assert (0, 0) in subs and alpha in subs
        for beta in subs:
            quot = tuple(a - b for a, b in zip(alpha, beta))
            assert t.ext(beta, quot) == 0


def test_generic_ext_sampling_consistency(k3, a2):
    rng = random.Random(101)
    f5 = PrimeField(5)
    for q in (k3, a2):
        t = GenericExtTable(q)
        for alpha in [(1, 1), (2, 1), (1, 2)]:
            for beta in [(1, 1), (2, 1)]:
                g = t.ext(alpha, beta)
                sampled = min(ext_space(random_representation(q, f5, alpha, rng),
                                        random_representation(q, f5, beta, rng)).dim
                              for _ in range(200))
                assert sampled >= g
                assert sampled == g


def test_semistable_nonempty_examples(k3):
    for n in range(1, 5):
        assert semistable_nonempty(k3, (n, n), (-1, 1))
    assert not semistable_nonempty(k3, (2, 1), (-1, 1))
    assert semistable_nonempty(k3, (0, 0), (-1, 1))


def test_stable_nonempty_examples(k3, a2, arrowfree2):
    assert stable_nonempty(k3, (1, 1), (-1, 1))
    assert stable_nonempty(a2, (1, 1), (-1, 1))
    assert not stable_nonempty(arrowfree2, (1, 1), (-1, 1))
    with pytest.raises(QuiverError):
        stable_nonempty(k3, (0, 0), (-1, 1))


def test_stable_implies_semistable_nonempty(k3, a2):
    for q in (k3, a2):
        for alpha in product(range(3), repeat=2):
            if sum(alpha) == 0:
                continue
            for theta in [(-1, 1), (1, -1), (-2, 1)]:
                if stable_nonempty(q, alpha, theta):
                    assert semistable_nonempty(q, alpha, theta)


def test_nonemptiness_matches_exhaustive_oracle(k3, a2):
    # Exhaustive search over all F_2 representations at desk scale.
    f2 = PrimeField(2)
    for q in (k3, a2):
        for alpha in product(range(3), repeat=2):
            if not 0 < sum(alpha) <= 3:
                continue
            for theta in [(-1, 1), (-2, 1)]:
                predicted = semistable_nonempty(q, alpha, theta)
                cells = [(a.id, r, c) for a in q.arrows
                         for r in range(alpha[a.tgt - 1])
                         for c in range(alpha[a.src - 1])]
                found = False
                for vals in product(range(2), repeat=len(cells)):
                    mats = {}
                    for (aid, r, c), v in zip(cells, vals):
                        mats.setdefault(aid, f2.zeros(
                            alpha[q.arrow_map[aid].tgt - 1],
                            alpha[q.arrow_map[aid].src - 1]))[r, c] = v
                    m = representation(q, f2, alpha, mats)
                    if is_semistable(m, theta).semistable:
                        found = True
                        break
                assert found == predicted, (q.labels, alpha, theta)


def test_moduli_dimension(k3):
    assert moduli_dimension(k3, (1, 1), (-1, 1)) == 2
    for n in range(1, 5):
        assert moduli_dimension(k3, (n, n), (-1, 1)) == n * n + 1
    assert moduli_dimension(k3, (2, 1), (-1, 1)) is None


def test_moduli_dimension_rigid_case(a2):
    # <(1,1),(1,1)> = 1 on A2: a real Schur root, zero-dimensional moduli
    assert moduli_dimension(a2, (1, 1), (-1, 1)) == 0


def test_local_quiver_single_stable(k3):
    f5 = PrimeField(5)
    m = rep_k3(k3, f5, (1, 0, 0))
    data = local_quiver([(m, 1)], (-1, 1))
    assert data.num_classes == 1
    assert data.arrow_counts == ((2,),)
    assert data.multiplicities == (1,)
    assert data.verified
    assert local_model_dimension(data) == 2 == moduli_dimension(k3, (1, 1), (-1, 1))


def test_local_quiver_two_stables(k3):
    f5 = PrimeField(5)
    m = rep_k3(k3, f5, (1, 0, 0))
    n = rep_k3(k3, f5, (0, 1, 0))
    data = local_quiver([(m, 1), (n, 1)], (-1, 1))
    assert data.arrow_counts == ((2, 1), (1, 2))
    assert local_model_dimension(data) == 5 == moduli_dimension(k3, (2, 2), (-1, 1))


def test_local_quiver_rejects_non_stable(k3):
    f5 = PrimeField(5)
    z = rep_k3(k3, f5, (0, 0, 0))
    with pytest.raises(NotStableError):
        local_quiver([(z, 1)], (-1, 1))
    m = rep_k3(k3, f5, (1, 0, 0))
    with pytest.raises(NotStableError):
        local_quiver([(m, 1), (m, 1)], (-1, 1))  # isomorphic summands


def test_local_quiver_assert_stable_flag(k3):
    m = rep_k3(k3, QQ, (1, 0, 0))
    with pytest.raises(NotStableError):
        local_quiver([(m, 1)], (-1, 1))
    data = local_quiver([(m, 1)], (-1, 1), assert_stable=True)
    assert not data.verified


def test_local_model_dimension_empty():
    with pytest.raises(ValueError):
        local_model_dimension(LocalQuiverData((), (), (), True))


def test_local_quiver_json(k3):
    f5 = PrimeField(5)
    m = rep_k3(k3, f5, (1, 0, 0))
    doc = local_quiver([(m, 2)], (-1, 1)).to_json()
    assert doc["beta_y"] == [2]
    assert len(doc["arrows"]) == 2  # two loops at the single vertex
    assert all(a["src"] == a["tgt"] == 1 for a in doc["arrows"])
