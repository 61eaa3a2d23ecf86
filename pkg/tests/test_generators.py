import pytest

from fillable.complex import mask, members
from fillable.generators import FAMILIES, UnknownFamily, generate_family, generate_random, random_instances


def test_families():
    assert generate_family("skeleton", n=3, k=1).f_vector() == {-1: 1, 0: 4, 1: 6}
    assert generate_family("boundary", m=4) == generate_family("boundary", n=3)
    assert [members(f) for f in generate_family("delta_VS", m=3, S=[1, 2]).facets] == [(0,), (1,), (2,)]
    assert generate_family("disjoint-points", m=4).dim == 0
    assert generate_family("example6").facets == (mask([2, 3]), mask([0, 1, 2]), mask([3, 4, 5]))
    assert len(generate_family("rp2-6").facets) == 10
    assert set(FAMILIES) == {"skeleton", "boundary", "delta_VS", "example6", "disjoint-points", "rp2-6"}


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        generate_family("torus")
    with pytest.raises(ValueError):
        generate_family("boundary")


@pytest.mark.parametrize("m,density", [(1, 0.5), (4, 0.0), (6, 1.0), (8, 0.3)])
def test_random_covers_all_vertices(m, density):
    for seed in range(20):
        K = generate_random(m, density, seed)
        assert K.vertex_set == K.ground_set == (1 << m) - 1
        assert 1 <= len(K.facets) <= 3 * m


def test_random_is_deterministic():
    assert generate_random(6, 0.45, 7) == generate_random(6, 0.45, 7)
    assert [K for _, K in random_instances(30, seed=3)] == [K for _, K in random_instances(30, seed=3)]
    for s, K in random_instances(30, seed=3):
        assert 2 <= K.ground_set.bit_count() <= 7


def test_random_rejects_bad_arguments():
    with pytest.raises(ValueError):
        generate_random(0)
    with pytest.raises(ValueError):
        generate_random(3, 1.5)
