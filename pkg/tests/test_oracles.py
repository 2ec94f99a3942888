import pytest

from oracles import oracle_class_count, oracle_gamma0_orbits, oracle_point_count, stable_gamma0_orbits


@pytest.mark.parametrize("D, h", [(-7, 1), (-20, 2), (-163, 1), (-3, 1), (-4, 1), (-23, 3)])
def test_oracle_class_count(D, h):
    assert oracle_class_count(D) == h


@pytest.mark.parametrize("a, b, p, n", [(1, 1, 5, 9), (-1, 0, 5, 8), (0, 1, 7, 12)])
def test_oracle_point_count(a, b, p, n):
    assert oracle_point_count(a, b, p) == n


def test_oracle_point_count_refuses_large_p():
    with pytest.raises(AssertionError):
        oracle_point_count(1, 1, 2003)


@pytest.mark.parametrize("D, p", [(-7, 2), (-4, 2)])
def test_gamma0_oracle_within_index_bound(D, p):
    count = oracle_gamma0_orbits(D, p, 50)
    assert 1 <= count <= 3
    assert oracle_gamma0_orbits(D, p, 100) == count


def test_stable_orbits():
    assert stable_gamma0_orbits(-7, 2) == 3
    assert stable_gamma0_orbits(-3, 2) == 1
