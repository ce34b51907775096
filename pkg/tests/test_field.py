from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ramseypack.field import (
    AffineLine, FieldPoint, PrimeField, Slope, is_prime, least_admissible_prime, line_of_pair, line_point_array,
    lines_for, lines_through_point, moment_curve, slope_triple_independent,
)


def test_primes():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert least_admissible_prime(3, 3) == 29
    assert least_admissible_prime(4, 3) == 53
    with pytest.raises(ValueError):
        least_admissible_prime(2, 3)
    with pytest.raises(ValueError):
        PrimeField(9)


def test_field_inverse():
    f = PrimeField(29)
    assert all(a * f.inv(a) % 29 == 1 for a in f.nonzero())
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@given(st.sampled_from([5, 7, 11]), st.data())
def test_point_index_roundtrip(q, data):
    i = data.draw(st.integers(0, q ** 3 - 1))
    assert FieldPoint.from_index(q, i).index == i


@pytest.mark.parametrize("q", [5, 7])
def test_moment_triples_independent(q):
    for lam in range(1, q):
        for s1, s2, s3 in combinations(moment_curve(q, lam), 3):
            ok, det = slope_triple_independent(s1, s2, s3)
            assert ok and det != 0


def test_triple_guards():
    with pytest.raises(ValueError):
        slope_triple_independent(Slope(5, 1, 1), Slope(5, 1, 1), Slope(5, 1, 2))
    with pytest.raises(ValueError):
        slope_triple_independent(Slope(5, 1, 1), Slope(5, 2, 2), Slope(5, 1, 3))


@pytest.mark.parametrize("q", [5, 7])
def test_line_family_structure(q):
    lam = 2
    arr = line_point_array(q, lam)
    lines = lines_for(q, lam)
    assert arr.shape == (q * q * (q - 1), q) == (len(lines), q)
    for i, line in enumerate(lines[:: max(1, len(lines) // 50)]):
        idx = line.index()
        assert sorted(p.index for p in line.points()) == sorted(arr[idx].tolist())
    # every point lies on q-1 lines, once per slope
    counts = [0] * q ** 3
    for row in arr.tolist():
        for v in row:
            counts[v] += 1
    assert set(counts) == {q - 1}
    for v in (0, 17, q ** 3 - 1):
        through = lines_through_point(q, lam, v)
        assert len(through) == q - 1 and all(v in arr[t] for t in through)


def test_two_points_share_at_most_one_line():
    q, lam = 5, 3
    arr = line_point_array(q, lam)
    seen = {}
    for lid, row in enumerate(arr.tolist()):
        for a, b in combinations(sorted(row), 2):
            assert (a, b) not in seen
            seen[(a, b)] = lid
    for (a, b), lid in list(seen.items())[:300]:
        assert line_of_pair(q, lam, a, b) == lid
    assert line_of_pair(q, lam, 0, 1) is None  # same x coordinate


def test_affine_line_serialization():
    line = AffineLine(Slope(7, 2, 3), FieldPoint(0, 1, 4, 7))
    assert line.serialize() == (2, 3, 1, 4)
    with pytest.raises(ValueError):
        AffineLine(Slope(7, 2, 3), FieldPoint(1, 1, 4, 7))
