import pytest
from hypothesis import given, strategies as st

from factorium.prescriptions import (
    AllowedSet,
    dist,
    hull,
    is_allowed,
    make_J,
    make_Jf_star,
    shift_set,
)

from conftest import allowed_sets


def _untruncated(fv, extra_low):
    """J_f* with its negative tail extended far past any truncation point."""
    return sorted(set(range(-2 * extra_low - 1, 0, 2)) | set(make_J(fv).values))


@pytest.mark.parametrize("n, expected", [(5, (1, 3, 5)), (4, (1, 3, 4)), (1, (1,)), (2, (1, 2))])
def test_make_J(n, expected):
    assert make_J(n).values == expected


def test_make_J_rejects_zero():
    with pytest.raises(ValueError):
        make_J(0)


@pytest.mark.parametrize("fv, deg, expected", [
    (1, 1, (-3, -1, 1)),
    (2, 2, (-3, -1, 1, 2)),
    (4, 0, (-1, 1, 3, 4)),
])
def test_make_Jf_star_examples(fv, deg, expected):
    got = make_Jf_star(fv, deg)
    assert got.values == expected
    ref = _untruncated(fv, deg + 10)
    for x in range(-deg, deg + 1):
        assert dist(x, got) == dist(x, ref)


@given(st.integers(1, 8), st.integers(0, 12))
def test_truncation_sound(fv, deg):
    trunc = make_Jf_star(fv, deg)
    ref = _untruncated(fv, deg + 10)
    for x in range(-deg, deg + 20):
        assert dist(x, trunc) == dist(x, ref)
    assert trunc.min < -deg
    assert is_allowed(trunc.values)
    assert set(make_J(fv).values) <= set(trunc.values)
    assert tuple(x for x in trunc.values if x >= 0) == make_J(fv).values


def test_make_Jf_star_rejects():
    with pytest.raises(ValueError):
        make_Jf_star(0, 1)


@pytest.mark.parametrize("x, values, expected", [
    (1, (1, 3, 5), 0),
    (0, (-3, -1, 1, 2), 1),
    (6, (1, 3, 4), 2),
    (-9, (1, 3, 4), 10),
])
def test_dist(x, values, expected):
    assert dist(x, AllowedSet(values)) == expected


@given(allowed_sets(), st.integers(-15, 15))
def test_dist_brute_and_lipschitz(A, x):
    brute = min(abs(x - h) for h in A.values)
    assert dist(x, A) == brute
    assert (dist(x, A) == 0) == (x in A)
    assert abs(dist(x + 1, A) - dist(x, A)) <= 1


@pytest.mark.parametrize("values, expected", [((1, 3, 4), True), ((1, 4), False), ((0,), True)])
def test_is_allowed(values, expected):
    assert is_allowed(values) is expected


def test_allowed_set_validation():
    with pytest.raises(ValueError):
        AllowedSet((1, 4))
    with pytest.raises(ValueError):
        AllowedSet(())
    assert AllowedSet((3, 1, 1)).values == (1, 3)


@pytest.mark.parametrize("values, k, expected", [
    ((1, 3), 0, (1, 3)),
    ((1, 3, 4), 2, (-1, 1, 2)),
    ((-1, 1), -1, (0, 2)),
])
def test_shift_set(values, k, expected):
    assert shift_set(AllowedSet(values), k).values == expected


@pytest.mark.parametrize("values, expected", [((1, 3, 4), (1, 4)), ((-3, -1, 1), (-3, 1)), ((0,), (0, 0))])
def test_hull(values, expected):
    assert hull(AllowedSet(values)) == expected
