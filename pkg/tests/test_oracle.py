import pytest

from defhyper.builders import ap, axes
from defhyper.errors import ArityError, EnumerationBudgetError
from defhyper.geometry import ConstructibleSet, complement, dimension
from defhyper.hypergraph import independence_criterion
from defhyper.oracle import (
    CountProfile,
    check_edge_free,
    count_points,
    count_projection,
    enumerate_points,
    estimate_dimension,
    profile_from_counts,
)
from defhyper.polycore import Ring

from suite import regression_suite


def test_enumeration_examples():
    R = Ring.make("x,y")
    x, y = R.gens()
    assert len(enumerate_points(ConstructibleSet.variety(x), 5)) == 5
    assert len(enumerate_points(ConstructibleSet.variety(x * y - 1), 5)) == 4
    pts = enumerate_points(ap(1, 3).set, 5)
    assert len(pts) == 20
    assert all((a - 2 * b + c) % 5 == 0 and a != b for a, b, c in pts)


def test_enumeration_budget():
    R = Ring.make("a,b,c,d,e")
    with pytest.raises(EnumerationBudgetError):
        enumerate_points(ConstructibleSet.full(R), 11, budget=1000)


def test_estimate_examples():
    R = Ring.make("x,y")
    x, y = R.gens()
    prof = estimate_dimension(ConstructibleSet.variety(x - y), [5, 7, 11])
    assert prof.counts == (5, 7, 11)
    assert prof.estimated_dim == 1
    R3 = Ring.make("x,y,z")
    X, Y, Z = R3.gens()
    assert estimate_dimension(ConstructibleSet.variety(X**2 - Y, X**3 - Z), [7, 11, 13]).estimated_dim == 1
    assert estimate_dimension(ConstructibleSet.empty(R), [5, 7]).estimated_dim == -1


def test_indeterminate_profile():
    prof = profile_from_counts([5, 7], [0, 3])
    assert prof.estimated_dim is None
    assert prof.to_dict()["estimated_dim"] == "indeterminate"
    with pytest.raises(ValueError):
        profile_from_counts([5], [3])
    assert isinstance(prof, CountProfile)


def test_linear_subspace_counts_exact():
    R = Ring.make("a,b,c,d")
    a, b, c, d = R.gens()
    for eqs, codim in [([a], 1), ([a - b, c + 2 * d], 2), ([a, b, c - 1], 3)]:
        S = ConstructibleSet.variety(*eqs, ring=R)
        for q in (5, 7):
            assert count_points(S, q) == q ** (4 - codim)


def test_projection_counts():
    E = ap(1, 3)
    # pairs (x1, x2) with x1 != x2
    assert count_projection(E.set, [0, 1], 7) == 42
    assert count_projection(E.set, [2], 7) == 7
    with pytest.raises(ArityError):
        count_projection(E.set, [3], 7)


def test_edge_free_checks():
    E = axes(1)
    assert check_edge_free([], E, 5)
    assert not check_edge_free([(a,) for a in range(5)], E, 5)
    W = independence_criterion(E).witness
    assert check_edge_free(enumerate_points(W, 5), E, 5)
    with pytest.raises(ArityError):
        check_edge_free([(1, 2)], E, 5)


def test_regression_suite_agreement():
    suite = regression_suite()
    assert len(suite) >= 20
    agree = 0
    for name, S in suite:
        sym = dimension(S)
        est = estimate_dimension(S, [5, 7, 11]).estimated_dim
        assert est is not None, name
        assert abs(est - sym) < 2, name
        agree += est == sym
    assert agree >= 0.9 * len(suite)


def test_complement_soundness_on_suite():
    for name, S in regression_suite():
        if S.arity > 3:
            continue
        inside = set(enumerate_points(S, 5))
        outside = set(enumerate_points(complement(S), 5))
        assert not inside & outside, name
        assert len(inside | outside) == 5**S.arity, name
