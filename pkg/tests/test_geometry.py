import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defhyper.builders import lines
from defhyper.errors import ArityError, CellBudgetError, SamplingError
from defhyper.geometry import (
    Cell,
    ConstructibleSet,
    GenericTrialPolicy,
    cell_closure,
    complement,
    dimension,
    fiber,
    generic_fiber_dimension,
    is_empty,
    majority,
    projection_closure,
    projection_dimension,
    sample_point,
)
from defhyper.groebner import Ideal, buchberger
from defhyper.oracle import enumerate_points, estimate_dimension
from defhyper.polycore import DEFAULT_PRIME, Ring

R2 = Ring.make("x,y")
x, y = R2.gens()
R3 = Ring.make("x,y,z")


def same_ideal(I, J):
    return buchberger(I).basis == buchberger(J).basis


def test_cell_closure_examples():
    assert same_ideal(cell_closure(Cell.make(R2, [x * y], [x])), Ideal.of(y))
    circle = x**2 + y**2 - 1
    assert cell_closure(Cell.make(R2, [circle])).generators == (circle,)
    assert buchberger(cell_closure(Cell.make(R2, [x], [x]))).is_trivial()


def test_dimension_examples():
    assert dimension(ConstructibleSet.variety(x, ring=R2)) == 1
    a, b, c = R3.gens()
    assert dimension(ConstructibleSet.variety(a**2 - b, a**3 - c)) == 1
    assert dimension(ConstructibleSet.empty(R2)) == -1
    assert dimension(ConstructibleSet.full(R3)) == 3


def test_twisted_cubic_dimension_matches_counts():
    R = Ring.make("x,y,z", 101)
    a, b, c = R.gens()
    S = ConstructibleSet.variety(a**2 - b, a**3 - c)
    assert dimension(S) == 1
    prof = estimate_dimension(S, [101, 211])
    assert prof.counts == (101, 211)
    assert prof.estimated_dim == 1


def test_projection_examples():
    A = lines().set
    assert dimension(A) == 2
    assert projection_dimension(A, [2]) == 1
    assert projection_dimension(A, [0, 1]) == 2
    assert projection_dimension(ConstructibleSet.variety(x - y), [0]) == 1
    hyper = projection_closure(ConstructibleSet.variety(x * y - 1), [0])
    assert hyper.dimension == 1
    assert hyper.ideals[0].generators == ()
    with pytest.raises(ValueError):
        projection_closure(A, [])
    with pytest.raises(ArityError):
        projection_closure(A, [5])


def test_emptiness_examples():
    assert is_empty(ConstructibleSet(R2, (Cell.make(R2, [x], [x]),)))
    assert not is_empty(ConstructibleSet.variety(x**2, ring=R2))
    assert is_empty(ConstructibleSet.empty(R2))


def test_complement_examples():
    R1 = Ring.make("x")
    t = R1.gen(0)
    C = complement(ConstructibleSet.variety(t))
    assert len(C.cells) == 1
    assert C.cells[0].equations.generators == () and C.cells[0].inequations == (t,)
    full = complement(ConstructibleSet.empty(R2))
    assert full.cells == (Cell(Ideal(R2)),)


def test_complement_budget():
    eqs = [R3.parse(s) for s in ("x", "y", "z", "x - y", "y - z")]
    S = ConstructibleSet(R3, tuple(Cell.make(R3, [a, b]) for a in eqs for b in eqs if a != b))
    with pytest.raises(CellBudgetError):
        complement(S, budget=3)


small = Ring.make("a,b", 5)
lin = st.sampled_from(["a", "b", "a - b", "a*b - 1", "a^2 - b", "a + b + 1", "b^2"])


@st.composite
def small_sets(draw):
    cells = []
    for _ in range(draw(st.integers(0, 3))):
        eqs = [small.parse(e) for e in draw(st.lists(lin, max_size=2))]
        neqs = [small.parse(e) for e in draw(st.lists(lin, max_size=1))]
        cells.append(Cell.make(small, eqs, neqs))
    return ConstructibleSet(small, tuple(cells))


@settings(max_examples=60)
@given(small_sets())
def test_double_complement_has_same_points(S):
    assert enumerate_points(complement(complement(S)), 5) == enumerate_points(S, 5)


@settings(max_examples=60)
@given(small_sets())
def test_complement_partitions_grid(S):
    inside = set(enumerate_points(S, 5))
    outside = set(enumerate_points(complement(S), 5))
    assert not inside & outside
    assert len(inside) + len(outside) == 25


@settings(max_examples=40)
@given(small_sets(), small_sets())
def test_union_dimension_is_max(S, T):
    assert dimension(S | T) == max(dimension(S), dimension(T))


@settings(max_examples=40)
@given(small_sets(), lin)
def test_dimension_monotone_under_added_equation(S, e):
    g = small.parse(e)
    T = ConstructibleSet(small, tuple(Cell(c.equations + [g], c.inequations) for c in S.cells))
    assert dimension(T) <= dimension(S)


def test_fiber_examples():
    # graph of y = x^2 fibered over x
    G = ConstructibleSet.variety(y - x**2)
    res = generic_fiber_dimension(G, 1)
    assert res.value == 0 and res.accepted
    # the lines example over (x, y)
    res = generic_fiber_dimension(lines().set, 2)
    assert res.value == 0 and res.accepted
    assert all(base[0] != 0 for base, _ in res.trials)
    # V(0) x F^2 over the first factor
    R = Ring.make("u,v,w")
    res = generic_fiber_dimension(ConstructibleSet.full(R), 1)
    assert res.value == 2
    F = fiber(lines().set, (2, 6))
    assert [p for p in [(3,), (4,)] if F.contains(p)] == [(3,)]
    with pytest.raises(ArityError):
        fiber(lines().set, (1,), 2)


def test_sample_point_lies_in_cell():
    R = Ring.make("x,y,z")
    a, b, c = R.gens()
    cell = Cell.make(R, [a**2 - b, a**3 - c], [a])
    pt = sample_point(cell, random.Random(3))
    assert cell.contains(pt)
    with pytest.raises(SamplingError):
        sample_point(Cell.make(R, [a], [a]), random.Random(0))


def test_sample_point_on_curve_without_many_points():
    # x^2 + 1 = 0 has roots mod 13 (13 = 1 mod 4)
    R = Ring.make("x", 13)
    cell = Cell.make(R, [R.parse("x^2 + 1")])
    assert sample_point(cell, random.Random(0))[0] in (5, 8)
    R7 = Ring.make("x", 7)
    with pytest.raises(SamplingError):
        sample_point(Cell.make(R7, [R7.parse("x^2 + 1")]), random.Random(0), retries=2)


def test_policy_and_majority():
    with pytest.raises(ValueError):
        GenericTrialPolicy(trials=3, accept_threshold=4)
    pol = GenericTrialPolicy()
    assert majority([1, 1, 2, 1, 1], pol) == (1, 4, True)
    assert majority([1, 2, 2, 1, 3], pol) == (1, 2, False)


def test_generic_fiber_dimension_is_deterministic():
    a = generic_fiber_dimension(lines().set, 2, GenericTrialPolicy(seed=9))
    b = generic_fiber_dimension(lines().set, 2, GenericTrialPolicy(seed=9))
    assert a == b


def test_default_prime():
    assert R2.p == DEFAULT_PRIME
