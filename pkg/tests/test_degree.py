import pytest
from hypothesis import assume, given, settings

from lamlab.degree import (Arrow, Atom, FuelExhausted, Untypable, degree_of_term, degree_of_type,
                           infer_type, parallel_normalize, parallel_step, redex_reports, typable)
from lamlab.strategies import reduce_normal_order
from lamlab.terms import I, parse, term1

from .strategies_ import terms


def test_degree_of_type():
    a = Atom("a")
    assert degree_of_type(a) == 1
    assert degree_of_type(Arrow(a, a)) == 2
    assert degree_of_type(Arrow(Arrow(a, a), a)) == 3


def test_identity_type():
    assert str(infer_type(I)) == "a -> a"
    assert degree_of_term(I) == 0


def test_church_two_type():
    assert str(infer_type(parse("two"))) == "(a -> a) -> a -> a"


def test_self_application_is_untypable():
    with pytest.raises(Untypable):
        infer_type(parse(r"\x.x x"))
    assert not typable(parse(r"\x.x x"))


def test_free_variables_get_atoms():
    assert str(infer_type(parse("y"))) == "a"
    assert degree_of_term(parse(r"(\x.x) y")) == 2


def test_redex_reports():
    reps = redex_reports(parse(r"(\x.x) ((\y.y) z)"))
    assert sorted(r.position for r in reps) == [(), (1,)]
    assert all(r.degree == 2 for r in reps)


def test_term1_degree_and_parallel_steps():
    t = term1(2)
    assert str(infer_type(t)) == "a -> a"
    assert degree_of_term(t) == 5
    nf, steps = parallel_normalize(t)
    assert nf == I
    assert steps == 3


def test_parallel_step_fires_all_present_redexes():
    t = parse(r"(\x.x) ((\y.y) z)")
    assert parallel_step(t) == parse("z")


def test_parallel_step_on_normal_form():
    t = parse(r"\x.x y")
    assert parallel_step(t) == t
    assert parallel_normalize(t) == (t, 0)


def test_parallel_fuel():
    with pytest.raises(FuelExhausted):
        parallel_normalize(parse(r"(\x.x x) (\x.x x)"), fuel=5)


@given(terms(10))
@settings(max_examples=200, deadline=None)
def test_degree_bound(t):
    assume(typable(t))
    _, steps = parallel_normalize(t)
    assert steps <= degree_of_term(t)


@given(terms(10))
@settings(max_examples=200, deadline=None)
def test_degree_does_not_increase(t):
    assume(typable(t))
    u = parallel_step(t)
    assert typable(u)
    assert degree_of_term(u) <= degree_of_term(t)


@given(terms(10))
@settings(max_examples=150, deadline=None)
def test_parallel_normal_form_matches_normal_order(t):
    assume(typable(t))
    nf, _ = parallel_normalize(t)
    assert nf == reduce_normal_order(t).result
