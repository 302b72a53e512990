import pytest
from hypothesis import given, strategies as st
from sympy import Matrix as SMatrix

from leibniz.algebra import (H1, J1, J2, LeibnizAlgebra, NotAnIdeal, NotNilpotent, Pair,
                             UnknownAlgebra, abelian, catalog, center, center_of_pair,
                             coordinate_span, derived, direct_sum, direct_sum_pair, heisenberg,
                             is_extra_special, is_ideal, is_nilpotent, lower_central_series,
                             minimal_generator_count, product_ideal, quotient_algebra,
                             quotient_pair, sl2, subalgebra, validate, with_abelian)
from leibniz.exactlin import GF, QQ, FieldMismatch, Subspace

from helpers import base_change, small_algebras, transport

NILPOTENT = [abelian(0), abelian(3), J1(), J2(), H1(), heisenberg(2), with_abelian(J1(), 2)]


def q(*xs):
    return {i: QQ(x) for i, x in enumerate(xs) if x}


@pytest.mark.parametrize("name, alg", small_algebras(6))
def test_catalog_and_sums_validate(name, alg):
    assert validate(alg).ok


def test_invalid_structure_constants_are_reported():
    bad = LeibnizAlgebra.from_brackets(["x", "y"], {("x", "x"): {"y": 1}, ("y", "x"): {"x": 1}})
    rep = validate(bad)
    assert not rep.ok
    # [[x,y],x] = 0 but [[x,x],y] + [x,[y,x]] = y
    assert {"triple": (0, 1, 0), "labels": ("x", "y", "x"), "defect": {1: QQ(-1)}} in rep.violations


def test_bracket_examples():
    assert J1().bracket(q(1), q(1)) == q(0, 1)
    assert H1().bracket(q(0, 1), q(1)) == q(0, 0, -1)
    assert J2().bracket({}, q(1, 1, 1)) == {}


def test_leibniz_but_not_lie():
    assert not J1().is_lie()
    assert H1().is_lie() and sl2().is_lie()


def test_product_ideal_examples():
    j = J1()
    assert product_ideal(j, j.full(), j.full()) == coordinate_span(j, ["y"])
    assert product_ideal(abelian(3), abelian(3).full(), abelian(3).full()).dim == 0
    h = H1()
    assert product_ideal(h, h.full(), coordinate_span(h, ["z"])).dim == 0


def test_center_examples():
    assert center(abelian(4)).dim == 4
    assert center(H1()) == coordinate_span(H1(), ["z"])
    j = J2()
    assert center_of_pair(Pair(j, coordinate_span(j, ["z"]))) == coordinate_span(j, ["z"])
    assert center(sl2()).dim == 0


def test_lower_central_series():
    assert [s.dim for s in lower_central_series(abelian(2))] == [2, 0]
    assert [s.dim for s in lower_central_series(J2())] == [3, 1, 0]
    solv = LeibnizAlgebra.from_brackets(["x", "y"], {("x", "y"): {"y": 1}, ("y", "x"): {"y": -1}})
    assert validate(solv).ok
    assert not is_nilpotent(solv)
    assert [s.dim for s in lower_central_series(solv)] == [2, 1]


def test_quotients():
    g, _ = quotient_algebra(J1(), coordinate_span(J1(), ["y"]))
    assert g.dim == 1 and g.is_abelian()
    g, proj = quotient_algebra(H1(), coordinate_span(H1(), ["z"]))
    assert g.dim == 2 and g.is_abelian() and proj.shape == (2, 3)
    same, _ = quotient_algebra(J2(), J2().zero())
    assert same.sc == J2().sc
    with pytest.raises(NotAnIdeal):
        quotient_algebra(J2(), coordinate_span(J2(), ["x"]))


def test_quotient_pair():
    p = quotient_pair(Pair.full(H1()), coordinate_span(H1(), ["z"]))
    assert p.g.dim == 2 and p.n.dim == 2


def test_direct_sums():
    s = direct_sum(abelian(2), abelian(3))
    assert s.dim == 5 and s.is_abelian()
    g = with_abelian(J1(), 3)
    assert g.dim == 5 and derived(g).dim == 1
    hh = direct_sum(H1(), H1())
    assert hh.dim == 6 and derived(hh).dim == 2
    assert len(set(hh.labels)) == 6
    with pytest.raises(FieldMismatch):
        direct_sum(J1(), J1(GF(3)))


def test_direct_sum_pair():
    p = direct_sum_pair(Pair.full(J1()), Pair(abelian(1), abelian(1).zero()))
    assert p.g.dim == 3 and p.n.dim == 2


@pytest.mark.parametrize("alg, d", [(abelian(4), 4), (H1(), 2), (with_abelian(J1(), 2), 3),
                                    (J2(), 2), (heisenberg(2), 4)])
def test_minimal_generators(alg, d):
    assert minimal_generator_count(alg) == d


def test_minimal_generators_needs_nilpotent():
    with pytest.raises(NotNilpotent):
        minimal_generator_count(sl2())


def test_catalog():
    j = catalog("J1")
    assert j.dim == 2 and len(j.sc) == 1
    assert catalog("heisenberg", 2).dim == 5
    assert catalog("abelian", 0).dim == 0
    with pytest.raises(UnknownAlgebra):
        catalog("E8")


def test_extra_special():
    assert all(is_extra_special(a) for a in (J1(), J2(), H1(), heisenberg(3)))
    assert not is_extra_special(abelian(2))
    assert not is_extra_special(with_abelian(H1(), 1))


def test_pair_rejects_non_ideal():
    with pytest.raises(NotAnIdeal):
        Pair(J1(), coordinate_span(J1(), ["x"]))
    assert Pair(J1(), coordinate_span(J1(), ["y"])).dim_quotient == 1


def test_subalgebra_coordinates():
    g = with_abelian(H1(), 1)
    h = subalgebra(g, coordinate_span(g, ["x", "y", "z"]))
    assert validate(h).ok and derived(h).dim == 1 and h.dim == 3


def test_over_finite_field():
    g = H1(GF(5))
    assert validate(g).ok and derived(g).dim == 1


invertible3 = st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3)


@given(invertible3, st.sampled_from(["J2", "H1", "sl2"]))
def test_invariants_survive_base_change(p, name):
    if SMatrix(p).det() == 0:
        return
    g = catalog(name)
    h = base_change(g, p)
    assert validate(h).ok
    assert derived(h) == transport(p, derived(g))
    assert center(h) == transport(p, center(g))
    assert is_nilpotent(h) == is_nilpotent(g)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=3))
def test_ideal_generated_by_products_is_ideal(vecs):
    g = with_abelian(J1(), 2)
    s = Subspace.span(QQ, 4, vecs)
    # [g, s] + [s, g] always lands in g^2, and g^2 is an ideal
    assert product_ideal(g, g.full(), s) <= derived(g)
    assert is_ideal(g, derived(g))
