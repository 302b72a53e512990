import pytest
from hypothesis import given, strategies as st

import oracle
from helpers import dense
from leibniz.algebra import (H1, J1, J2, NotAnIdeal, Pair, abelian, commutator_with,
                             coordinate_span, direct_sum, product_ideal, sl2, validate,
                             with_abelian)
from leibniz.exactlin import QQ, Subspace, image, sp_axpy
from leibniz.tensor import (commutator_map, direct_sum_decomposition_check, exterior_pair,
                            exterior_product, induced_exterior_map, square_subspace,
                            tensor_product)


def _triples():
    """(name, g, m, n) with m, n ideals; includes m != n and m ∩ n != 0 cases."""
    out = []
    for name, g in [("a2", abelian(2)), ("J1", J1()), ("J2", J2()), ("H1", H1()),
                    ("J1+a1", with_abelian(J1(), 1)), ("H1+a1", with_abelian(H1(), 1)),
                    ("sl2", sl2()), ("J1+J1", direct_sum(J1(), J1()))]:
        full = g.full()
        g2 = product_ideal(g, full, full)
        out.append((f"{name}:g,g", g, full, full))
        if 0 < g2.dim < g.dim:
            out.append((f"{name}:g,g2", g, full, g2))
            out.append((f"{name}:g2,g", g, g2, full))
    g = with_abelian(J1(), 1)
    out.append(("J1+a1:y,a", g, coordinate_span(g, ["y"]), coordinate_span(g, ["a1"])))
    out.append(("J1+a1:y+a,x+y", g, coordinate_span(g, ["y", "a1"]),
                coordinate_span(g, ["x", "y"])))
    return out


TRIPLES = _triples()


@pytest.mark.parametrize("name, g, m, n", TRIPLES, ids=[t[0] for t in TRIPLES])
def test_dimensions_match_oracle(name, g, m, n):
    tp = tensor_product(g, m, n)
    ep = exterior_product(g, m, n)
    assert tp.quot_dim == oracle.product_dim(g, dense(m), dense(n))
    assert ep.quot_dim == oracle.product_dim(g, dense(m), dense(n), exterior=True)
    assert tp.quot_dim == tp.space.size - tp.relations.dim


@pytest.mark.parametrize("name, g, m, n", TRIPLES, ids=[t[0] for t in TRIPLES])
def test_quotients_are_leibniz(name, g, m, n):
    assert validate(tensor_product(g, m, n).algebra).ok
    assert validate(exterior_product(g, m, n).algebra).ok


@pytest.mark.parametrize("name, g, m, n", TRIPLES, ids=[t[0] for t in TRIPLES])
def test_commutator_image_is_product(name, g, m, n):
    tp = exterior_product(g, m, n)
    assert image(commutator_map(tp)) == product_ideal(g, m, n)


def test_trivial_action_tensor():
    a = abelian(2)
    e1 = coordinate_span(a, ["a1"])
    assert tensor_product(a, e1, e1).quot_dim == 2
    assert tensor_product(a, a.zero(), a.full()).quot_dim == 0


def test_j1_tensor_square():
    j = J1()
    assert tensor_product(j, j.full(), j.full()).quot_dim == 3
    assert exterior_product(j, j.full(), j.full()).quot_dim == 2


def test_square_examples():
    a = abelian(1)
    tp = tensor_product(a, a.full(), a.full())
    assert tp.quot_dim == 2 and square_subspace(tp).dim == 1
    assert exterior_product(a, a.full(), a.full()).quot_dim == 1
    g = abelian(2)
    tp = tensor_product(g, coordinate_span(g, ["a1"]), coordinate_span(g, ["a2"]))
    assert square_subspace(tp).dim == 0


@pytest.mark.parametrize("q", range(0, 5))
def test_abelian_exterior_square(q):
    a = abelian(q)
    assert exterior_product(a, a.full(), a.full()).quot_dim == q * q


@pytest.mark.parametrize("q, k", [(q, k) for q in range(1, 5) for k in range(q + 1)])
def test_abelian_exterior_pair(q, k):
    a = abelian(q)
    n = a.span([{i: QQ(1)} for i in range(k)])
    assert exterior_pair(Pair(a, n)).quot_dim == 2 * q * k - k * k


def test_j1_exterior_with_square():
    j = J1()
    ep = exterior_pair(Pair(j, coordinate_span(j, ["y"])))
    assert ep.quot_dim == 2
    sp = ep.space
    x, y = {0: QQ(1)}, {1: QQ(1)}
    # y*[x,x] and [x,x]*y vanish, so both y*y symbols die; x∧y and y∧x survive
    assert not ep.project(sp.A(y, y)) and not ep.project(sp.B(y, y))
    assert Subspace.span(QQ, 2, [ep.project(sp.A(x, y)), ep.project(sp.B(y, x))]).dim == 2
    assert exterior_product(j, j.full(), j.zero()).quot_dim == 0


def test_commutator_map_examples():
    a = abelian(3)
    assert commutator_map(exterior_pair(Pair.full(a))).is_zero()
    j = J1()
    ep = exterior_pair(Pair.full(j))
    C = commutator_map(ep)
    x, y = {0: QQ(1)}, {1: QQ(1)}
    assert C.apply(ep.project(ep.space.A(x, x))) == y
    assert not C.apply(ep.project(ep.space.B(y, x)))


def test_non_ideal_rejected():
    j = J1()
    with pytest.raises(NotAnIdeal):
        tensor_product(j, coordinate_span(j, ["x"]), j.full())


def test_induced_maps():
    h = H1()
    z = coordinate_span(h, ["z"])
    maps = induced_exterior_map(h, z, h.full())
    assert maps.composite_is_zero() and maps.map2_surjective() and maps.exact_in_middle()
    # k = n: target is (g/n) ∧ 0
    maps = induced_exterior_map(h, h.full(), h.full())
    assert maps.target.quot_dim == 0 and maps.composite_is_zero()
    # k = 0: map2 bijective
    maps = induced_exterior_map(h, h.zero(), h.full())
    assert maps.map1.ncols == 0 and maps.map2_surjective()
    assert maps.middle.quot_dim == maps.target.quot_dim


@pytest.mark.parametrize("g, k, n", [
    (J2(), ["z"], ["y", "z"]),
    (with_abelian(J1(), 1), ["y"], ["y", "a1"]),
    (with_abelian(H1(), 1), ["z"], ["x", "y", "z", "a1"]),
])
def test_induced_sequence_is_right_exact(g, k, n):
    maps = induced_exterior_map(g, coordinate_span(g, k), coordinate_span(g, n))
    assert maps.composite_is_zero() and maps.map2_surjective() and maps.exact_in_middle()


@pytest.mark.parametrize("p1, p2", [
    (Pair.full(abelian(2)), Pair.full(abelian(3))),
    (Pair.full(J1()), Pair.full(abelian(1))),
    (Pair.full(J1()), Pair.full(J1())),
    (Pair.full(H1()), Pair(J2(), coordinate_span(J2(), ["z"]))),
    (Pair(J1(), coordinate_span(J1(), ["y"])), Pair.full(sl2())),
    (Pair.full(J2()), Pair(abelian(0), abelian(0).full())),
])
def test_direct_sum_decomposition(p1, p2):
    rep = direct_sum_decomposition_check(p1, p2)
    assert rep.agree
    if p2.g.dim == 0:
        assert rep.direct_dim == rep.first_dim


def test_abelian_decomposition_identity():
    rep = direct_sum_decomposition_check(Pair.full(abelian(2)), Pair.full(abelian(3)))
    assert (rep.direct_dim, rep.first_dim, rep.second_dim, rep.cross_dim) == (25, 4, 9, 12)


# ---------------------------------------------------------------------------
# properties on random elements

PROPERTY_TRIPLES = [t for t in TRIPLES if t[2].dim and t[3].dim]
coeff = st.integers(-2, 2)


def _element(space: Subspace, cs):
    out = {}
    for c, v in zip(cs, space.vectors()):
        sp_axpy(out, QQ(c), v)
    return out


def _combo(*terms):
    out = {}
    for c, v in terms:
        sp_axpy(out, QQ(c), v)
    return out


@given(st.sampled_from(PROPERTY_TRIPLES), st.lists(coeff, min_size=24, max_size=24))
def test_random_relation_instances_are_relations(triple, cs):
    _, g, M, N = triple
    tp = tensor_product(g, M, N)
    sp, br = tp.space, g.bracket
    m, m2 = _element(M, cs[0:6]), _element(M, cs[6:12])
    n, n2 = _element(N, cs[12:18]), _element(N, cs[18:24])
    rels = [
        _combo((1, sp.A(m, br(n, n2))), (-1, sp.A(br(m, n), n2)), (1, sp.A(br(m, n2), n))),
        _combo((1, sp.B(n, br(m, m2))), (-1, sp.B(br(n, m), m2)), (1, sp.B(br(n, m2), m))),
        _combo((1, sp.A(br(m, m2), n)), (-1, sp.B(br(m, n), m2)), (1, sp.A(m, br(n, m2)))),
        _combo((1, sp.B(br(n, n2), m)), (-1, sp.A(br(n, m), n2)), (1, sp.B(n, br(m, n2)))),
        _combo((1, sp.A(m, br(m2, n))), (1, sp.A(m, br(n, m2)))),
        _combo((1, sp.B(n, br(n2, m))), (1, sp.B(n, br(m, n2)))),
        _combo((1, sp.A(br(m, n), br(n2, m2))), (-1, sp.B(br(m, n), br(n2, m2)))),
    ]
    for r in rels:
        assert tp.relations.contains(r)


@given(st.sampled_from(PROPERTY_TRIPLES), st.lists(coeff, min_size=64, max_size=64))
def test_bracket_independent_of_representatives(triple, cs):
    _, g, M, N = triple
    tp = tensor_product(g, M, N)
    size = tp.space.size
    rels = tp.relations.vectors()
    v = {k: QQ(c) for k, c in enumerate(cs[:size]) if c}
    w = {k: QQ(c) for k, c in enumerate(cs[16:16 + size]) if c}
    rv = _combo(*[(c, r) for c, r in zip(cs[32:48], rels)]) if rels else {}
    rw = _combo(*[(c, r) for c, r in zip(cs[48:64], rels)]) if rels else {}
    v2, w2 = dict(v), dict(w)
    sp_axpy(v2, QQ(1), rv)
    sp_axpy(w2, QQ(1), rw)
    assert tp.symbol_bracket(v, w) == tp.symbol_bracket(v2, w2)


@given(st.sampled_from(PROPERTY_TRIPLES), st.lists(coeff, min_size=16, max_size=16))
def test_square_is_central(triple, cs):
    _, g, M, N = triple
    tp = tensor_product(g, M, N)
    v = {k: QQ(c) for k, c in enumerate(cs[:tp.space.size]) if c}
    for s in tp.space.square_vectors():
        assert not tp.symbol_bracket(s, v)
        assert not tp.symbol_bracket(v, s)


@pytest.mark.parametrize("p", [Pair.full(H1()), Pair(J2(), coordinate_span(J2(), ["z"])),
                               Pair.full(with_abelian(J1(), 1))])
def test_commutator_onto_g_n(p):
    assert image(commutator_map(exterior_pair(p))) == commutator_with(p)
