"""Shared fixtures: catalog pairs, base changes, dense conversions."""

from itertools import product

from sympy import Rational

from leibniz.algebra import (H1, J1, J2, LeibnizAlgebra, Pair, abelian, direct_sum, is_ideal,
                             sl2)
from leibniz.classify import ideals_of_dim
from leibniz.exactlin import QQ, Matrix, Subspace, inverse


def dense(space: Subspace):
    return [[Rational(x.numerator, x.denominator) for x in row] for row in space.dense_vectors()]


def base_change(alg: LeibnizAlgebra, p_rows) -> LeibnizAlgebra:
    """The same algebra in the basis given by the columns of ``p``."""
    p = Matrix.from_dense(alg.field, p_rows)
    pinv = inverse(p)
    cols = p.columns()
    sc = {}
    for i, j in product(range(alg.dim), repeat=2):
        w = pinv.apply(alg.bracket(cols[i], cols[j]))
        if w:
            sc[(i, j)] = w
    return LeibnizAlgebra(alg.field, alg.dim, sc)


def transport(p_rows, space: Subspace) -> Subspace:
    """Coordinates of ``space`` after the base change ``p``."""
    pinv = inverse(Matrix.from_dense(space.field, p_rows))
    return Subspace.span(space.field, space.ambient_dim, [pinv.apply(v) for v in space.vectors()])


def small_algebras(max_dim=5):
    """Catalog algebras and direct sums up to ``max_dim``, with names."""
    base = [("a1", abelian(1)), ("a2", abelian(2)), ("a3", abelian(3)), ("J1", J1()),
            ("J2", J2()), ("H1", H1()), ("sl2", sl2())]
    out = list(base)
    for (n1, g1), (n2, g2) in product(base, repeat=2):
        if n1 <= n2 and g1.dim + g2.dim <= max_dim:
            out.append((f"{n1}+{n2}", direct_sum(g1, g2)))
    return out


def all_pairs(max_dim=5, coeffs=(0, 1)):
    """Every pair (g, n) with g as above and n a nonzero ideal with coordinates in ``coeffs``."""
    out = []
    for name, g in small_algebras(max_dim):
        for k in range(1, g.dim + 1):
            for n in ideals_of_dim(g, k, coeffs):
                out.append((f"{name}|{_rows(n)}", Pair(g, n)))
    return out


def _rows(n: Subspace) -> str:
    return ";".join("".join("-" if c == -1 else str(c) for c in row) for row in n.dense_vectors())


def is_pair(g, rows):
    return is_ideal(g, Subspace.span(QQ, g.dim, rows))


def sample_pairs(stride=15, max_dim=5):
    """Every pair with dim g <= 3, then every ``stride``-th larger one."""
    ps = all_pairs(max_dim)
    small = [p for p in ps if p[1].g.dim <= 3]
    large = [p for p in ps if p[1].g.dim > 3]
    return small + large[::stride]
