"""Finite-dimensional right Leibniz algebras given by structure constants.

Right Leibniz identity: ``[[x,y],z] = [[x,z],y] + [x,[y,z]]``.
Vectors are sparse dicts ``{basis index: scalar}`` unless a function says
otherwise; subspaces are :class:`~leibniz.exactlin.Subspace` objects in the
algebra's coordinate space.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Sequence, Tuple

from .exactlin import (QQ, Field, FieldMismatch, Matrix, SparseVec, Subspace,
                       DimensionMismatch, SubspaceNotContained, complement, intersect, kernel,
                       quotient_basis, sp_axpy, sp_from_dense, sum_spaces)

StructureConstants = Dict[Tuple[int, int], SparseVec]


class NotAnIdeal(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class UnknownAlgebra(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    field: Field
    dim: int
    sc: StructureConstants
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(self.dim)))
        if len(self.labels) != self.dim:
            raise DimensionMismatch("one label per basis vector")
        clean = {}
        for (i, j), terms in self.sc.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatch(f"bracket index ({i},{j}) out of range")
            t = {}
            for k, c in terms.items():
                if not 0 <= k < self.dim:
                    raise DimensionMismatch(f"term index {k} out of range")
                c = c if self.field.owns(c) else self.field(c)
                if c:
                    t[k] = c
            if t:
                clean[(i, j)] = t
        object.__setattr__(self, "sc", clean)

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: Mapping, field: Field = QQ) -> "LeibnizAlgebra":
        """``brackets`` maps ``(i, j)`` or ``("x", "y")`` to ``{k or "z": coeff}``."""
        idx = {name: i for i, name in enumerate(labels)}

        def ix(a):
            return idx[a] if isinstance(a, str) else a

        sc = {}
        for (a, b), terms in brackets.items():
            sc[(ix(a), ix(b))] = {ix(k): field(c) for k, c in terms.items()}
        return cls(field, len(labels), sc, tuple(labels))

    def basis_vector(self, i: int) -> SparseVec:
        return {i: self.field.one}

    def bracket(self, u: SparseVec, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        if len(u) * len(v) <= len(self.sc):
            for i, a in u.items():
                for j, b in v.items():
                    t = self.sc.get((i, j))
                    if t:
                        sp_axpy(out, a * b, t)
        else:
            for (i, j), t in self.sc.items():
                a = u.get(i)
                if a:
                    b = v.get(j)
                    if b:
                        sp_axpy(out, a * b, t)
        return out

    def bracket_dense(self, u: Sequence, v: Sequence) -> list:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch(f"vectors must have length {self.dim}")
        f = self.field
        w = self.bracket(sp_from_dense([f(x) for x in u]), sp_from_dense([f(x) for x in v]))
        return [w.get(k, f.zero) for k in range(self.dim)]

    def left_mult(self, x: SparseVec) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        cols = [self.bracket(x, {j: self.field.one}) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_mult(self, x: SparseVec) -> Matrix:
        """Matrix of ``y -> [y, x]``."""
        cols = [self.bracket({j: self.field.one}, x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def is_abelian(self) -> bool:
        return not self.sc

    def is_lie(self) -> bool:
        """Antisymmetry on basis pairs (with the Leibniz identity this is Lie)."""
        for i in range(self.dim):
            for j in range(i, self.dim):
                a = dict(self.sc.get((i, j), {}))
                sp_axpy(a, self.field.one, self.sc.get((j, i), {}))
                if a:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return (self.field, self.dim, self.sc, self.labels) == (other.field, other.dim, other.sc, other.labels)

    def __repr__(self):
        return f"LeibnizAlgebra({self.field.tag}, dim={self.dim}, labels={list(self.labels)})"


@dataclass
class ValidationReport:
    violations: List[dict] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(alg: LeibnizAlgebra) -> ValidationReport:
    """Every basis triple violating the right Leibniz identity."""
    rep = ValidationReport()
    one = alg.field.one
    e = [{i: one} for i in range(alg.dim)]
    br = {(i, j): alg.sc.get((i, j), {}) for i in range(alg.dim) for j in range(alg.dim)}
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                lhs = alg.bracket(br[(i, j)], e[k])
                rhs = alg.bracket(br[(i, k)], e[j])
                sp_axpy(rhs, one, alg.bracket(e[i], br[(j, k)]))
                sp_axpy(lhs, -one, rhs)
                if lhs:
                    rep.violations.append({"triple": (i, j, k),
                                           "labels": (alg.labels[i], alg.labels[j], alg.labels[k]),
                                           "defect": dict(sorted(lhs.items()))})
    return rep


# ---------------------------------------------------------------------------
# ideals and pairs


def _check_ambient(alg: LeibnizAlgebra, *spaces: Subspace) -> None:
    for s in spaces:
        if s.field != alg.field:
            raise FieldMismatch(f"{s.field} vs {alg.field}")
        if s.ambient_dim != alg.dim:
            raise DimensionMismatch(f"subspace of {s.ambient_dim}-space in {alg.dim}-dim algebra")


def product_ideal(alg: LeibnizAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of ``[u,v]`` and ``[v,u]`` over basis vectors u of a, v of b."""
    _check_ambient(alg, a, b)
    vecs = []
    for u in a.vectors():
        for v in b.vectors():
            vecs.append(alg.bracket(u, v))
            vecs.append(alg.bracket(v, u))
    return Subspace.span(alg.field, alg.dim, vecs)


def derived(alg: LeibnizAlgebra) -> Subspace:
    """``g^2``."""
    full = alg.full()
    return product_ideal(alg, full, full)


def is_ideal(alg: LeibnizAlgebra, s: Subspace) -> bool:
    _check_ambient(alg, s)
    return product_ideal(alg, alg.full(), s) <= s


def is_subalgebra(alg: LeibnizAlgebra, s: Subspace) -> bool:
    return product_ideal(alg, s, s) <= s


@dataclass(frozen=True, eq=False)
class Ideal:
    parent: LeibnizAlgebra
    space: Subspace

    def __post_init__(self):
        if not is_ideal(self.parent, self.space):
            raise NotAnIdeal("subspace is not a two-sided ideal")

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True, eq=False)
class Pair:
    """An algebra ``g`` with a distinguished ideal ``n``."""

    g: LeibnizAlgebra
    n: Subspace

    def __post_init__(self):
        n = self.n.space if isinstance(self.n, Ideal) else self.n
        object.__setattr__(self, "n", n)
        _check_ambient(self.g, n)
        if not is_ideal(self.g, n):
            raise NotAnIdeal("pair ideal is not a two-sided ideal")

    @classmethod
    def full(cls, g: LeibnizAlgebra) -> "Pair":
        return cls(g, g.full())

    @classmethod
    def of(cls, g: LeibnizAlgebra, vectors) -> "Pair":
        return cls(g, g.span(vectors))

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.g, self.n)

    @property
    def dim_n(self) -> int:
        return self.n.dim

    @property
    def dim_quotient(self) -> int:
        return self.g.dim - self.n.dim

    def __repr__(self):
        return f"Pair(g={self.g!r}, dim n={self.n.dim})"


def commutator_with(pair: Pair) -> Subspace:
    """``[g, n]``."""
    return product_ideal(pair.g, pair.g.full(), pair.n)


def center(alg: LeibnizAlgebra) -> Subspace:
    """Kernel of the stacked left/right multiplication maps."""
    rows = []
    f = alg.field
    for i in range(alg.dim):
        e = {i: f.one}
        rows.extend(alg.left_mult(e).rows)
        rows.extend(alg.right_mult(e).rows)
    if not rows:
        return alg.full()
    return kernel(Matrix.from_sparse_rows(f, rows, alg.dim))


def center_of_pair(pair: Pair) -> Subspace:
    """``Z(g, n) = Z(g) ∩ n``."""
    return intersect(center(pair.g), pair.n)


def lower_central_series(alg: LeibnizAlgebra) -> List[Subspace]:
    """``g ⊇ g^2 ⊇ [g^2,g]+[g,g^2] ⊇ ...`` until it stabilises."""
    full = alg.full()
    series = [full]
    while True:
        nxt = product_ideal(alg, series[-1], full)
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_nilpotent(alg: LeibnizAlgebra) -> bool:
    return lower_central_series(alg)[-1].dim == 0


def _require_nilpotent(alg: LeibnizAlgebra) -> None:
    if not is_nilpotent(alg):
        raise NotNilpotent("operation is only defined for nilpotent algebras")


def minimal_generator_count(alg: LeibnizAlgebra) -> int:
    """``d(g) = dim g/g^2`` (nilpotent algebras only)."""
    _require_nilpotent(alg)
    return alg.dim - derived(alg).dim


def is_extra_special(alg: LeibnizAlgebra) -> bool:
    _require_nilpotent(alg)
    return center(alg).dim == 1 and derived(alg).dim == 1


# ---------------------------------------------------------------------------
# constructions


def quotient_algebra(alg: LeibnizAlgebra, ideal) -> Tuple[LeibnizAlgebra, Matrix]:
    """``g/n`` on the non-pivot coordinates of n, with the projection matrix."""
    n = ideal.space if isinstance(ideal, Ideal) else ideal
    _check_ambient(alg, n)
    if not is_ideal(alg, n):
        raise NotAnIdeal("cannot quotient by a non-ideal")
    proj, sec = quotient_basis(n, alg.full())
    reps = sec.columns()
    q = len(reps)
    sc = {}
    for a in range(q):
        for b in range(q):
            w = proj.apply(alg.bracket(reps[a], reps[b]))
            if w:
                sc[(a, b)] = w
    labels = tuple(alg.labels[min(r)] for r in reps)
    return LeibnizAlgebra(alg.field, q, sc, labels), proj


def subalgebra(alg: LeibnizAlgebra, s: Subspace) -> LeibnizAlgebra:
    """``s`` as an algebra in the coordinates of its canonical basis."""
    vecs = s.vectors()
    sc = {}
    for a, u in enumerate(vecs):
        for b, v in enumerate(vecs):
            w = s.coordinates(alg.bracket(u, v))
            if w:
                sc[(a, b)] = {s.pivots.index(k): x for k, x in w.items()}
    labels = tuple(alg.labels[min(v)] for v in vecs)
    return LeibnizAlgebra(alg.field, len(vecs), sc, labels)


def image_subspace(proj: Matrix, s: Subspace) -> Subspace:
    return Subspace.span(proj.field, proj.nrows, [proj.apply(v) for v in s.vectors()])


def quotient_pair(pair: Pair, k: Subspace) -> Pair:
    """``(g/k, n/k)`` for an ideal ``k ⊆ n``."""
    if not k <= pair.n:
        raise SubspaceNotContained("k must lie in n")
    q, proj = quotient_algebra(pair.g, k)
    return Pair(q, image_subspace(proj, pair.n))


def _disambiguate(a: Sequence[str], b: Sequence[str]) -> Tuple[str, ...]:
    if set(a) & set(b) or len(set(a)) < len(a) or len(set(b)) < len(b):
        return tuple(f"{x}_1" for x in a) + tuple(f"{x}_2" for x in b)
    return tuple(a) + tuple(b)


def direct_sum(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    sc = {k: dict(v) for k, v in a.sc.items()}
    off = a.dim
    for (i, j), t in b.sc.items():
        sc[(i + off, j + off)] = {k + off: c for k, c in t.items()}
    return LeibnizAlgebra(a.field, a.dim + b.dim, sc, _disambiguate(a.labels, b.labels))


def embed(space: Subspace, offset: int, ambient: int) -> Subspace:
    return Subspace.span(space.field, ambient,
                         [{k + offset: c for k, c in v.items()} for v in space.vectors()])


def direct_sum_pair(p1: Pair, p2: Pair) -> Pair:
    g = direct_sum(p1.g, p2.g)
    n = sum_spaces(embed(p1.n, 0, g.dim), embed(p2.n, p1.g.dim, g.dim))
    return Pair(g, n)


# ---------------------------------------------------------------------------
# catalog


def abelian(q: int, field: Field = QQ) -> LeibnizAlgebra:
    if q < 0:
        raise ValueError("q >= 0")
    return LeibnizAlgebra(field, q, {}, tuple(f"a{i}" for i in range(1, q + 1)))


def J1(field: Field = QQ) -> LeibnizAlgebra:
    return LeibnizAlgebra.from_brackets(["x", "y"], {("x", "x"): {"y": 1}}, field)


def J2(field: Field = QQ) -> LeibnizAlgebra:
    return LeibnizAlgebra.from_brackets(["x", "y", "z"], {("x", "y"): {"z": 1}}, field)


def H1(field: Field = QQ) -> LeibnizAlgebra:
    return heisenberg(1, field)


def heisenberg(k: int, field: Field = QQ) -> LeibnizAlgebra:
    """Heisenberg Lie algebra of dimension ``2k+1``."""
    if k < 1:
        raise ValueError("k >= 1")
    if k == 1:
        labels = ["x", "y", "z"]
    else:
        labels = [f"x{i}" for i in range(1, k + 1)] + [f"y{i}" for i in range(1, k + 1)] + ["z"]
    z = 2 * k
    sc = {}
    for i in range(k):
        sc[(i, k + i)] = {z: field.one}
        sc[(k + i, i)] = {z: -field.one}
    return LeibnizAlgebra(field, 2 * k + 1, sc, tuple(labels))


def sl2(field: Field = QQ) -> LeibnizAlgebra:
    """A perfect Lie algebra, used for the perfect-summand cover cases."""
    return LeibnizAlgebra.from_brackets(["e", "f", "h"], {
        ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
        ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
        ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
    }, field)


CATALOG = {
    "abelian": abelian,
    "J1": J1,
    "J2": J2,
    "H1": H1,
    "heisenberg": heisenberg,
    "sl2": sl2,
}


def catalog(name: str, *params: int, field: Field = QQ) -> LeibnizAlgebra:
    try:
        ctor = CATALOG[name]
    except KeyError:
        raise UnknownAlgebra(name) from None
    return ctor(*params, field=field)


def with_abelian(e: LeibnizAlgebra, q: int) -> LeibnizAlgebra:
    """``e ⊕ a(q)``; the abelian coordinates come last."""
    return direct_sum(e, abelian(q, e.field))


def coordinate_span(alg: LeibnizAlgebra, names: Sequence) -> Subspace:
    """Span of the named (or indexed) basis vectors."""
    idx = {n: i for i, n in enumerate(alg.labels)}
    return alg.span([{idx[n] if isinstance(n, str) else n: alg.field.one} for n in names])


__all__ = [
    "LeibnizAlgebra", "ValidationReport", "Ideal", "Pair", "NotAnIdeal", "NotNilpotent",
    "UnknownAlgebra", "validate", "product_ideal", "derived", "is_ideal", "is_subalgebra",
    "commutator_with", "center", "center_of_pair", "lower_central_series", "is_nilpotent",
    "minimal_generator_count", "is_extra_special", "quotient_algebra", "quotient_pair",
    "image_subspace", "subalgebra", "direct_sum", "direct_sum_pair", "embed", "abelian", "J1", "J2", "H1",
    "heisenberg", "sl2", "catalog", "with_abelian", "coordinate_span", "complement",
]
