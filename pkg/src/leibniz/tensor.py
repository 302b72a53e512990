"""Non-abelian tensor and exterior products of two ideals of one algebra.

For ideals ``m, n`` of ``g`` acting on each other by the bracket of ``g``,
``m*n`` is spanned by symbols ``A(i,j) = m_i * n_j`` and ``B(i,j) = n_i * m_j``
(basis vectors of m and n).  Every generator bracket is again a generator:

    [s, s'] = A(c(s), c(s'))

where ``c`` is the commutator map ``A(m,n) -> [m,n]``, ``B(n,m) -> [n,m]``.
So the algebra is the vector-space quotient of the symbol space by the
basis instances of the defining relations, with the bracket above.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .algebra import (LeibnizAlgebra, NotAnIdeal, Pair, _check_ambient, commutator_with,
                      derived, direct_sum_pair, image_subspace, is_ideal, quotient_algebra)
from .exactlin import (Field, Matrix, SparseVec, Subspace, SubspaceNotContained, image,
                       intersect, kernel, quotient_basis, rank, sp_axpy, sum_spaces)


class BracketNotWellDefined(RuntimeError):
    """A relation survives the commutator map; never expected on valid input."""


class RelationNotKilled(RuntimeError):
    pass


@dataclass(frozen=True)
class Symbol:
    side: str  # "A": m_i * n_j, "B": n_i * m_j
    i: int
    j: int


class SymbolSpace:
    """Coordinates on the ``2 dim(m) dim(n)`` symbols, ordered (side, i, j)."""

    def __init__(self, g: LeibnizAlgebra, m: Subspace, n: Subspace):
        self.g, self.m, self.n = g, m, n
        self.dm, self.dn = m.dim, n.dim
        self.size = 2 * self.dm * self.dn
        self._mvec = m.vectors()
        self._nvec = n.vectors()

    def index(self, s: Symbol) -> int:
        if s.side == "A":
            return s.i * self.dn + s.j
        return self.dm * self.dn + s.i * self.dm + s.j

    def symbol(self, idx: int) -> Symbol:
        half = self.dm * self.dn
        if idx < half:
            return Symbol("A", *divmod(idx, self.dn))
        return Symbol("B", *divmod(idx - half, self.dm))

    def symbols(self) -> List[Symbol]:
        return [self.symbol(k) for k in range(self.size)]

    def _coords(self, space: Subspace, v: SparseVec) -> SparseVec:
        if space.reduce(v):
            raise NotAnIdeal("element escapes its ideal; inputs are not ideals")
        return space.coordinates(v)

    def A(self, u: SparseVec, v: SparseVec) -> SparseVec:
        """``u * v`` with u in m and v in n (ambient coordinates)."""
        if not u or not v:
            return {}
        out: SparseVec = {}
        cu = self._coords(self.m, u)
        cv = self._coords(self.n, v)
        for a, x in cu.items():
            base = a * self.dn
            for b, y in cv.items():
                out[base + b] = out.get(base + b, 0) + x * y
        return {k: x for k, x in out.items() if x}

    def B(self, v: SparseVec, u: SparseVec) -> SparseVec:
        """``v * u`` with v in n and u in m."""
        if not u or not v:
            return {}
        out: SparseVec = {}
        cv = self._coords(self.n, v)
        cu = self._coords(self.m, u)
        off = self.dm * self.dn
        for a, x in cv.items():
            base = off + a * self.dm
            for b, y in cu.items():
                out[base + b] = out.get(base + b, 0) + x * y
        return {k: x for k, x in out.items() if x}

    def factors(self, idx: int) -> Tuple[SparseVec, SparseVec]:
        s = self.symbol(idx)
        if s.side == "A":
            return self._mvec[s.i], self._nvec[s.j]
        return self._nvec[s.i], self._mvec[s.j]

    def commutator_matrix(self) -> Matrix:
        """``g.dim x size`` matrix of ``c``."""
        cols = []
        for k in range(self.size):
            x, y = self.factors(k)
            cols.append(self.g.bracket(x, y))
        return Matrix.from_columns(self.g.field, cols, self.g.dim)

    def relation_vectors(self) -> Iterator[SparseVec]:
        """Basis instances of every relation family, always in the same order."""
        g = self.g
        br = g.bracket
        one = g.field.one
        M, N = self._mvec, self._nvec

        def combo(*terms):
            out: SparseVec = {}
            for c, v in terms:
                sp_axpy(out, c * one, v)
            return out

        A, B = self.A, self.B
        # m*[n,n'] = m^n * n' - m^{n'} * n
        for m in M:
            for n in N:
                for n2 in N:
                    yield combo((1, A(m, br(n, n2))), (-1, A(br(m, n), n2)), (1, A(br(m, n2), n)))
        # n*[m,m'] = n^m * m' - n^{m'} * m
        for n in N:
            for m in M:
                for m2 in M:
                    yield combo((1, B(n, br(m, m2))), (-1, B(br(n, m), m2)), (1, B(br(n, m2), m)))
        # [m,m']*n = ^m n * m' - m * n^{m'}
        for m in M:
            for m2 in M:
                for n in N:
                    yield combo((1, A(br(m, m2), n)), (-1, B(br(m, n), m2)), (1, A(m, br(n, m2))))
        # [n,n']*m = ^n m * n' - n * m^{n'}
        for n in N:
            for n2 in N:
                for m in M:
                    yield combo((1, B(br(n, n2), m)), (-1, A(br(n, m), n2)), (1, B(n, br(m, n2))))
        # m * ^{m'}n = - m * n^{m'}
        for m in M:
            for m2 in M:
                for n in N:
                    yield combo((1, A(m, br(m2, n))), (1, A(m, br(n, m2))))
        # n * ^{n'}m = - n * m^{n'}
        for n in N:
            for n2 in N:
                for m in M:
                    yield combo((1, B(n, br(n2, m))), (1, B(n, br(m, n2))))
        # outer equalities A(c s, c s') = B(c s, c s')
        comm = [br(*self.factors(k)) for k in range(self.size)]
        half = self.dm * self.dn
        a_idx = range(half)
        b_idx = range(half, self.size)
        for first, second in ((a_idx, a_idx), (b_idx, b_idx), (a_idx, b_idx), (b_idx, a_idx)):
            for s in first:
                u = comm[s]
                if not u:
                    continue
                for t in second:
                    v = comm[t]
                    if v:
                        yield combo((1, A(u, v)), (-1, B(u, v)))

    def square_vectors(self) -> List[SparseVec]:
        """``A(a,b) - B(a,b)`` for a, b in a basis of ``m ∩ n``."""
        common = intersect(self.m, self.n)
        one = self.g.field.one
        out = []
        for a in common.vectors():
            for b in common.vectors():
                v = self.A(a, b)
                sp_axpy(v, -one, self.B(a, b))
                out.append(v)
        return out


@dataclass(frozen=True, eq=False)
class TensorPresentation:
    """Presented quotient of the symbol space with its induced bracket."""

    g: LeibnizAlgebra
    m: Subspace
    n: Subspace
    kind: str  # "tensor" or "exterior"
    space: SymbolSpace
    relations: Subspace
    projection: Matrix  # symbol coords -> quotient coords
    section: Matrix  # quotient coords -> symbol coords
    algebra: LeibnizAlgebra  # the quotient with bracket table

    @property
    def symbols(self) -> List[Symbol]:
        return self.space.symbols()

    @property
    def quot_dim(self) -> int:
        return self.algebra.dim

    @property
    def bracket_table(self):
        return self.algebra.sc

    def symbol_class(self, s: Symbol) -> SparseVec:
        return self.projection.apply({self.space.index(s): self.g.field.one})

    def project(self, v: SparseVec) -> SparseVec:
        return self.projection.apply(v)

    def symbol_bracket(self, v: SparseVec, w: SparseVec) -> SparseVec:
        """Class of ``[v, w]`` for symbol-level representatives ``v, w``."""
        C = self.space.commutator_matrix()
        return self.project(self.space.A(C.apply(v), C.apply(w)))


def _check_ideals(g: LeibnizAlgebra, m: Subspace, n: Subspace) -> None:
    _check_ambient(g, m, n)
    if not is_ideal(g, m) or not is_ideal(g, n):
        raise NotAnIdeal("tensor factors must be ideals of g")


def _present(g: LeibnizAlgebra, m: Subspace, n: Subspace, kind: str) -> TensorPresentation:
    sp = SymbolSpace(g, m, n)
    f = g.field
    rel_vecs = list(sp.relation_vectors())
    C = sp.commutator_matrix()
    for r in rel_vecs:
        if C.apply(r):
            raise BracketNotWellDefined("commutator map does not kill a relation")
    if kind == "exterior":
        sq = sp.square_vectors()
        for r in sq:
            if C.apply(r):
                raise BracketNotWellDefined("square element is not central")
        rel_vecs += sq
    relations = Subspace.span(f, sp.size, rel_vecs)
    proj, sec = quotient_basis(relations, Subspace.full(f, sp.size))
    reps = sec.columns()
    comm = [C.apply(r) for r in reps]
    sc = {}
    for a, ca in enumerate(comm):
        if not ca:
            continue
        for b, cb in enumerate(comm):
            if cb:
                w = proj.apply(sp.A(ca, cb))
                if w:
                    sc[(a, b)] = w
    labels = []
    for r in reps:
        s = sp.symbol(min(r))
        x = g.labels[min(sp.factors(min(r))[0])]
        y = g.labels[min(sp.factors(min(r))[1])]
        labels.append(f"{s.side}({x},{y})#{min(r)}")
    alg = LeibnizAlgebra(f, len(reps), sc, tuple(labels))
    return TensorPresentation(g, m, n, kind, sp, relations, proj, sec, alg)


def tensor_product(g: LeibnizAlgebra, m: Subspace, n: Subspace) -> TensorPresentation:
    """``m * n`` for ideals m, n of g."""
    _check_ideals(g, m, n)
    return _present(g, m, n, "tensor")


def exterior_product(g: LeibnizAlgebra, m: Subspace, n: Subspace) -> TensorPresentation:
    """``m ∧ n = (m * n) / (m □ n)``."""
    _check_ideals(g, m, n)
    return _present(g, m, n, "exterior")


def square_subspace(tp: TensorPresentation) -> Subspace:
    """The square ``m □ n`` in quotient coordinates of a tensor presentation."""
    if tp.kind != "tensor":
        raise ValueError("square_subspace expects a tensor presentation")
    vecs = [tp.project(v) for v in tp.space.square_vectors()]
    return Subspace.span(tp.g.field, tp.quot_dim, vecs)


def commutator_map(tp: TensorPresentation) -> Matrix:
    """Matrix of ``x*n -> [x,n]``, ``n*x -> [n,x]`` on quotient coordinates."""
    C = tp.space.commutator_matrix()
    for r in tp.relations.vectors():
        if C.apply(r):
            raise RelationNotKilled("relation has nonzero commutator")
    return C @ tp.section


def exterior_pair(pair: Pair) -> TensorPresentation:
    """``g ∧ n`` for a pair."""
    return exterior_product(pair.g, pair.g.full(), pair.n)


# ---------------------------------------------------------------------------
# induced maps


def _transfer(src: TensorPresentation, dst: TensorPresentation, fm, fn) -> Matrix:
    """Matrix of the map induced on quotients by linear maps on the factors.

    ``fm``/``fn`` send ambient vectors of src's m/n into ambient vectors of
    dst's m/n.  Relations of src must land in relations of dst.
    """
    f = src.g.field
    cols = []
    for v in src.section.columns():
        out: SparseVec = {}
        for k, c in v.items():
            x, y = src.space.factors(k)
            if src.space.symbol(k).side == "A":
                w = dst.space.A(fm(x), fn(y))
            else:
                w = dst.space.B(fn(x), fm(y))
            sp_axpy(out, c, w)
        cols.append(dst.project(out))
    for r in src.relations.vectors():
        out = {}
        for k, c in r.items():
            x, y = src.space.factors(k)
            if src.space.symbol(k).side == "A":
                w = dst.space.A(fm(x), fn(y))
            else:
                w = dst.space.B(fn(x), fm(y))
            sp_axpy(out, c, w)
        if dst.project(out):
            raise RelationNotKilled("induced map does not respect relations")
    return Matrix.from_columns(f, cols, dst.quot_dim)


@dataclass(frozen=True, eq=False)
class InducedMaps:
    source: TensorPresentation  # g ∧ k
    middle: TensorPresentation  # g ∧ n
    target: TensorPresentation  # (g/k) ∧ (n/k)
    map1: Matrix
    map2: Matrix

    def composite_is_zero(self) -> bool:
        return (self.map2 @ self.map1).is_zero()

    def map2_surjective(self) -> bool:
        return rank(self.map2) == self.target.quot_dim

    def exact_in_middle(self) -> bool:
        return image(self.map1) == kernel(self.map2)


def induced_exterior_map(g: LeibnizAlgebra, k: Subspace, n: Subspace) -> InducedMaps:
    """``g∧k -> g∧n -> (g/k)∧(n/k)`` for ideals ``k ⊆ n``."""
    if not k <= n:
        raise SubspaceNotContained("k must lie in n")
    full = g.full()
    gk = exterior_product(g, full, k)
    gn = exterior_product(g, full, n)
    q, proj = quotient_algebra(g, k)
    nq = image_subspace(proj, n)
    tgt = exterior_product(q, q.full(), nq)
    ident = lambda v: v  # noqa: E731
    map1 = _transfer(gk, gn, ident, ident)
    map2 = _transfer(gn, tgt, proj.apply, proj.apply)
    return InducedMaps(gk, gn, tgt, map1, map2)


# ---------------------------------------------------------------------------
# trivial-action cross factor of a direct sum


@dataclass(frozen=True, eq=False)
class CrossFactor:
    """``((n̄1*ḡ2) ⊕ (ḡ1*n̄2)) / 𝔞`` built from trivial-action closed forms.

    Both tensor factors act trivially, so ``u*v`` is ``(u⊗v) ⊕ (v⊗u)``.  The
    four blocks, in coordinate order, are

        0: n̄1 ⊗ ḡ2   (symbols n̄1*ḡ2)
        1: ḡ2 ⊗ n̄1   (symbols ḡ2*n̄1)
        2: ḡ1 ⊗ n̄2   (symbols ḡ1*n̄2)
        3: n̄2 ⊗ ḡ1   (symbols n̄2*ḡ1)

    ``rho_i: n̄_i -> ḡ_i`` is the map induced by inclusion.  𝔞 is spanned by
    ``(u * rho2 w) - (rho1 u * w)`` in blocks 0/2 and
    ``(rho2 w * u) - (w * rho1 u)`` in blocks 1/3.
    """

    field: Field
    dn1: int
    dg2: int
    dg1: int
    dn2: int
    rho1: Matrix
    rho2: Matrix
    a: Subspace
    projection: Matrix
    section: Matrix

    @property
    def offsets(self) -> Tuple[int, int, int, int, int]:
        b0 = self.dn1 * self.dg2
        b2 = self.dg1 * self.dn2
        return (0, b0, 2 * b0, 2 * b0 + b2, 2 * b0 + 2 * b2)

    @property
    def ambient_dim(self) -> int:
        return self.offsets[-1]

    @property
    def dim(self) -> int:
        return self.projection.nrows

    def block(self, which: int, u: SparseVec, v: SparseVec) -> SparseVec:
        """Pure tensor ``u ⊗ v`` in block ``which`` (factor coords as in the table)."""
        off = self.offsets[which]
        width = (self.dg2, self.dn1, self.dn2, self.dg1)[which]
        out: SparseVec = {}
        for i, x in u.items():
            for j, y in v.items():
                k = off + i * width + j
                out[k] = out.get(k, 0) + x * y
        return {k: x for k, x in out.items() if x}


def cross_factor(field: Field, dn1: int, dg2: int, dg1: int, dn2: int,
                 rho1: Matrix, rho2: Matrix) -> CrossFactor:
    n_amb = 2 * dn1 * dg2 + 2 * dg1 * dn2
    tmp = CrossFactor(field, dn1, dg2, dg1, dn2, rho1, rho2,
                      Subspace.zero(field, n_amb), Matrix.zeros(field, 0, n_amb),
                      Matrix.zeros(field, n_amb, 0))
    one = field.one
    gens = []
    for i in range(dn1):
        u = {i: one}
        ru = rho1.apply(u)
        for j in range(dn2):
            w = {j: one}
            rw = rho2.apply(w)
            v = tmp.block(0, u, rw)
            sp_axpy(v, -one, tmp.block(2, ru, w))
            gens.append(v)
            v = tmp.block(1, rw, u)
            sp_axpy(v, -one, tmp.block(3, w, ru))
            gens.append(v)
    a = Subspace.span(field, n_amb, gens)
    proj, sec = quotient_basis(a, Subspace.full(field, n_amb))
    return CrossFactor(field, dn1, dg2, dg1, dn2, rho1, rho2, a, proj, sec)


@dataclass(frozen=True, eq=False)
class PairAbelianisation:
    """``n̄ = n/[g,n]``, ``ḡ = g/g^2`` and the induced ``rho: n̄ -> ḡ``."""

    nbar_proj: Matrix  # ambient g coords -> n̄ coords (meaningful on n)
    nbar_sec: Matrix
    gbar_proj: Matrix  # ambient g coords -> ḡ coords
    rho: Matrix


def abelianise_pair(pair: Pair) -> PairAbelianisation:
    gn = commutator_with(pair)
    np_, ns = quotient_basis(gn, pair.n)
    gp, _ = quotient_basis(derived(pair.g), pair.g.full())
    rho = gp @ ns
    return PairAbelianisation(np_, ns, gp, rho)


def pair_cross_factor(p1: Pair, p2: Pair) -> CrossFactor:
    a1, a2 = abelianise_pair(p1), abelianise_pair(p2)
    f = p1.g.field
    return cross_factor(f, a1.nbar_proj.nrows, a2.gbar_proj.nrows,
                        a1.gbar_proj.nrows, a2.nbar_proj.nrows, a1.rho, a2.rho)


@dataclass
class DecompositionReport:
    direct_dim: int
    first_dim: int
    second_dim: int
    cross_dim: int
    map_bijective: bool

    @property
    def rhs_dim(self) -> int:
        return self.first_dim + self.second_dim + self.cross_dim

    @property
    def agree(self) -> bool:
        return self.direct_dim == self.rhs_dim and self.map_bijective


def decomposition_map(p1: Pair, p2: Pair, whole: TensorPresentation,
                      e1: TensorPresentation, e2: TensorPresentation, cf: CrossFactor) -> Matrix:
    """Explicit map ``(g1⊕g2)∧(n1⊕n2) -> (g1∧n1) ⊕ (g2∧n2) ⊕ cross``.

    On generators ``x∧n -> (x1∧n1, x2∧n2, n̄1*x̄2 + n̄2*x̄1)`` and
    ``n∧x -> (n1∧x1, n2∧x2, x̄2*n̄1 + x̄1*n̄2)``.
    """
    f = p1.g.field
    d1 = p1.g.dim
    ab1, ab2 = abelianise_pair(p1), abelianise_pair(p2)

    def split(v: SparseVec) -> Tuple[SparseVec, SparseVec]:
        return ({k: c for k, c in v.items() if k < d1}, {k - d1: c for k, c in v.items() if k >= d1})

    def image_of(sym_idx: int) -> SparseVec:
        x, y = whole.space.factors(sym_idx)
        side = whole.space.symbol(sym_idx).side
        x1, x2 = split(x)
        y1, y2 = split(y)
        out: SparseVec = {}
        if side == "A":  # x ∈ g, y ∈ n
            w1 = e1.project(e1.space.A(x1, y1)) if x1 and y1 else {}
            w2 = e2.project(e2.space.A(x2, y2)) if x2 and y2 else {}
            c = cf.block(0, ab1.nbar_proj.apply(y1), ab2.gbar_proj.apply(x2))
            sp_axpy(c, f.one, cf.block(3, ab2.nbar_proj.apply(y2), ab1.gbar_proj.apply(x1)))
        else:  # x ∈ n, y ∈ g
            w1 = e1.project(e1.space.B(x1, y1)) if x1 and y1 else {}
            w2 = e2.project(e2.space.B(x2, y2)) if x2 and y2 else {}
            c = cf.block(1, ab2.gbar_proj.apply(y2), ab1.nbar_proj.apply(x1))
            sp_axpy(c, f.one, cf.block(2, ab1.gbar_proj.apply(y1), ab2.nbar_proj.apply(x2)))
        c = cf.projection.apply(c)
        out.update(w1)
        out.update({k + e1.quot_dim: v for k, v in w2.items()})
        out.update({k + e1.quot_dim + e2.quot_dim: v for k, v in c.items()})
        return out

    sym_images = [image_of(k) for k in range(whole.space.size)]
    total = e1.quot_dim + e2.quot_dim + cf.dim

    def apply(v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for k, c in v.items():
            sp_axpy(out, c, sym_images[k])
        return out

    for r in whole.relations.vectors():
        if apply(r):
            raise RelationNotKilled("decomposition map does not respect relations")
    cols = [apply(v) for v in whole.section.columns()]
    return Matrix.from_columns(f, cols, total)


def direct_sum_decomposition_check(p1: Pair, p2: Pair) -> DecompositionReport:
    """Compare ``dim (g1⊕g2)∧(n1⊕n2)`` with its three-summand decomposition."""
    whole = exterior_pair(direct_sum_pair(p1, p2))
    e1, e2 = exterior_pair(p1), exterior_pair(p2)
    cf = pair_cross_factor(p1, p2)
    phi = decomposition_map(p1, p2, whole, e1, e2, cf)
    bij = phi.nrows == phi.ncols and rank(phi) == phi.ncols
    return DecompositionReport(whole.quot_dim, e1.quot_dim, e2.quot_dim, cf.dim, bij)


def trivial_tensor_dim(dim_a: int, dim_b: int) -> int:
    """``dim(a * b)`` when both factors are abelian and act trivially."""
    return 2 * dim_a * dim_b


def sum_of(*spaces: Subspace) -> Subspace:
    out = spaces[0]
    for s in spaces[1:]:
        out = sum_spaces(out, s)
    return out
