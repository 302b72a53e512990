"""Crossed modules, relative stem covers, and covers of direct sums.

A crossed module is stored as two algebras ``m``, ``g``, a matrix ``delta``
(``dim g x dim m``) and two action tables on basis elements:
``left[(x, i)] = ^{e_x} f_i`` and ``right[(i, x)] = f_i^{e_x}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Tuple

from .algebra import (LeibnizAlgebra, Pair, ValidationReport, abelian, derived, direct_sum,
                      direct_sum_pair, subalgebra, validate)
from .exactlin import (Field, FieldMismatch, Matrix, SparseVec, Subspace, complement, image,
                       inverse, kernel, quotient_basis, sp_axpy, sum_spaces)
from .homology import boundary, hl2_exterior
from .tensor import cross_factor

ActionTable = Dict[Tuple[int, int], SparseVec]


class NotAbelian(ValueError):
    pass


class NotAFullCover(ValueError):
    pass


def _clean(v: SparseVec) -> SparseVec:
    return {k: x for k, x in v.items() if x}


@dataclass(frozen=True, eq=False)
class CrossedModule:
    m: LeibnizAlgebra
    g: LeibnizAlgebra
    delta: Matrix
    left: ActionTable
    right: ActionTable

    def __post_init__(self):
        object.__setattr__(self, "left", {k: _clean(v) for k, v in self.left.items() if _clean(v)})
        object.__setattr__(self, "right", {k: _clean(v) for k, v in self.right.items() if _clean(v)})
        if self.delta.shape != (self.g.dim, self.m.dim):
            raise ValueError(f"delta has shape {self.delta.shape}, expected {(self.g.dim, self.m.dim)}")

    @property
    def field(self) -> Field:
        return self.m.field

    def act_left(self, x: SparseVec, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for a, c in x.items():
            for i, d in v.items():
                w = self.left.get((a, i))
                if w:
                    sp_axpy(out, c * d, w)
        return out

    def act_right(self, v: SparseVec, x: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, d in v.items():
            for a, c in x.items():
                w = self.right.get((i, a))
                if w:
                    sp_axpy(out, c * d, w)
        return out

    def left_matrix(self, x: int) -> Matrix:
        return Matrix.from_columns(self.field, [self.left.get((x, i), {}) for i in range(self.m.dim)],
                                   self.m.dim)

    def right_matrix(self, x: int) -> Matrix:
        return Matrix.from_columns(self.field, [self.right.get((i, x), {}) for i in range(self.m.dim)],
                                   self.m.dim)


def _diff(a: SparseVec, b: SparseVec, one) -> SparseVec:
    out = dict(a)
    sp_axpy(out, -one, b)
    return out


def validate_crossed_module(cm: CrossedModule) -> ValidationReport:
    """Action axioms, equivariance of delta, and the Peiffer identities on basis tuples."""
    rep = ValidationReport()
    m, g = cm.m, cm.g
    one = cm.field.one
    em = [{i: one} for i in range(m.dim)]
    eg = [{i: one} for i in range(g.dim)]
    L, R = cm.act_left, cm.act_right
    br = m.bracket

    def fail(name, idx, val):
        if val:
            rep.violations.append({"axiom": name, "indices": idx, "defect": dict(sorted(val.items()))})

    for name, v in (("m", validate(m)), ("g", validate(g))):
        for viol in v.violations:
            rep.violations.append({"axiom": f"leibniz identity in {name}", "indices": viol["triple"],
                                   "defect": viol["defect"]})

    dm = [cm.delta.apply(v) for v in em]
    for i in range(m.dim):
        for j in range(m.dim):
            fail("delta is a homomorphism", (i, j),
                 _diff(cm.delta.apply(br(em[i], em[j])), g.bracket(dm[i], dm[j]), one))
            fail("Peiffer ^{delta m}m' = [m,m']", (i, j), _diff(L(dm[i], em[j]), br(em[i], em[j]), one))
            fail("Peiffer m^{delta m'} = [m,m']", (i, j), _diff(R(em[i], dm[j]), br(em[i], em[j]), one))
    for x in range(g.dim):
        for i in range(m.dim):
            fail("delta(^x m) = [x, delta m]", (x, i),
                 _diff(cm.delta.apply(L(eg[x], em[i])), g.bracket(eg[x], dm[i]), one))
            fail("delta(m^x) = [delta m, x]", (i, x),
                 _diff(cm.delta.apply(R(em[i], eg[x])), g.bracket(dm[i], eg[x]), one))

    for x in range(g.dim):
        for y in range(g.dim):
            xy = g.bracket(eg[x], eg[y])
            for i in range(m.dim):
                lhs = L(xy, em[i])
                rhs = L(eg[x], L(eg[y], em[i]))
                sp_axpy(rhs, one, R(L(eg[x], em[i]), eg[y]))
                fail("^[x,x']m = ^x(^x'm) + (^x m)^x'", (x, y, i), _diff(lhs, rhs, one))
                lhs = R(em[i], xy)
                rhs = _diff(R(R(em[i], eg[x]), eg[y]), R(R(em[i], eg[y]), eg[x]), one)
                fail("m^[x,x'] = (m^x)^x' - (m^x')^x", (i, x, y), _diff(lhs, rhs, one))
                lhs = L(eg[x], L(eg[y], em[i]))
                sp_axpy(lhs, one, L(eg[x], R(em[i], eg[y])))
                fail("^x(^x'm) = -^x(m^x')", (x, y, i), lhs)
    for x in range(g.dim):
        for i in range(m.dim):
            for j in range(m.dim):
                mm = br(em[i], em[j])
                rhs = _diff(br(L(eg[x], em[i]), em[j]), br(L(eg[x], em[j]), em[i]), one)
                fail("^x[m,m'] = [^x m,m'] - [^x m',m]", (x, i, j), _diff(L(eg[x], mm), rhs, one))
                rhs = br(R(em[i], eg[x]), em[j])
                sp_axpy(rhs, one, br(em[i], R(em[j], eg[x])))
                fail("[m,m']^x = [m^x,m'] + [m,m'^x]", (i, j, x), _diff(R(mm, eg[x]), rhs, one))
                lhs = br(em[i], L(eg[x], em[j]))
                sp_axpy(lhs, one, br(em[i], R(em[j], eg[x])))
                fail("[m,^x m'] = -[m,m'^x]", (i, x, j), lhs)
    return rep


def relative_center(cm: CrossedModule) -> Subspace:
    """``Z(g,m)``: elements killed by every left and right action."""
    rows: List[SparseVec] = []
    for x in range(cm.g.dim):
        rows.extend(cm.left_matrix(x).rows)
        rows.extend(cm.right_matrix(x).rows)
    return kernel(Matrix.from_sparse_rows(cm.field, rows, cm.m.dim))


def action_commutator(cm: CrossedModule) -> Subspace:
    """``[g,m]``: span of all action values."""
    return Subspace.span(cm.field, cm.m.dim, list(cm.left.values()) + list(cm.right.values()))


# ---------------------------------------------------------------------------
# stem covers


@dataclass(frozen=True, eq=False)
class StemCoverCandidate:
    cm: CrossedModule
    target: Pair


@dataclass
class StemCoverReport:
    image_ok: bool
    kernel_dim: int
    hl2_dim: int
    kernel_in_center_and_commutator: bool
    crossed_module: ValidationReport = dc_field(default_factory=ValidationReport)

    @property
    def kernel_ok(self) -> bool:
        return self.kernel_dim == self.hl2_dim

    @property
    def ok(self) -> bool:
        return (self.crossed_module.ok and self.image_ok and self.kernel_ok
                and self.kernel_in_center_and_commutator)


def validate_stem_cover(c: StemCoverCandidate) -> StemCoverReport:
    cm = c.cm
    im = image(cm.delta)
    ker = kernel(cm.delta)
    zc = relative_center(cm)
    comm = action_commutator(cm)
    inside = ker <= zc and ker <= comm
    return StemCoverReport(im == c.target.n, ker.dim, hl2_exterior(c.target).dim, inside,
                           validate_crossed_module(cm))


# ---------------------------------------------------------------------------
# constructions


def _bracket_tables(g: LeibnizAlgebra, m: LeibnizAlgebra, lift) -> Tuple[ActionTable, ActionTable]:
    """Actions ``^x m = [lift(x), m]`` and ``m^x = [m, lift(x)]`` inside ``m``."""
    one = g.field.one
    left, right = {}, {}
    for x in range(g.dim):
        lx = lift(x)
        for i in range(m.dim):
            left[(x, i)] = m.bracket(lx, {i: one})
            right[(i, x)] = m.bracket({i: one}, lx)
    return left, right


def inclusion_crossed_module(pair: Pair) -> CrossedModule:
    """``n ↪ g`` with the bracket actions."""
    g = pair.g
    m = subalgebra(g, pair.n)
    vecs = pair.n.vectors()
    delta = Matrix.from_columns(g.field, vecs, g.dim)
    left, right = {}, {}
    piv = pair.n.pivots
    for x in range(g.dim):
        ex = {x: g.field.one}
        for i, v in enumerate(vecs):
            for tab, w in ((left, g.bracket(ex, v)), (right, g.bracket(v, ex))):
                coords = pair.n.coordinates(w)
                key = (x, i) if tab is left else (i, x)
                tab[key] = {piv.index(k): c for k, c in coords.items()}
    return CrossedModule(m, g, delta, left, right)


def identity_crossed_module(g: LeibnizAlgebra) -> CrossedModule:
    left, right = _bracket_tables(g, g, lambda x: {x: g.field.one})
    return CrossedModule(g, g, Matrix.identity(g.field, g.dim), left, right)


def identity_cover(g: LeibnizAlgebra) -> StemCoverCandidate:
    """``id_g`` as a stem cover of ``(g,g)``; correct exactly when ``HL_2(g) = 0``."""
    return StemCoverCandidate(identity_crossed_module(g), Pair.full(g))


def full_pair_cover(g: LeibnizAlgebra) -> StemCoverCandidate:
    """Stem cover of ``(g,g)`` as the central extension by a 2-cocycle.

    ``K = (g⊗g)/(B_2 + C)`` with ``C`` the canonical complement of the cycles
    ``Z_2``, so ``K ≅ HL_2(g)``. The cover is ``g ⊕ K`` with bracket
    ``[(x,a),(y,b)] = ([x,y], φ(x⊗y))``.
    """
    f = g.field
    d = g.dim
    z2 = kernel(boundary(g, 2))
    b2 = image(boundary(g, 3))
    rel = sum_spaces(b2, complement(z2))
    phi, _ = quotient_basis(rel, Subspace.full(f, d * d))
    k = phi.nrows
    sc = {}
    for i in range(d):
        for j in range(d):
            w = dict(g.sc.get((i, j), {}))
            for r, c in phi.apply({i * d + j: f.one}).items():
                w[d + r] = c
            if w:
                sc[(i, j)] = w
    labels = tuple(g.labels) + tuple(f"k{r + 1}" for r in range(k))
    m = LeibnizAlgebra(f, d + k, sc, labels)
    delta = Matrix.from_columns(f, [{i: f.one} for i in range(d)] + [{}] * k, d)
    left, right = _bracket_tables(g, m, lambda x: {x: f.one})
    return StemCoverCandidate(CrossedModule(m, g, delta, left, right), Pair.full(g))


def zero_cover(u: LeibnizAlgebra) -> StemCoverCandidate:
    """``0 -> u``, a stem cover of ``(u, 0)``."""
    zero = abelian(0, u.field)
    return StemCoverCandidate(CrossedModule(zero, u, Matrix.zeros(u.field, u.dim, 0), {}, {}),
                              Pair(u, u.zero()))


def _abelianisations(c: StemCoverCandidate):
    cm = c.cm
    mp, ms = quotient_basis(action_commutator(cm), cm.m.full())
    gp, _ = quotient_basis(derived(cm.g), cm.g.full())
    rho = gp @ cm.delta @ ms
    return mp, gp, rho


def direct_sum_cover(c1: StemCoverCandidate, c2: StemCoverCandidate,
                     literal: bool = False) -> StemCoverCandidate:
    """Cover of ``(g1⊕g2, n1⊕n2)`` on ``m1 ∔ m2 ∔ B``.

    ``B = ((m̄1*ḡ2) ⊕ (ḡ1*m̄2))/𝔞`` with ``m̄i = mi/[gi,mi]`` and ``ḡi = gi/gi^2``.
    The mixed terms are chosen so that both Peiffer identities hold:

        [m, m']   gets  δ2(m2)‾*m̄1' + δ1(m1)‾*m̄2'
        ^x m      gets  x̄2*m̄1 + x̄1*m̄2
        m^x       gets  m̄1*x̄2 + m̄2*x̄1

    ``literal=True`` puts the mixed bracket terms in the opposite slots with a
    minus sign on one of them. That variant breaks the second Peiffer identity
    and is kept only so the failure can be shown.
    """
    cm1, cm2 = c1.cm, c2.cm
    f = cm1.field
    if cm2.field != f:
        raise FieldMismatch("covers over different fields")
    mp1, gp1, rho1 = _abelianisations(c1)
    mp2, gp2, rho2 = _abelianisations(c2)
    cf = cross_factor(f, mp1.nrows, gp2.nrows, gp1.nrows, mp2.nrows, rho1, rho2)
    d1, d2, db = cm1.m.dim, cm2.m.dim, cf.dim
    one = f.one
    neg = -one

    def zvec(blocks) -> SparseVec:
        amb: SparseVec = {}
        for which, u, v, s in blocks:
            sp_axpy(amb, s, cf.block(which, u, v))
        return {d1 + d2 + k: x for k, x in cf.projection.apply(amb).items()}

    def col(i) -> SparseVec:
        return {i: one}

    mbar1 = [mp1.apply(col(i)) for i in range(d1)]
    mbar2 = [mp2.apply(col(i)) for i in range(d2)]
    dbar1 = [gp1.apply(cm1.delta.apply(col(i))) for i in range(d1)]
    dbar2 = [gp2.apply(cm2.delta.apply(col(i))) for i in range(d2)]
    gb1 = [gp1.apply(col(x)) for x in range(cm1.g.dim)]
    gb2 = [gp2.apply(col(x)) for x in range(cm2.g.dim)]

    sc: Dict[Tuple[int, int], SparseVec] = {}
    for (i, j), w in cm1.m.sc.items():
        sc[(i, j)] = dict(w)
    for (i, j), w in cm2.m.sc.items():
        sc[(d1 + i, d1 + j)] = {d1 + k: x for k, x in w.items()}
    for i in range(d1):
        for j in range(d2):
            if literal:
                # m = e_i in m1, m' = f_j in m2: (0, -δ1(m1)‾*m̄2')
                sc[(i, d1 + j)] = zvec([(2, dbar1[i], mbar2[j], neg)])
                # m = f_j in m2, m' = e_i in m1: (m̄1'*δ2(m2)‾, 0)
                sc[(d1 + j, i)] = zvec([(0, mbar1[i], dbar2[j], one)])
            else:
                sc[(i, d1 + j)] = zvec([(2, dbar1[i], mbar2[j], one)])
                sc[(d1 + j, i)] = zvec([(1, dbar2[j], mbar1[i], one)])
    labels = tuple(f"{s}_1" for s in cm1.m.labels) + tuple(f"{s}_2" for s in cm2.m.labels) + \
        tuple(f"b{r + 1}" for r in range(db))
    m = LeibnizAlgebra(f, d1 + d2 + db, sc, labels)

    g = direct_sum(cm1.g, cm2.g)
    n1 = cm1.g.dim
    left: ActionTable = {}
    right: ActionTable = {}
    for (x, i), w in cm1.left.items():
        left[(x, i)] = dict(w)
    for (i, x), w in cm1.right.items():
        right[(i, x)] = dict(w)
    for (x, i), w in cm2.left.items():
        left[(n1 + x, d1 + i)] = {d1 + k: c for k, c in w.items()}
    for (i, x), w in cm2.right.items():
        right[(d1 + i, n1 + x)] = {d1 + k: c for k, c in w.items()}
    for x in range(n1):
        for j in range(d2):
            if literal:
                left[(x, d1 + j)] = zvec([(2, gb1[x], mbar2[j], neg)])
                right[(d1 + j, x)] = zvec([(3, mbar2[j], gb1[x], neg)])
            else:
                left[(x, d1 + j)] = zvec([(2, gb1[x], mbar2[j], one)])
                right[(d1 + j, x)] = zvec([(3, mbar2[j], gb1[x], one)])
    for x in range(cm2.g.dim):
        for i in range(d1):
            if literal:
                left[(n1 + x, i)] = zvec([(0, mbar1[i], gb2[x], one)])
                right[(i, n1 + x)] = zvec([(1, gb2[x], mbar1[i], one)])
            else:
                left[(n1 + x, i)] = zvec([(1, gb2[x], mbar1[i], one)])
                right[(i, n1 + x)] = zvec([(0, mbar1[i], gb2[x], one)])

    cols = [cm1.delta.apply(col(i)) for i in range(d1)]
    cols += [{n1 + k: x for k, x in cm2.delta.apply(col(i)).items()} for i in range(d2)]
    cols += [{}] * db
    delta = Matrix.from_columns(f, cols, g.dim)
    cm = CrossedModule(m, g, delta, left, right)
    return StemCoverCandidate(cm, direct_sum_pair(c1.target, c2.target))


def cover_of_direct_sum(c1: StemCoverCandidate, c2: StemCoverCandidate) -> StemCoverCandidate:
    """Cover of ``g1 ⊕ g2`` from covers of the full pairs; ``B ≅ m1^ab * m2^ab``."""
    for c in (c1, c2):
        if c.target.n != c.target.g.full() or image(c.cm.delta) != c.target.g.full():
            raise NotAFullCover("inputs must be covers of full pairs (g, g)")
    return direct_sum_cover(c1, c2)


def transport_target(c: StemCoverCandidate, iso: Matrix, target: Pair) -> StemCoverCandidate:
    """Re-express the base algebra through a linear isomorphism ``iso: g_old -> target.g``."""
    cm = c.cm
    inv = inverse(iso)
    f = cm.field
    left: ActionTable = {}
    right: ActionTable = {}
    for x in range(target.g.dim):
        old = inv.apply({x: f.one})
        for i in range(cm.m.dim):
            left[(x, i)] = cm.act_left(old, {i: f.one})
            right[(i, x)] = cm.act_right({i: f.one}, old)
    return StemCoverCandidate(CrossedModule(cm.m, target.g, iso @ cm.delta, left, right), target)


def abelian_pair_cover(pair: Pair) -> StemCoverCandidate:
    """``n ∔ (n∧n) ∔ (n*(g/n)) -> g`` for an abelian ``g``."""
    g = pair.g
    if not g.is_abelian():
        raise NotAbelian("abelian_pair_cover needs an abelian algebra")
    f = g.field
    dn = pair.n.dim
    comp = complement(pair.n)
    c = direct_sum_cover(full_pair_cover(abelian(dn, f)), zero_cover(abelian(g.dim - dn, f)))
    iso = Matrix.from_columns(f, pair.n.vectors() + comp.vectors(), g.dim)
    return transport_target(c, iso, pair)


__all__ = [
    "CrossedModule", "StemCoverCandidate", "StemCoverReport", "validate_crossed_module",
    "relative_center", "action_commutator", "validate_stem_cover", "inclusion_crossed_module",
    "identity_crossed_module", "identity_cover", "full_pair_cover", "zero_cover",
    "direct_sum_cover", "cover_of_direct_sum", "transport_target", "abelian_pair_cover",
    "NotAbelian", "NotAFullCover",
]
