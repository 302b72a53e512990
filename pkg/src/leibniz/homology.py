"""Second relative Leibniz homology ``HL_2(g, n)`` by independent routes.

* ``exterior``: kernel of the commutator map ``g ∧ n -> g``.
* ``cone``: ``H_3`` of the mapping cone of ``CL_*(g) -> CL_*(g/n)``.
* ``tau``: cokernel of ``τ: n⊗n -> (ḡ⊗n) ⊕ (n⊗ḡ)`` (central ``n`` only).
* ``star``: ``(g^ab * n)`` modulo the square relations (central ``n`` only).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

from .algebra import (LeibnizAlgebra, NotNilpotent, Pair, center, center_of_pair,
                      commutator_with, derived, direct_sum_pair, image_subspace, is_ideal,
                      is_nilpotent, is_subalgebra, minimal_generator_count, quotient_algebra,
                      quotient_pair)
from .exactlin import (Matrix, SparseVec, Subspace, block_matrix, image, kernel,
                       intersect, quotient_basis, rank, sp_axpy, sum_spaces)
from .tensor import commutator_map, exterior_pair, pair_cross_factor

DEFAULT_DIM_CAP = 8


class DimensionCapExceeded(ValueError):
    pass


class IdealNotCentral(ValueError):
    pass


class NotAComplement(ValueError):
    pass


class NotCentralInPair(ValueError):
    pass


def dim_cap() -> int:
    return int(os.environ.get("LEIBNIZ_DIM_CAP", DEFAULT_DIM_CAP))


@dataclass(frozen=True, eq=False)
class HomologyResult:
    dim: int
    representatives: Subspace
    method: str


# ---------------------------------------------------------------------------
# Loday complex


def _tuple_index(t, d: int) -> int:
    k = 0
    for i in t:
        k = k * d + i
    return k


def boundary(alg: LeibnizAlgebra, n: int) -> Matrix:
    """``∂_n: g^{⊗n} -> g^{⊗(n-1)}``, lexicographic tensor coordinates.

    ``∂(x1⊗...⊗xn) = Σ_{i<j} (-1)^j x1⊗...⊗[xi,xj]⊗...x̂j...⊗xn`` (1-based j).
    ``∂_1 = 0`` onto the one-dimensional ``CL_0``.
    """
    d = alg.dim
    f = alg.field
    src = d ** n
    tgt = d ** (n - 1) if n >= 1 else 0
    if n <= 1:
        return Matrix.zeros(f, max(tgt, 1) if n == 1 else 0, src)
    cols = []
    for t in itertools.product(range(d), repeat=n):
        col: SparseVec = {}
        for i in range(n):
            for j in range(i + 1, n):
                w = alg.sc.get((t[i], t[j]))
                if not w:
                    continue
                sign = f.one if (j + 1) % 2 == 0 else -f.one
                rest = t[:j] + t[j + 1:]
                for k, c in w.items():
                    nt = rest[:i] + (k,) + rest[i + 1:]
                    idx = _tuple_index(nt, d)
                    v = col.get(idx, f.zero) + sign * c
                    if v:
                        col[idx] = v
                    else:
                        col.pop(idx, None)
        cols.append(col)
    return Matrix.from_columns(f, cols, tgt)


def tensor_power_map(p: Matrix, n: int) -> Matrix:
    """``p^{⊗n}`` for a linear map ``p``; ``n = 0`` gives the 1x1 identity."""
    f = p.field
    if n == 0:
        return Matrix.identity(f, 1)
    pc = p.columns()
    dq = p.nrows
    cols = []
    for t in itertools.product(range(p.ncols), repeat=n):
        col: SparseVec = {(): f.one}
        for i in t:
            nxt = {}
            for key, a in col.items():
                for r, b in pc[i].items():
                    nxt[key + (r,)] = nxt.get(key + (r,), f.zero) + a * b
            col = {k: v for k, v in nxt.items() if v}
            if not col:
                break
        cols.append({_tuple_index(k, dq): v for k, v in col.items()})
    return Matrix.from_columns(f, cols, dq ** n)


@dataclass(frozen=True, eq=False)
class ChainComplexSlice:
    """``CL_0 .. CL_top`` with boundaries ``∂_1 .. ∂_top``."""

    spaces: List[int]
    boundaries: Dict[int, Matrix]

    def check(self) -> bool:
        return all((self.boundaries[k] @ self.boundaries[k + 1]).is_zero()
                   for k in range(1, len(self.spaces) - 1))


def cl_dim(d: int, n: int) -> int:
    return 1 if n == 0 else d ** n


def chain_complex(alg: LeibnizAlgebra, top: int = 4) -> ChainComplexSlice:
    spaces = [cl_dim(alg.dim, n) for n in range(top + 1)]
    bds = {n: boundary(alg, n) for n in range(1, top + 1)}
    # ∂_1 lands in the one-dimensional CL_0
    bds[1] = Matrix.zeros(alg.field, 1, spaces[1])
    cx = ChainComplexSlice(spaces, bds)
    if not cx.check():
        raise AssertionError("∂∘∂ != 0: boundary convention broken")
    return cx


def absolute_hl(alg: LeibnizAlgebra, n: int) -> int:
    """``dim HL_n(g)`` from the Loday complex (n >= 1)."""
    cx = chain_complex(alg, n + 1)
    d_n = cx.boundaries[n]
    d_up = cx.boundaries[n + 1]
    return cx.spaces[n] - rank(d_n) - rank(d_up)


@dataclass(frozen=True, eq=False)
class MappingCone:
    """``M_n = CL_{n-1}(g) ⊕ CL_n(g/n)``, ``δ_n(a,b) = (-∂a, ∂̄b + π a)``."""

    spaces: List[int]
    boundaries: Dict[int, Matrix]  # δ_1 .. δ_top

    def check(self) -> bool:
        return all((self.boundaries[k] @ self.boundaries[k + 1]).is_zero()
                   for k in range(1, len(self.spaces) - 1))

    def homology(self, n: int) -> int:
        down = self.boundaries[n]
        up = self.boundaries[n + 1]
        return self.spaces[n] - rank(down) - rank(up)


def mapping_cone(pair: Pair, top: int = 4) -> MappingCone:
    g = pair.g
    f = g.field
    q, proj = quotient_algebra(g, pair.n)
    cg = chain_complex(g, top - 1)
    cq = chain_complex(q, top)
    pis = {k: tensor_power_map(proj, k) for k in range(top)}
    spaces = [cq.spaces[0]]  # M_0 = CL_0(g/n)
    for n in range(1, top + 1):
        spaces.append(cg.spaces[n - 1] + cq.spaces[n])
    bds = {}
    for n in range(1, top + 1):
        # source (a ∈ CL_{n-1}(g), b ∈ CL_n(q)); target (CL_{n-2}(g), CL_{n-1}(q))
        qb = cq.boundaries[n]
        pi = pis[n - 1]
        if n == 1:
            bds[n] = block_matrix(f, [[pi, qb]], [cq.spaces[0]], [cg.spaces[0], cq.spaces[1]])
            continue
        gb = -cg.boundaries[n - 1]
        bds[n] = block_matrix(f, [[gb, None], [pi, qb]],
                              [cg.spaces[n - 2], cq.spaces[n - 1]],
                              [cg.spaces[n - 1], cq.spaces[n]])
    cone = MappingCone(spaces, bds)
    if not cone.check():
        raise AssertionError("δ∘δ != 0: cone convention broken")
    return cone


# ---------------------------------------------------------------------------
# HL_1 and HL_2


def hl1(pair: Pair) -> HomologyResult:
    """``HL_1(g,n) = n/[g,n]``."""
    gn = commutator_with(pair)
    _, sec = quotient_basis(gn, pair.n)
    reps = Subspace.span(pair.g.field, pair.g.dim, sec.columns())
    return HomologyResult(pair.n.dim - gn.dim, reps, "quotient")


def hl2_exterior(pair: Pair) -> HomologyResult:
    ext = exterior_pair(pair)
    k = kernel(commutator_map(ext))
    return HomologyResult(k.dim, k, "exterior")


def hl2_cone(pair: Pair, cap: Optional[int] = None) -> HomologyResult:
    cap = dim_cap() if cap is None else cap
    if pair.g.dim > cap:
        raise DimensionCapExceeded(f"dim g = {pair.g.dim} exceeds cone cap {cap}")
    cone = mapping_cone(pair, 4)
    cycles = kernel(cone.boundaries[3])
    bounds = image(cone.boundaries[4])
    _, sec = quotient_basis(bounds, cycles)
    reps = Subspace.span(pair.g.field, cone.spaces[3], sec.columns())
    return HomologyResult(cycles.dim - bounds.dim, reps, "cone")


def _require_central(pair: Pair) -> None:
    if not pair.n <= center(pair.g):
        raise IdealNotCentral("method needs n ⊆ Z(g)")


def tau_matrix(pair: Pair) -> Matrix:
    """``τ(n1⊗n2) = (n̄1⊗n2, -n1⊗n̄2)`` in coordinates of n's basis and ḡ."""
    g = pair.g
    f = g.field
    gp, _ = quotient_basis(derived(g), g.full())
    dgb = gp.nrows
    k = pair.n.dim
    nbar = [gp.apply(v) for v in pair.n.vectors()]
    cols = []
    for a in range(k):
        for b in range(k):
            col: SparseVec = {}
            for i, c in nbar[a].items():
                col[i * k + b] = c
            off = dgb * k
            for i, c in nbar[b].items():
                col[off + a * dgb + i] = -c
            cols.append(col)
    return Matrix.from_columns(f, cols, 2 * dgb * k)


def hl2_central_tau(pair: Pair) -> HomologyResult:
    _require_central(pair)
    t = tau_matrix(pair)
    im = image(t)
    _, sec = quotient_basis(im, Subspace.full(pair.g.field, t.nrows))
    reps = Subspace.span(pair.g.field, t.nrows, sec.columns())
    return HomologyResult(t.nrows - im.dim, reps, "tau")


def hl2_central_star(pair: Pair) -> HomologyResult:
    """Trivial-action tensor ``g^ab * n`` modulo ``n̄1*n2 - n1*n̄2``."""
    _require_central(pair)
    g = pair.g
    f = g.field
    g2 = derived(g)
    gp, _ = quotient_basis(g2, g.full())
    dgb = gp.nrows
    nvec = pair.n.vectors()
    k = len(nvec)
    size = 2 * dgb * k  # (ḡ ⊗ n) ⊕ (n ⊗ ḡ)

    def sym_first(u_bar: SparseVec, j: int) -> SparseVec:
        return {i * k + j: c for i, c in u_bar.items()}

    def sym_second(j: int, u_bar: SparseVec) -> SparseVec:
        return {dgb * k + j * dgb + i: c for i, c in u_bar.items()}

    if pair.n <= g2:
        rel = Subspace.zero(f, size)
    else:
        gens = []
        for a in range(k):
            for b in range(k):
                v = sym_first(gp.apply(nvec[a]), b)
                sp_axpy(v, -f.one, sym_second(a, gp.apply(nvec[b])))
                gens.append(v)
        rel = Subspace.span(f, size, gens)
    _, sec = quotient_basis(rel, Subspace.full(f, size))
    reps = Subspace.span(f, size, sec.columns())
    return HomologyResult(size - rel.dim, reps, "star")


METHODS = {
    "exterior": hl2_exterior,
    "cone": hl2_cone,
    "tau": hl2_central_tau,
    "star": hl2_central_star,
}


def hl2(pair: Pair, method: str = "exterior") -> HomologyResult:
    return METHODS[method](pair)


def hl2_all(pair: Pair, cap: Optional[int] = None) -> Dict[str, object]:
    """Every applicable method; skipped ones are reported with a reason."""
    out: Dict[str, object] = {"exterior": hl2_exterior(pair).dim}
    try:
        out["cone"] = hl2_cone(pair, cap).dim
    except DimensionCapExceeded:
        out["cone"] = "skipped: dimension cap"
    if pair.n <= center(pair.g):
        out["tau"] = hl2_central_tau(pair).dim
        out["star"] = hl2_central_star(pair).dim
    return out


def methods_agree(results: Dict[str, object]) -> bool:
    vals = {v for v in results.values() if isinstance(v, int)}
    return len(vals) == 1


def extra_special_t(alg: LeibnizAlgebra) -> int:
    """``t = dim HL_2(e) - ((dim e - 1)^2 - 1)``."""
    return hl2_exterior(Pair.full(alg)).dim - ((alg.dim - 1) ** 2 - 1)


# ---------------------------------------------------------------------------
# Künneth-type decomposition


@dataclass
class KunnethReport:
    direct: int
    first: int
    second: int
    cross: int

    @property
    def rhs(self) -> int:
        return self.first + self.second + self.cross

    @property
    def holds(self) -> bool:
        return self.direct == self.rhs


def kunneth_check(p1: Pair, p2: Pair) -> KunnethReport:
    direct = hl2_exterior(direct_sum_pair(p1, p2)).dim
    return KunnethReport(direct, hl2_exterior(p1).dim, hl2_exterior(p2).dim,
                         pair_cross_factor(p1, p2).dim)


# ---------------------------------------------------------------------------
# bounds and inequalities


@dataclass
class BoundReport:
    lhs: int
    rhs: int
    terms: Dict[str, int] = dc_field(default_factory=dict)
    equality_expected: Optional[bool] = None

    @property
    def holds(self) -> bool:
        ok = self.lhs <= self.rhs
        if self.equality_expected is not None:
            ok = ok and ((self.lhs == self.rhs) == self.equality_expected)
        return ok

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs


def _require_nilpotent(alg: LeibnizAlgebra) -> None:
    if not is_nilpotent(alg):
        raise NotNilpotent("bound is stated for nilpotent algebras")


def bound_theorem36(pair: Pair) -> BoundReport:
    """``dim HL2(g,n) <= dim HL2(g/k, n/k) + 2 dim k · d(g/Z(g,n))``, ``k = g^2 ∩ n``."""
    g = pair.g
    _require_nilpotent(g)
    k = intersect(derived(g), pair.n)
    lhs = hl2_exterior(pair).dim
    first = hl2_exterior(quotient_pair(pair, k)).dim
    gz, _ = quotient_algebra(g, center_of_pair(pair))
    d = minimal_generator_count(gz)
    rhs = first + 2 * k.dim * d
    return BoundReport(lhs, rhs, {"quotient_hl2": first, "dim_g2_cap_n": k.dim, "d_g_mod_z": d})


def bound_cor39(alg: LeibnizAlgebra) -> BoundReport:
    """``dim HL2(g) <= (dim g - dim g^2)^2 + 2 dim g^2 · d(g/Z(g))``, equality iff abelian."""
    _require_nilpotent(alg)
    lhs = hl2_exterior(Pair.full(alg)).dim
    g2 = derived(alg).dim
    gz, _ = quotient_algebra(alg, center(alg))
    d = minimal_generator_count(gz)
    rhs = (alg.dim - g2) ** 2 + 2 * g2 * d
    return BoundReport(lhs, rhs, {"dim_g2": g2, "d_g_mod_z": d},
                       equality_expected=alg.is_abelian())


@dataclass
class SplitReport:
    hl2_g: int
    hl2_pair: int
    hl2_quotient: int

    @property
    def holds(self) -> bool:
        return self.hl2_g == self.hl2_pair + self.hl2_quotient


def complement_split_check(pair: Pair, complement: Subspace) -> SplitReport:
    """``HL2(g) = HL2(g,n) ⊕ HL2(g/n)`` when n has a subalgebra complement."""
    g = pair.g
    if (sum_spaces(pair.n, complement).dim != g.dim or intersect(pair.n, complement).dim != 0
            or not is_subalgebra(g, complement)):
        raise NotAComplement("complement must be a subalgebra with g = n ∔ complement")
    q, _ = quotient_algebra(g, pair.n)
    return SplitReport(hl2_exterior(Pair.full(g)).dim, hl2_exterior(pair).dim,
                       hl2_exterior(Pair.full(q)).dim)


@dataclass
class SnakeReport:
    quotient_hl2: int
    pair_hl2: int
    commutator_cap_k: int
    central: bool

    @property
    def holds(self) -> bool:
        ok = self.quotient_hl2 <= self.pair_hl2 + self.commutator_cap_k
        if self.central:
            ok = ok and self.quotient_hl2 <= self.pair_hl2
        return ok


def snake_inequality_check(g: LeibnizAlgebra, n: Subspace, k: Subspace) -> SnakeReport:
    pair = Pair(g, n)
    if not k <= center_of_pair(pair):
        raise NotCentralInPair("k must lie in Z(g) ∩ n")
    if not is_ideal(g, k):
        raise NotCentralInPair("k must be an ideal")
    q = quotient_pair(pair, k)
    gn = commutator_with(pair)
    return SnakeReport(hl2_exterior(q).dim, hl2_exterior(pair).dim, intersect(gn, k).dim,
                       pair.n <= center(g))


def upper_bound(pair: Pair) -> int:
    """``n(n+2m)`` with ``n = dim n``, ``m = dim g/n``."""
    n, m = pair.dim_n, pair.dim_quotient
    return n * (n + 2 * m)


__all__ = [
    "HomologyResult", "ChainComplexSlice", "MappingCone", "boundary", "chain_complex",
    "mapping_cone", "tensor_power_map", "hl1", "hl2", "hl2_all", "hl2_exterior", "hl2_cone",
    "hl2_central_tau", "hl2_central_star", "tau_matrix", "kunneth_check", "bound_theorem36",
    "bound_cor39", "complement_split_check", "snake_inequality_check", "extra_special_t",
    "upper_bound", "DimensionCapExceeded", "IdealNotCentral", "NotAComplement",
    "NotCentralInPair", "methods_agree", "absolute_hl", "image_subspace",
]
