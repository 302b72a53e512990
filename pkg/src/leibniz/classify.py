"""Defect ``k = n(n+2m) - dim HL_2(g,n)`` and the small-defect structure predicates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Sequence

from .algebra import (LeibnizAlgebra, NotNilpotent, Pair, center, derived, is_extra_special,
                      is_ideal, is_nilpotent, subalgebra, with_abelian, J1, J2, H1)
from .exactlin import Field, Subspace, complement, intersect, quotient_basis, sum_spaces
from .homology import hl2_exterior, upper_bound

CASES = ("abelian", "extra_special_commutator", "one_dim_central_summand",
         "case_3a", "case_3b", "unclassified")
DEFECT_OF_CASE = {"abelian": 0, "extra_special_commutator": 1, "one_dim_central_summand": 2,
                  "case_3a": 3, "case_3b": 3}


class ShapeMismatch(ValueError):
    pass


class ZeroIdeal(ValueError):
    pass


def defect(pair: Pair) -> int:
    return upper_bound(pair) - hl2_exterior(pair).dim


def _complement_within(small: Subspace, big: Subspace) -> Subspace:
    _, sec = quotient_basis(small, big)
    return Subspace.span(big.field, big.ambient_dim, sec.columns())


@dataclass
class Structure:
    """Linear-algebra facts the predicates are evaluated on."""

    dim_g2: int
    dim_n: int
    n_central: bool
    n_cap_g2: int
    g2_in_n: bool
    abelian: bool


def _structure(pair: Pair) -> Structure:
    g2 = derived(pair.g)
    z = center(pair.g)
    return Structure(g2.dim, pair.n.dim, pair.n <= z, intersect(pair.n, g2).dim, g2 <= pair.n,
                     pair.g.is_abelian())


def predicates(pair: Pair) -> Dict[str, bool]:
    s = _structure(pair)
    g2 = derived(pair.g)
    return {
        "abelian": s.abelian,
        "extra_special_commutator": s.dim_g2 == 1 and pair.n == g2,
        "one_dim_central_summand": (s.dim_n == 1 and s.n_central and s.n_cap_g2 == 0
                                    and s.dim_g2 == 1),
        "case_3a": s.dim_g2 == 2 and s.dim_n == 1 and s.n_central and s.n_cap_g2 == 1,
        "case_3b": s.dim_g2 == 1 and s.dim_n == 2 and s.g2_in_n and s.n_central,
    }


def witness(pair: Pair, case: str) -> Dict[str, object]:
    """Explicit decomposition backing a predicate, with its own checks."""
    g = pair.g
    g2 = derived(g)
    if case == "extra_special_commutator":
        z = center(g)
        e = sum_spaces(g2, complement(z))
        a = _complement_within(g2, z)
        ok = (is_ideal(g, e) and is_ideal(g, a) and e.dim + a.dim == g.dim
              and intersect(e, a).dim == 0 and is_extra_special(subalgebra(g, e))
              and derived(g) == pair.n)
        return {"e": e, "a": a, "q": a.dim, "verified": ok}
    if case == "one_dim_central_summand":
        rest = complement(sum_spaces(g2, pair.n))
        m = sum_spaces(g2, rest)
        sub = subalgebra(g, m)
        ok = (is_ideal(g, m) and intersect(m, pair.n).dim == 0 and m.dim + pair.n.dim == g.dim
              and derived(sub).dim == 1 and is_nilpotent(sub))
        return {"m": m, "verified": ok}
    return {}


@dataclass
class ClassificationVerdict:
    n: int
    m: int
    hl2_dim: int
    defect: int
    matched_case: str
    predicates: Dict[str, bool]
    checked: Sequence[int]
    evidence: Dict[str, object] = dc_field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        """Both directions for every defect value under test."""
        for k in self.checked:
            cases = [c for c, d in DEFECT_OF_CASE.items() if d == k]
            if any(self.predicates[c] for c in cases) != (self.defect == k):
                return False
        return True

    def record(self, name: str = "") -> Dict[str, object]:
        ev = {k: v for k, v in self.evidence.items() if isinstance(v, (int, bool, str))}
        return {"pair": name, "n": self.n, "m": self.m, "hl2": self.hl2_dim,
                "defect": self.defect, "case": self.matched_case, "evidence": ev}


def _verdict(pair: Pair, checked: Sequence[int]) -> ClassificationVerdict:
    if not is_nilpotent(pair.g):
        raise NotNilpotent("classification is stated for nilpotent algebras")
    if pair.n.dim == 0:
        raise ZeroIdeal("the zero ideal has defect 0 for every g")
    preds = predicates(pair)
    hl = hl2_exterior(pair).dim
    k = upper_bound(pair) - hl
    matched = next((c for c in CASES[:-1] if preds[c]), "unclassified")
    s = _structure(pair)
    evidence: Dict[str, object] = {"dim_g2": s.dim_g2, "dim_n_cap_center": intersect(
        pair.n, center(pair.g)).dim, "n_central": s.n_central}
    if matched in ("extra_special_commutator", "one_dim_central_summand"):
        w = witness(pair, matched)
        evidence["summand_found"] = bool(w.get("verified"))
        evidence.update({k2: v for k2, v in w.items() if k2 != "verified"})
    return ClassificationVerdict(pair.n.dim, pair.dim_quotient, hl, k, matched, preds,
                                 tuple(checked), evidence)


def theorem41_verdict(pair: Pair) -> ClassificationVerdict:
    return _verdict(pair, (0, 1, 2))


def theorem42_verdict(pair: Pair) -> ClassificationVerdict:
    return _verdict(pair, (3,))


# ---------------------------------------------------------------------------
# e ⊕ a(q) tables

_BASES = {"J1": J1, "J2": J2, "H1": H1}
# rows: n ⊆ Z with n ∩ e^2 = 0 / e^2 ⊆ n ⊆ Z / n not central
_ROWS = {
    "J1": (lambda q: 4 * q, lambda q: 4 * q + 1, lambda q: 2 * q + 1),
    "J2": (lambda q: 4 * (q + 1), lambda q: 4 * q + 5, lambda q: 2 * q + 3),
    "H1": (lambda q: 4 * (q + 1), lambda q: 4 * q + 5, lambda q: 2 * (q + 2)),
}
ROW_NAMES = ("abelian_part", "contains_square", "noncentral")


def family_algebra(e: str, q: int, field: Optional[Field] = None) -> LeibnizAlgebra:
    if e not in _BASES:
        raise ShapeMismatch(f"unknown summand {e!r}; expected one of {sorted(_BASES)}")
    base = _BASES[e]() if field is None else _BASES[e](field)
    return with_abelian(base, q)


def prop43_row(g: LeibnizAlgebra, n: Subspace) -> str:
    """Row of a 2-dim ideal of ``e ⊕ a(q)``; rows are invariant under central shears."""
    z = center(g)
    g2 = derived(g)
    if not n <= z:
        return "noncentral"
    if g2 <= n:
        return "contains_square"
    return "abelian_part"


@dataclass
class TableRow:
    e: str
    q: int
    row: str
    expected: int
    actual: int

    @property
    def matches(self) -> bool:
        return self.expected == self.actual


def prop43_table(e: str, q: int, n: Subspace) -> TableRow:
    g = family_algebra(e, q, n.field)
    if n.dim != 2 or n.ambient_dim != g.dim:
        raise ShapeMismatch("expected a 2-dimensional ideal of e ⊕ a(q)")
    row = prop43_row(g, n)
    expected = _ROWS[e][ROW_NAMES.index(row)](q)
    return TableRow(e, q, row, expected, hl2_exterior(Pair(g, n)).dim)


def central_formula(pair: Pair) -> int:
    """``2 dim g dim n - (dim n + 1)^2 + 2`` for ``e^2 ⊆ n ⊆ Z(g)``."""
    if not (derived(pair.g) <= pair.n and pair.n <= center(pair.g)):
        raise ShapeMismatch("formula needs e^2 ⊆ n ⊆ Z(g)")
    return 2 * pair.g.dim * pair.n.dim - (pair.n.dim + 1) ** 2 + 2


# ---------------------------------------------------------------------------
# ideal enumeration for sweeps


def rref_subspaces(field: Field, ambient: int, k: int,
                   coeffs: Sequence[int] = (0, 1, -1)) -> Iterator[Subspace]:
    """Every k-dim subspace whose rref has free entries drawn from ``coeffs``."""
    one = field.one
    for piv in itertools.combinations(range(ambient), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, ambient) if c not in piv]
        for vals in itertools.product(coeffs, repeat=len(free)):
            rows = [{p: one} for p in piv]
            for (r, c), v in zip(free, vals):
                if v:
                    rows[r][c] = field(v)
            yield Subspace.span(field, ambient, rows)


def ideals_of_dim(g: LeibnizAlgebra, k: int, coeffs: Sequence[int] = (0, 1, -1)) -> List[Subspace]:
    return [s for s in rref_subspaces(g.field, g.dim, k, coeffs) if is_ideal(g, s)]


__all__ = [
    "defect", "predicates", "witness", "ClassificationVerdict", "theorem41_verdict",
    "theorem42_verdict", "prop43_table", "prop43_row", "TableRow", "family_algebra",
    "central_formula", "rref_subspaces", "ideals_of_dim", "ShapeMismatch", "ZeroIdeal",
    "CASES", "ROW_NAMES",
]
