"""Exact linear algebra over the rationals and prime fields.

Field elements are ``fractions.Fraction`` for Q and :class:`Residue` for
GF(p).  Matrices are stored as sparse rows (``{col: value}``, zeros
omitted).  Subspaces are identified by their canonical reduced row-echelon
basis, so equality of subspaces is equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

SparseVec = Dict[int, object]


class FieldMismatch(ValueError):
    """Two operands live over different fields."""


class SubspaceNotContained(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Residue:
    """A residue class modulo a prime ``p``, always stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Residue):
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            raise FieldMismatch(f"GF({self.p}) vs Q")
        return None

    def __add__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Residue(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Residue(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Residue(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Residue(self.v * w, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Residue(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return self * Residue(w, self.p).inverse()

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Residue(w, self.p) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, Residue):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Residue({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"GF({self.p}): modulus is not prime")

    @property
    def tag(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p == 0 else Residue(0, self.p)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p == 0 else Residue(1, self.p)

    def __call__(self, x) -> Scalar:
        """Coerce ints, Fractions, ``"a/b"`` strings or same-field residues."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            if isinstance(x, Residue):
                raise FieldMismatch(f"Q vs GF({x.p})")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({x.p})")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} vanishes in GF({self.p})")
        return Residue(x.numerator, self.p) / x.denominator

    def owns(self, x) -> bool:
        if self.p == 0:
            return isinstance(x, Fraction)
        return isinstance(x, Residue) and x.p == self.p

    def format(self, x: Scalar) -> str:
        return str(x)

    def __str__(self):
        return self.tag


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def field_of(x: Scalar) -> Field:
    if isinstance(x, Residue):
        return Field(x.p)
    if isinstance(x, (Fraction, int)):
        return QQ
    raise TypeError(f"not a field element: {x!r}")


# ---------------------------------------------------------------------------
# sparse vector helpers


def sp_axpy(y: SparseVec, a, x: SparseVec) -> None:
    """In place ``y += a * x``."""
    for k, v in x.items():
        w = y.get(k)
        w = a * v if w is None else w + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def sp_scale(a, x: SparseVec) -> SparseVec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def sp_from_dense(v: Sequence) -> SparseVec:
    return {i: x for i, x in enumerate(v) if x}


def sp_to_dense(v: SparseVec, n: int, field: Field) -> List[Scalar]:
    out = [field.zero] * n
    for k, x in v.items():
        out[k] = x
    return out


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class Matrix:
    """``nrows x ncols`` matrix acting on column vectors."""

    field: Field
    nrows: int
    ncols: int
    rows: Tuple[SparseVec, ...]

    @classmethod
    def from_dense(cls, field: Field, entries: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        entries = [list(r) for r in entries]
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
            row = {}
            for j, x in enumerate(r):
                x = field(x) if not field.owns(x) else x
                if x:
                    row[j] = x
            rows.append(row)
        return cls(field, len(rows), ncols, tuple(rows))

    @classmethod
    def from_scalars(cls, entries: Sequence[Sequence[Scalar]]) -> "Matrix":
        """Build from already-typed scalars; all must share one field."""
        fields = {field_of(x).tag for r in entries for x in r}
        if len(fields) > 1:
            raise FieldMismatch(f"mixed field tags {sorted(fields)}")
        field = field_of(entries[0][0]) if fields else QQ
        return cls.from_dense(field, entries)

    @classmethod
    def from_sparse_rows(cls, field: Field, rows: Iterable[SparseVec], ncols: int) -> "Matrix":
        rows = tuple({k: v for k, v in r.items() if v} for r in rows)
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[SparseVec], nrows: int) -> "Matrix":
        rows: List[SparseVec] = [{} for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, x in c.items():
                if x:
                    rows[i][j] = x
        return cls(field, nrows, len(cols), tuple(rows))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, tuple({i: field.one} for i in range(n)))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def dense(self) -> List[List[Scalar]]:
        return [sp_to_dense(r, self.ncols, self.field) for r in self.rows]

    def columns(self) -> List[SparseVec]:
        cols: List[SparseVec] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(self.columns()))

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def apply(self, v: SparseVec) -> SparseVec:
        """Sparse matrix-vector product."""
        out = {}
        for i, r in enumerate(self.rows):
            if len(r) < len(v):
                s = sum((x * v[j] for j, x in r.items() if j in v), self.field.zero)
            else:
                s = sum((r[j] * x for j, x in v.items() if j in r), self.field.zero)
            if s:
                out[i] = s
        return out

    def apply_dense(self, v: Sequence[Scalar]) -> List[Scalar]:
        return sp_to_dense(self.apply(sp_from_dense(v)), self.nrows, self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        rows = []
        for r in self.rows:
            acc: SparseVec = {}
            for k, a in r.items():
                sp_axpy(acc, a, other.rows[k])
            rows.append(acc)
        return Matrix(self.field, self.nrows, other.ncols, tuple(rows))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, tuple(sp_scale(-self.field.one, r) for r in self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        rows = []
        for a, b in zip(self.rows, other.rows):
            c = dict(a)
            sp_axpy(c, self.field.one, b)
            rows.append(c)
        return Matrix(self.field, self.nrows, self.ncols, tuple(rows))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.nrows, self.ncols, self.rows) == (other.field, other.nrows, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols,
                     tuple(tuple(sorted(r.items(), key=lambda t: t[0])) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.field.tag}, {self.nrows}x{self.ncols}, {self.dense()})"


def block_matrix(field: Field, blocks: Sequence[Sequence[Matrix | None]],
                 row_dims: Sequence[int], col_dims: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    col_off = [0]
    for c in col_dims:
        col_off.append(col_off[-1] + c)
    rows: List[SparseVec] = []
    for bi, brow in enumerate(blocks):
        local = [dict() for _ in range(row_dims[bi])]
        for bj, blk in enumerate(brow):
            if blk is None:
                continue
            if blk.shape != (row_dims[bi], col_dims[bj]):
                raise DimensionMismatch(f"block ({bi},{bj}) has shape {blk.shape}")
            off = col_off[bj]
            for i, r in enumerate(blk.rows):
                for j, x in r.items():
                    local[i][j + off] = x
        rows.extend(local)
    return Matrix(field, sum(row_dims), col_off[-1], tuple(rows))


# ---------------------------------------------------------------------------
# elimination


class _Echelon:
    """Incrementally maintained fully-reduced echelon basis."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: Dict[int, SparseVec] = {}

    def reduce(self, v: SparseVec) -> SparseVec:
        r = dict(v)
        for c in [c for c in r if c in self.pivots]:
            a = r.get(c)
            if a:
                sp_axpy(r, -a, self.pivots[c])
        return r

    def add(self, v: SparseVec) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        c = min(r)
        inv = self.field.one / r[c]
        r = {k: inv * x for k, x in r.items()}
        for row in self.pivots.values():
            a = row.get(c)
            if a:
                sp_axpy(row, -a, r)
        self.pivots[c] = r
        return True

    def rows(self) -> List[SparseVec]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def _echelon_of(field: Field, vectors: Iterable[SparseVec], limit: int | None = None) -> _Echelon:
    e = _Echelon(field)
    for v in vectors:
        e.add(v)
        if limit is not None and len(e.pivots) >= limit:
            break
    return e


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form with zero rows dropped."""
    for r in m.rows:
        for x in r.values():
            if not m.field.owns(x):
                raise FieldMismatch(f"entry {x!r} is not in {m.field}")
    e = _echelon_of(m.field, m.rows, limit=min(m.nrows, m.ncols))
    return Matrix(m.field, len(e.pivots), m.ncols, tuple(e.rows()))


def rank(m: Matrix) -> int:
    # eliminating the shorter side is cheaper
    if m.nrows <= m.ncols:
        vecs = m.rows
    else:
        vecs = m.columns()
    return len(_echelon_of(m.field, vecs, limit=min(m.nrows, m.ncols)).pivots)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``field^ambient_dim`` with canonical rref basis."""

    field: Field
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable) -> "Subspace":
        vecs = [v if isinstance(v, dict) else sp_from_dense([field(x) if not field.owns(x) else x for x in v])
                for v in vectors]
        for v in vecs:
            if v and max(v) >= ambient_dim:
                raise DimensionMismatch("vector longer than ambient space")
        e = _echelon_of(field, vecs, limit=ambient_dim)
        return cls(field, ambient_dim, Matrix(field, len(e.pivots), ambient_dim, tuple(e.rows())))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix(field, 0, n, ()))

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def pivots(self) -> List[int]:
        return [min(r) for r in self.basis.rows]

    def vectors(self) -> List[SparseVec]:
        return list(self.basis.rows)

    def dense_vectors(self) -> List[List[Scalar]]:
        return self.basis.dense()

    def _echelon(self) -> _Echelon:
        e = _Echelon(self.field)
        e.pivots = {min(r): r for r in self.basis.rows}
        return e

    def reduce(self, v: SparseVec) -> SparseVec:
        """Canonical representative of ``v`` modulo this subspace."""
        return self._echelon().reduce(v)

    def contains(self, v) -> bool:
        if not isinstance(v, dict):
            v = sp_from_dense(v)
        return not self.reduce(v)

    def coordinates(self, v: SparseVec) -> SparseVec:
        """Coordinates of ``v`` (assumed inside) w.r.t. the rref basis."""
        out = {}
        for i, r in enumerate(self.basis.rows):
            x = v.get(min(r))
            if x:
                out[i] = x
        return out

    def from_coordinates(self, c: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in c.items():
            sp_axpy(out, a, self.basis.rows[i])
        return out

    def __le__(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        e = other._echelon()
        return all(not e.reduce(r) for r in self.basis.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace({self.field.tag}^{self.ambient_dim}, dim={self.dim}, basis={self.basis.dense()})"


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient {a.ambient_dim} vs {b.ambient_dim}")


def kernel(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    r = rref(m)
    pivots = {min(row): row for row in r.rows}
    f = m.field
    vecs = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        v = {free: f.one}
        for c, row in pivots.items():
            a = row.get(free)
            if a:
                v[c] = -a
        vecs.append(v)
    return Subspace.span(f, m.ncols, vecs)


def image(m: Matrix) -> Subspace:
    """Column space."""
    return Subspace.span(m.field, m.nrows, m.columns())


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return Subspace.span(a.field, a.ambient_dim, list(a.basis.rows) + list(b.basis.rows))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus-free route: kernel of ``[A^T | -B^T]`` mapped back through A."""
    _check_compatible(a, b)
    f = a.field
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(f, a.ambient_dim)
    cols = list(a.basis.rows) + [sp_scale(-f.one, r) for r in b.basis.rows]
    k = kernel(Matrix.from_columns(f, cols, a.ambient_dim))
    vecs = []
    for v in k.basis.rows:
        w: SparseVec = {}
        for i, c in v.items():
            if i < a.dim:
                sp_axpy(w, c, a.basis.rows[i])
        vecs.append(w)
    return Subspace.span(f, a.ambient_dim, vecs)


def quotient_basis(a: Subspace, b: Subspace) -> Tuple[Matrix, Matrix]:
    """Projection ``b -> b/a`` and a section ``b/a -> b``.

    The section picks representatives reduced modulo ``a``; when ``b`` is the
    full space these are the unit vectors at the non-pivot columns of ``a``.
    The projection is a matrix on ambient coordinates (meaningful on ``b``).
    """
    _check_compatible(a, b)
    if not a <= b:
        raise SubspaceNotContained("quotient_basis needs a ⊆ b")
    f = a.field
    n = a.ambient_dim
    ea = a._echelon()
    w = _echelon_of(f, (ea.reduce(r) for r in b.basis.rows))
    wrows = w.rows()
    wp = [min(r) for r in wrows]
    section = Matrix.from_columns(f, wrows, n)
    pos = {c: i for i, c in enumerate(wp)}
    # projection column j is the coordinate vector of reduce_a(e_j)
    cols: List[SparseVec] = []
    for j in range(n):
        col = {}
        if j in pos:
            col[pos[j]] = f.one
        if j in ea.pivots:
            arow = ea.pivots[j]
            # e_j - arow, read at w's pivots (arow's own pivot is j, not in wp)
            for c, i in pos.items():
                x = arow.get(c)
                if x and c != j:
                    col[i] = col.get(i, f.zero) - x
        cols.append({k: x for k, x in col.items() if x})
    projection = Matrix.from_columns(f, cols, len(wp))
    return projection, section


def complement(s: Subspace) -> Subspace:
    """Canonical complement in the ambient space (unit vectors off the pivots)."""
    piv = set(s.pivots)
    return Subspace.span(s.field, s.ambient_dim,
                         [{j: s.field.one} for j in range(s.ambient_dim) if j not in piv])


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """``{v : m v ∈ s}``."""
    if m.nrows != s.ambient_dim:
        raise DimensionMismatch("codomain mismatch")
    proj, _ = quotient_basis(s, Subspace.full(s.field, s.ambient_dim))
    return kernel(proj @ m)


class SingularMatrix(ValueError):
    pass


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix by reducing ``[m | I]``."""
    n = m.nrows
    if m.ncols != n:
        raise DimensionMismatch("inverse needs a square matrix")
    f = m.field
    aug = [dict(r) for r in m.rows]
    for i in range(n):
        aug[i][n + i] = f.one
    red = rref(Matrix.from_sparse_rows(f, aug, 2 * n))
    if red.nrows < n or any(min(r) != i for i, r in enumerate(red.rows)):
        raise SingularMatrix("matrix is not invertible")
    return Matrix.from_sparse_rows(f, [{c - n: x for c, x in r.items() if c >= n} for r in red.rows], n)
