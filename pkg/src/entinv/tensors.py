"""Dense tensors over exact fields, flattenings, and local transformations.

A tensor of shape (d1, ..., dn), n in {2, 3}, stores its coefficients
row-major (last index fastest).  Flattening against an ordered bipartition
of the factors produces an :class:`~entinv.linalg.ExactMatrix`; states are
built either coefficient-by-coefficient or from bracket-notation term
lists like [1,1,1]+[2,2,1] (1-based indices, converted at the boundary).
"""

from __future__ import annotations

import random
from itertools import product
from typing import Optional, Sequence

from .fields import Field, QQ
from .linalg import ExactMatrix


class ShapeError(ValueError):
    """A shape, index, or flattening specification is inconsistent."""


class ArityError(ShapeError):
    """An operation that needs a specific subsystem count got another."""


class BasisError(ValueError):
    """A supplied basis or local map is not invertible (or malformed)."""


class Shape:
    """Factor dimensions (d1, ..., dn) with n in {2, 3} and every di >= 1."""

    __slots__ = ("dims",)

    def __init__(self, dims: Sequence[int]):
        dims = tuple(int(d) for d in dims)
        if not 2 <= len(dims) <= 3:
            raise ShapeError(f"supported tensors have 2 or 3 factors, got {len(dims)}")
        if any(d < 1 for d in dims):
            raise ShapeError(f"factor dimensions must be >= 1: {dims}")
        self.dims = dims

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    def offset(self, index: Sequence[int]) -> int:
        """Row-major offset of a 0-based multi-index."""
        off = 0
        for d, i in zip(self.dims, index):
            if not 0 <= i < d:
                raise ShapeError(f"index {tuple(index)} out of range for {self.dims}")
            off = off * d + i
        return off

    def indices(self):
        """All 0-based multi-indices in row-major order."""
        return product(*(range(d) for d in self.dims))

    def __eq__(self, other):
        return isinstance(other, Shape) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"Shape{self.dims}"


class FlatteningSpec:
    """An ordered bipartition of factor positions (1-based, increasing).

    `row_factors` index the side whose tensor product forms matrix rows;
    the complementary factors form the columns.
    """

    __slots__ = ("n", "row_factors", "col_factors")

    def __init__(self, row_factors: Sequence[int], n: int):
        rows = tuple(sorted(set(int(i) for i in row_factors)))
        if len(rows) != len(tuple(row_factors)):
            raise ShapeError(f"duplicate factors in {tuple(row_factors)}")
        if not rows:
            raise ShapeError("row factor set must be nonempty")
        if any(i < 1 or i > n for i in rows):
            raise ShapeError(f"factor positions must lie in 1..{n}: {rows}")
        if len(rows) == n:
            raise ShapeError("row factor set must be a proper subset")
        self.n = n
        self.row_factors = rows
        self.col_factors = tuple(i for i in range(1, n + 1) if i not in rows)

    def complement(self) -> "FlatteningSpec":
        return FlatteningSpec(self.col_factors, self.n)

    def __eq__(self, other):
        return (
            isinstance(other, FlatteningSpec)
            and self.n == other.n
            and self.row_factors == other.row_factors
        )

    def __hash__(self):
        return hash((self.n, self.row_factors))

    def __repr__(self):
        return f"FlatteningSpec(rows={self.row_factors}, n={self.n})"


def all_specs(n: int) -> list[FlatteningSpec]:
    """Every proper bipartition, singles first, in increasing factor order."""
    if n == 2:
        return [FlatteningSpec((1,), 2), FlatteningSpec((2,), 2)]
    return [
        FlatteningSpec((1,), 3),
        FlatteningSpec((2,), 3),
        FlatteningSpec((3,), 3),
        FlatteningSpec((1, 2), 3),
        FlatteningSpec((1, 3), 3),
        FlatteningSpec((2, 3), 3),
    ]


class Tensor:
    """Immutable dense tensor over one exact field."""

    __slots__ = ("field", "shape", "coeffs")

    def __init__(self, field: Field, shape: Shape, coeffs: Sequence):
        if len(coeffs) != shape.size:
            raise ShapeError(
                f"expected {shape.size} coefficients for shape {shape.dims}, got {len(coeffs)}"
            )
        self.field = field
        self.shape = shape
        self.coeffs = tuple(field.coerce(c) for c in coeffs)

    @classmethod
    def zero(cls, field: Field, shape: Shape) -> "Tensor":
        return cls(field, shape, [field.zero] * shape.size)

    @property
    def n(self) -> int:
        return self.shape.n

    def __getitem__(self, index) -> object:
        return self.coeffs[self.shape.offset(index)]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def scale(self, scalar) -> "Tensor":
        s = self.field.coerce(scalar)
        return Tensor(self.field, self.shape, [s * c for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.field == other.field
            and self.shape == other.shape
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        vals = ", ".join(self.field.format(c) for c in self.coeffs)
        return f"Tensor({self.shape.dims} over {self.field.descriptor}: [{vals}])"


def flatten(v: Tensor, spec: FlatteningSpec) -> ExactMatrix:
    """Matrix of `v` against the given bipartition.

    Entry [r, c] is the coefficient of v at the multi-index merging the
    row-side and column-side indices; both sides are flattened row-major
    in increasing factor order.  The complementary spec gives the
    transpose.
    """
    if spec.n != v.n:
        raise ShapeError(f"spec for n={spec.n} applied to n={v.n} tensor")
    dims = v.shape.dims
    row_pos = [i - 1 for i in spec.row_factors]
    col_pos = [i - 1 for i in spec.col_factors]
    row_dims = [dims[i] for i in row_pos]
    col_dims = [dims[i] for i in col_pos]
    nrows = _prod(row_dims)
    ncols = _prod(col_dims)
    entries = [v.field.zero] * (nrows * ncols)
    for full in v.shape.indices():
        r = 0
        for pos, d in zip(row_pos, row_dims):
            r = r * d + full[pos]
        c = 0
        for pos, d in zip(col_pos, col_dims):
            c = c * d + full[pos]
        entries[r * ncols + c] = v.coeffs[v.shape.offset(full)]
    return ExactMatrix(v.field, nrows, ncols, entries)


def from_terms(
    shape: Shape,
    terms: Sequence[Sequence[int]],
    bases: Optional[Sequence[ExactMatrix]] = None,
    field: Field = QQ,
) -> Tensor:
    """Sum of decomposable terms given in 1-based bracket notation.

    Term (j1, ..., jn) contributes u_{1,j1} x ... x u_{n,jn}, where
    u_{i,j} is column j of bases[i-1]; with no bases the standard basis is
    used and each distinct term lands as a single unit coefficient.
    """
    if bases is not None:
        if len(bases) != shape.n:
            raise BasisError(f"need {shape.n} basis matrices, got {len(bases)}")
        for i, b in enumerate(bases):
            d = shape.dims[i]
            if b.rows != d or b.cols != d:
                raise BasisError(f"basis for factor {i + 1} must be {d}x{d}")
            if b.field != field:
                raise BasisError(f"basis for factor {i + 1} is over the wrong field")
            if not b.is_invertible():
                raise BasisError(f"basis for factor {i + 1} is singular")

    for term in terms:
        if len(term) != shape.n:
            raise ShapeError(f"term {tuple(term)} has wrong arity for {shape.dims}")
        for j, d in zip(term, shape.dims):
            if not 1 <= j <= d:
                raise ShapeError(f"term index {tuple(term)} out of range for {shape.dims}")

    coeffs = [field.zero] * shape.size
    if bases is None:
        for term in terms:
            off = shape.offset(tuple(j - 1 for j in term))
            coeffs[off] = coeffs[off] + field.one
    else:
        for term in terms:
            cols = [
                [bases[i].entries[a * shape.dims[i] + (term[i] - 1)] for a in range(shape.dims[i])]
                for i in range(shape.n)
            ]
            for off, full in enumerate(shape.indices()):
                prod_val = field.one
                for i, a in enumerate(full):
                    prod_val = prod_val * cols[i][a]
                coeffs[off] = coeffs[off] + prod_val
    return Tensor(field, shape, coeffs)


def apply_local(v: Tensor, maps: Sequence[ExactMatrix]) -> Tensor:
    """Act on each factor with an invertible matrix.

    Coefficients transform as v'[a1', ..., an'] =
    sum A1[a1', a1] ... An[an', an] v[a1, ..., an].
    """
    if len(maps) != v.n:
        raise ShapeError(f"need {v.n} local maps, got {len(maps)}")
    for i, a in enumerate(maps):
        d = v.shape.dims[i]
        if a.rows != d or a.cols != d:
            raise ShapeError(f"local map for factor {i + 1} must be {d}x{d}")
        if a.field != v.field:
            raise ShapeError(f"local map for factor {i + 1} is over the wrong field")
        if not a.is_invertible():
            raise BasisError(f"local map for factor {i + 1} is singular")
    coeffs = list(v.coeffs)
    dims = v.shape.dims
    for axis, a in enumerate(maps):
        coeffs = _mode_apply(coeffs, dims, axis, a)
    return Tensor(v.field, v.shape, coeffs)


def _mode_apply(coeffs: list, dims: tuple[int, ...], axis: int, a: ExactMatrix) -> list:
    d = dims[axis]
    inner = _prod(dims[axis + 1 :])
    outer = _prod(dims[:axis])
    zero = a.field.zero
    out = [zero] * len(coeffs)
    for o in range(outer):
        base = o * d * inner
        for new_i in range(d):
            arow = a.row(new_i)
            for inn in range(inner):
                acc = zero
                for old_i in range(d):
                    c = coeffs[base + old_i * inner + inn]
                    if c:
                        acc = acc + arow[old_i] * c
                out[base + new_i * inner + inn] = acc
    return out


def random_tensor(shape: Shape, bound: int, seed: int, field: Field = QQ) -> Tensor:
    """Deterministic tensor with integer coefficients uniform in [-bound, bound]."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    rng = random.Random(f"tensor|{shape.dims}|{bound}|{seed}")
    return Tensor(
        field, shape, [field.from_int(rng.randint(-bound, bound)) for _ in range(shape.size)]
    )


def random_invertible(d: int, bound: int, seed: int, field: Field = QQ) -> ExactMatrix:
    """Deterministic invertible d x d integer matrix, by rejection sampling."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    rng = random.Random(f"invertible|{d}|{bound}|{seed}")
    while True:
        m = ExactMatrix(
            field, d, d, [field.from_int(rng.randint(-bound, bound)) for _ in range(d * d)]
        )
        if m.rank() == d:
            return m


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
