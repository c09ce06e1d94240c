"""Kernel-dimension invariants of a state and its rank decomposition.

For each bipartition of the factors, the flattening of a state has a
kernel whose dimension is invariant under invertible local maps.  For
three factors there is one more invariant: the dimension of the joint
kernel cut out by applying each pair flattening alongside the identity on
the remaining factor.  The full signature collects all of these; the rank
dualities between complementary bipartitions are re-checked on every
computation rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .linalg import ExactMatrix, InternalConsistencyError
from .tensors import ArityError, FlatteningSpec, Tensor, flatten


@dataclass(frozen=True)
class InvariantSignature:
    """Kernel dimensions of a state: singles, and for n=3 pairs and triple.

    `singles` is (k1, ..., kn); `pairs` is (k12, k13, k23) and `triple`
    the intersection-kernel dimension, both None for n=2.
    """

    dims: tuple[int, ...]
    singles: tuple[int, ...]
    pairs: Optional[tuple[int, int, int]] = None
    triple: Optional[int] = None

    def __post_init__(self):
        d = self.dims
        n = len(d)
        for k_i, d_i in zip(self.singles, d):
            if not 0 <= k_i <= d_i:
                raise InternalConsistencyError(f"single kernel dim {k_i} out of [0, {d_i}]")
        if n == 2:
            if d[0] - self.singles[0] != d[1] - self.singles[1]:
                raise InternalConsistencyError(f"rank duality violated: {self}")
        else:
            k12, k13, k23 = self.pairs
            full = d[0] * d[1] * d[2]
            if not (
                d[0] - self.singles[0] == d[1] * d[2] - k23
                and d[1] - self.singles[1] == d[0] * d[2] - k13
                and d[2] - self.singles[2] == d[0] * d[1] - k12
            ):
                raise InternalConsistencyError(f"rank duality violated: {self}")
            if not 0 <= self.triple <= full:
                raise InternalConsistencyError(f"triple kernel dim {self.triple} out of range")

    @property
    def n(self) -> int:
        return len(self.dims)

    def key(self) -> tuple[int, ...]:
        """The tuple used for class lookup: (k1,) for n=2, else (k1,k2,k3,k123)."""
        if self.n == 2:
            return (self.singles[0],)
        return self.singles + (self.triple,)

    def as_dict(self) -> dict:
        out = {"n": self.n, "dims": list(self.dims), "singles": list(self.singles)}
        if self.n == 3:
            out["pairs"] = list(self.pairs)
            out["triple"] = self.triple
        return out

    def __str__(self):
        singles = ",".join(str(k) for k in self.singles)
        if self.n == 2:
            return f"({singles})"
        pairs = ",".join(str(k) for k in self.pairs)
        return f"({singles};{pairs};{self.triple})"


def kernel_dim(v: Tensor, spec: FlatteningSpec) -> int:
    """Kernel dimension of the flattening against `spec` (dim W - rank)."""
    dim_w = 1
    for i in spec.row_factors:
        dim_w *= v.shape.dims[i - 1]
    return dim_w - flatten(v, spec).rank()


def triple_constraint_matrix(v: Tensor) -> ExactMatrix:
    """Stacked constraint rows whose kernel is the triple intersection.

    For shape (d1, d2, d3) the matrix is (d3^2 + d2^2 + d1^2) x (d1 d2 d3),
    over the unknown w flattened like tensor coefficients.  Row blocks, in
    order, encode for all (k, l), (j, l), (i, l) respectively:

        sum_{i,j} v[i,j,k] w[i,j,l] = 0
        sum_{i,k} v[i,j,k] w[i,l,k] = 0
        sum_{j,k} v[i,j,k] w[l,j,k] = 0

    with each block's (outer, inner) row pairs in row-major order.
    """
    if v.n != 3:
        raise ArityError(f"triple intersection needs 3 factors, got {v.n}")
    d1, d2, d3 = v.shape.dims
    size = d1 * d2 * d3
    off = v.shape.offset
    zero = v.field.zero
    rows = []
    for k, l in product(range(d3), repeat=2):
        row = [zero] * size
        for i, j in product(range(d1), range(d2)):
            row[off((i, j, l))] = v.coeffs[off((i, j, k))]
        rows.append(row)
    for j, l in product(range(d2), repeat=2):
        row = [zero] * size
        for i, k in product(range(d1), range(d3)):
            row[off((i, l, k))] = v.coeffs[off((i, j, k))]
        rows.append(row)
    for i, l in product(range(d1), repeat=2):
        row = [zero] * size
        for j, k in product(range(d2), range(d3)):
            row[off((l, j, k))] = v.coeffs[off((i, j, k))]
        rows.append(row)
    return ExactMatrix.from_rows(v.field, rows)


def triple_kernel_dim(v: Tensor) -> int:
    """Dimension of the joint kernel of the three extended pair maps."""
    return v.shape.size - triple_constraint_matrix(v).rank()


def signature(v: Tensor) -> InvariantSignature:
    """Complete invariant signature of a 2- or 3-factor state.

    Pair kernel dimensions are computed from their own flattenings, not
    inferred from the singles; the dualities between the two routes are
    asserted when the signature is assembled.
    """
    n = v.n
    singles = tuple(kernel_dim(v, FlatteningSpec((i,), n)) for i in range(1, n + 1))
    if n == 2:
        return InvariantSignature(dims=v.shape.dims, singles=singles)
    pairs = tuple(
        kernel_dim(v, FlatteningSpec(rows, 3)) for rows in ((1, 2), (1, 3), (2, 3))
    )
    triple = triple_kernel_dim(v)
    return InvariantSignature(dims=v.shape.dims, singles=singles, pairs=pairs, triple=triple)


def general_form_decomposition(
    v: Tensor, spec: FlatteningSpec
) -> list[tuple[list, list]]:
    """Rank factorization of a flattening as pairs (w_i, w'_i).

    Exactly dim W - k(v) pairs are returned, with {w_i} and {w'_i} each
    linearly independent and sum_i w_i x w'_i reproducing v.  Pivot
    columns of the flattening supply the w_i, the nonzero reduced rows
    supply the w'_i, so the output is deterministic.
    """
    m = flatten(v, spec)
    reduced, pivots = m.rref()
    out = []
    for r, p in enumerate(pivots):
        w = [m.entries[i * m.cols + p] for i in range(m.rows)]
        w_prime = reduced.row(r)
        out.append((w, w_prime))
    return out
