"""Exact matrices with reduced row echelon form, rank, and kernel bases.

All arithmetic is exact field arithmetic; there are no tolerances and no
pivoting heuristics (the first nonzero entry in column order is the pivot).
`rank` takes fraction-free integer fast paths for rational and GF(p)
matrices; its agreement with the pivot count of `rref` is a tested
invariant, not an assumption.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .fields import Field, FieldMismatchError, PrimeField, RationalField


class InternalConsistencyError(RuntimeError):
    """An identity that must hold mathematically failed; this is a bug."""


class ExactMatrix:
    """A rows x cols matrix of scalars drawn from one exact field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(entries)}"
            )
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = [field.coerce(x) for x in entries]

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "ExactMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for row in rows:
            if len(row) != nc:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(field, nr, nc, flat)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        one, zero = field.one, field.zero
        return cls(field, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        zero = field.zero
        return cls(field, rows, cols, [zero] * (rows * cols))

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field,
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise FieldMismatchError("matrix product across different fields")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + ri[k] * other.entries[k * other.cols + j]
                out.append(acc)
        return ExactMatrix(self.field, self.rows, other.cols, out)

    def mat_vec(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            acc = zero
            ri = self.row(i)
            for k in range(self.cols):
                acc = acc + ri[k] * vec[k]
            out.append(acc)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field.descriptor}: {body})"

    # -- elimination ---------------------------------------------------

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        """Reduced row echelon form and the ordered pivot column indices.

        Row space is preserved, pivots are 1 with zeros above and below,
        and the result is deterministic: pivots are the first nonzero
        entries in column order.
        """
        m = self.row_lists()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = None
            for i in range(r, self.rows):
                if m[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv_p = self.field.one / m[r][c]
            m[r] = [x * inv_p for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        flat = [x for row in m for x in row]
        return ExactMatrix(self.field, self.rows, self.cols, flat), pivots

    def rank(self) -> int:
        """Number of pivot columns of the reduced row echelon form."""
        if isinstance(self.field, RationalField):
            return _rank_rational(self.row_lists(), self.cols)
        if isinstance(self.field, PrimeField):
            return _rank_prime(self.row_lists(), self.cols, self.field.p)
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list]:
        """Deterministic basis of the right null space.

        One basis vector per free column, in increasing column order, with
        the free coordinate set to 1.
        """
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free_cols = [c for c in range(self.cols) if c not in pivot_set]
        zero, one = self.field.zero, self.field.one
        basis = []
        for f in free_cols:
            vec = [zero] * self.cols
            vec[f] = one
            for r, p in enumerate(pivots):
                vec[p] = -reduced.entries[r * self.cols + f]
            basis.append(vec)
        return basis

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        aug = ExactMatrix(
            self.field,
            n,
            2 * n,
            [
                self.entries[i * n + j] if j < n else (self.field.one if j - n == i else self.field.zero)
                for i in range(n)
                for j in range(2 * n)
            ],
        )
        reduced, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        inv = [reduced.entries[i * 2 * n + n + j] for i in range(n) for j in range(n)]
        return ExactMatrix(self.field, n, n, inv)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


# -- fraction-free fast paths ------------------------------------------


def _rank_rational(rows: list[list[Fraction]], cols: int) -> int:
    int_rows = []
    for row in rows:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        int_rows.append([int(x * scale) for x in row])
    return _rank_bareiss(int_rows, cols)


def _rank_bareiss(rows: list[list[int]], cols: int) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Entries stay exact minors of the input, so intermediate growth is
    polynomial and every division below is exact; a nonzero remainder
    would mean a bug, not a data issue.
    """
    nr = len(rows)
    rank = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(rank, nr):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(rank + 1, nr):
            ri = rows[i]
            f = ri[c]
            if f == 0 and p == prev:
                continue
            rp = rows[rank]
            for j in range(c + 1, cols):
                q, rem = divmod(p * ri[j] - f * rp[j], prev)
                if rem:
                    raise InternalConsistencyError("inexact division in Bareiss step")
                ri[j] = q
            ri[c] = 0
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def _rank_prime(rows: list[list], cols: int, p: int) -> int:
    m = [[x.value for x in row] for row in rows]
    nr = len(m)
    rank = 0
    for c in range(cols):
        piv = None
        for i in range(rank, nr):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(rank + 1, nr):
            f = m[i][c]
            if f:
                mr = m[rank]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], mr)]
        rank += 1
        if rank == nr:
            break
    return rank
