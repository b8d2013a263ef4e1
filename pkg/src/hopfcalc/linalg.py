"""Exact rational dense linear algebra.

Everything here runs over :class:`fractions.Fraction`, no floats.  Reduction is
fraction-free inside (rows are cleared to integers and eliminated by
cross-multiplication with gcd trimming), with pivots normalized to 1 at the
end.  Pivot choice is deterministic: leftmost column first, then smallest row
index.  Since reduced row-echelon form is unique for a given row space, every
Subspace stores a canonical basis and subspace equality is value equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


class AmbientMismatch(ValueError):
    """Two subspaces of different ambient dimensions were combined."""


class NotSquare(ValueError):
    """A square matrix was required."""


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]  # row-major

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]], cols: Optional[int] = None) -> RationalMatrix:
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = cols if cols is not None else 0
        if cols is not None and width != cols:
            raise ValueError(f"rows of length {width} do not match cols={cols}")
        flat = tuple(Fraction(x) for row in rows for x in row)
        return cls(len(rows), width, flat)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose()
        flat = []
        for i in range(self.rows):
            left = self.row(i)
            for j in range(other.cols):
                right = ot.row(j)
                flat.append(sum((a * b for a, b in zip(left, right) if a and b), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, tuple(flat))

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"cannot subtract {other.rows}x{other.cols} from {self.rows}x{self.cols}"
            )
        return RationalMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def apply(self, vector: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} against {self.cols} columns")
        vec = [Fraction(v) for v in vector]
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.at(i, j) == self.at(j, i) for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def rref(self) -> tuple[RationalMatrix, tuple[int, ...]]:
        reduced, pivots = _rref(self.to_rows(), self.cols)
        return RationalMatrix.from_rows(reduced, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise NotSquare(f"determinant of a {self.rows}x{self.cols} matrix")
        return _bareiss_det(self.to_rows())

    def inverse(self) -> RationalMatrix:
        if self.rows != self.cols:
            raise NotSquare(f"inverse of a {self.rows}x{self.cols} matrix")
        n = self.rows
        aug = [list(self.row(i)) + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
        reduced, pivots = _rref(aug, 2 * n)
        if list(pivots[:n]) != list(range(n)) or len(pivots) < n:
            raise ValueError("matrix is singular")
        return RationalMatrix.from_rows([row[n:] for row in reduced[:n]], cols=n)

    def solve(self, rhs: RationalMatrix) -> RationalMatrix:
        """Exact solution X of self @ X = rhs; requires self square invertible."""
        if self.rows != self.cols:
            raise NotSquare(f"solve with a {self.rows}x{self.cols} coefficient matrix")
        if rhs.rows != self.rows:
            raise ValueError("right-hand side has the wrong number of rows")
        n, w = self.rows, rhs.cols
        aug = [list(self.row(i)) + list(rhs.row(i)) for i in range(n)]
        reduced, pivots = _rref(aug, n + w)
        if list(pivots[:n]) != list(range(n)) or len(pivots) < n:
            raise ValueError("matrix is singular")
        return RationalMatrix.from_rows([row[n:] for row in reduced[:n]], cols=w)


def stack_rows(matrices: Iterable[RationalMatrix], cols: Optional[int] = None) -> RationalMatrix:
    mats = list(matrices)
    widths = {m.cols for m in mats if m.rows}
    if len(widths) > 1:
        raise ValueError(f"mixed column counts {sorted(widths)}")
    width = widths.pop() if widths else (cols if cols is not None else 0)
    rows: list[list[Fraction]] = []
    for m in mats:
        rows.extend(m.to_rows())
    return RationalMatrix.from_rows(rows, cols=width)


# ---------------------------------------------------------------------------
# elimination cores


def _integerize(row: Sequence[Fraction]) -> list[int]:
    scale = lcm(*(c.denominator for c in row)) if row else 1
    out = [int(c * scale) for c in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out

def _rref(rows: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Canonical reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    work = [_integerize(r) for r in rows]
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        src = next((r for r in range(pivot_row, len(work)) if work[r][col]), None)
        if src is None:
            continue
        work[pivot_row], work[src] = work[src], work[pivot_row]
        pivot = work[pivot_row]
        pval = pivot[col]
        for r in range(len(work)):
            if r == pivot_row or not work[r][col]:
                continue
            rval = work[r][col]
            row = [pval * a - rval * b for a, b in zip(work[r], pivot)]
            g = 0
            for v in row:
                g = gcd(g, v)
            work[r] = [v // g for v in row] if g > 1 else row
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(work):
            break
    reduced: list[list[Fraction]] = []
    for r, col in enumerate(pivots):
        pval = work[r][col]
        reduced.append([Fraction(v, pval) for v in work[r]])
    return reduced, pivots


def _bareiss_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    work: list[list[int]] = []
    for row in rows:
        denom = lcm(*(c.denominator for c in row)) if row else 1
        work.append([int(c * denom) for c in row])
        scale *= denom
    sign = 1
    prev = 1
    for k in range(n - 1):
        src = next((r for r in range(k, n) if work[r][k]), None)
        if src is None:
            return Fraction(0)
        if src != k:
            work[k], work[src] = work[src], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = pivot
    return Fraction(sign * work[n - 1][n - 1]) / scale


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored via its unique reduced row-echelon basis."""

    ambient_dim: int
    basis: RationalMatrix

    def __post_init__(self) -> None:
        if self.basis.cols != self.ambient_dim:
            raise AmbientMismatch(
                f"basis rows of length {self.basis.cols} in ambient dimension {self.ambient_dim}"
            )

    @classmethod
    def span(cls, ambient_dim: int, vectors: Sequence[Sequence[Fraction | int]]) -> Subspace:
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        reduced, _ = _rref([[Fraction(x) for x in v] for v in vectors], ambient_dim)
        return cls(ambient_dim, RationalMatrix.from_rows(reduced, cols=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RationalMatrix.from_rows([], cols=ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> list[list[Fraction]]:
        return self.basis.to_rows()

    def contains(self, vector: Sequence[Fraction | int]) -> bool:
        if len(vector) != self.ambient_dim:
            raise AmbientMismatch(
                f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}"
            )
        v = [Fraction(x) for x in vector]
        for row in self.basis.to_rows():
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is not None and v[lead]:
                coeff = v[lead]
                v = [a - coeff * b for a, b in zip(v, row)]
        return not any(v)


@dataclass(frozen=True)
class SpanParts:
    sum: Subspace
    intersection: Subspace
    complement_of_a_in_sum: Subspace


def kernel_basis(m: RationalMatrix) -> Subspace:
    """Canonical basis of the right kernel { x : m x = 0 }."""
    reduced, pivots = _rref(m.to_rows(), m.cols)
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.cols) if j not in pivot_set]
    vectors = []
    for f in free_cols:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        vectors.append(v)
    return Subspace.span(m.cols, vectors)


def extend_independent(
    base_rows: Sequence[Sequence[Fraction | int]],
    candidates: Sequence[Sequence[Fraction | int]],
    ambient_dim: int,
) -> list[list[Fraction]]:
    """Greedily keep the candidates (in order) that enlarge span(base_rows).

    Returns the kept candidates unchanged; together with the base they span
    base + span(kept).  This is the deterministic complement-picking rule used
    everywhere: earlier candidates win.
    """
    echelon: list[list[Fraction]] = []

    def reduce_and_maybe_insert(vector: Sequence[Fraction | int], insert: bool) -> bool:
        v = [Fraction(x) for x in vector]
        for row in echelon:
            lead = next(j for j, x in enumerate(row) if x)
            if v[lead]:
                coeff = v[lead] / row[lead]
                v = [a - coeff * b for a, b in zip(v, row)]
        if not any(v):
            return False
        if insert:
            echelon.append(v)
            echelon.sort(key=lambda row: next(j for j, x in enumerate(row) if x))
        return True

    for row in base_rows:
        if len(row) != ambient_dim:
            raise AmbientMismatch(f"vector of length {len(row)} in ambient dimension {ambient_dim}")
        reduce_and_maybe_insert(row, insert=True)
    kept: list[list[Fraction]] = []
    for cand in candidates:
        if len(cand) != ambient_dim:
            raise AmbientMismatch(f"vector of length {len(cand)} in ambient dimension {ambient_dim}")
        if reduce_and_maybe_insert(cand, insert=True):
            kept.append([Fraction(x) for x in cand])
    return kept


def span_ops(a: Subspace, b: Subspace) -> SpanParts:
    """Sum, intersection, and a complement of a inside the sum.

    The complement is spanned by the first rows of b's canonical basis that
    enlarge a; so a ⊕ complement = a + b by construction.
    """
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} != {b.ambient_dim}")
    n = a.ambient_dim
    a_rows = a.basis_rows()
    b_rows = b.basis_rows()
    total = Subspace.span(n, a_rows + b_rows)

    stacked = RationalMatrix.from_rows(a_rows + b_rows, cols=n)
    left_kernel = kernel_basis(stacked.transpose())
    meet_vectors = []
    for combo in left_kernel.basis_rows():
        x = combo[: a.dim]
        vec = [Fraction(0)] * n
        for coeff, row in zip(x, a_rows):
            if coeff:
                vec = [u + coeff * w for u, w in zip(vec, row)]
        meet_vectors.append(vec)
    meet = Subspace.span(n, meet_vectors)

    kept = extend_independent(a_rows, b_rows, n)
    complement = Subspace.span(n, kept)
    return SpanParts(total, meet, complement)


@dataclass(frozen=True)
class GramDiagnosis:
    symmetric: bool
    nondegenerate: bool
    determinant: Fraction


def gram_diagnose(g: RationalMatrix) -> GramDiagnosis:
    """Symmetry and (exact) nondegeneracy of a candidate Gram matrix."""
    if g.rows != g.cols:
        raise NotSquare(f"gram matrix must be square, got {g.rows}x{g.cols}")
    det = g.det()
    return GramDiagnosis(g.is_symmetric(), det != 0, det)
