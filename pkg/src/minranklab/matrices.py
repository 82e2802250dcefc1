"""Exact dense matrices over prime fields GF(p) and over the rationals.

Rank over GF(p) uses modular Gaussian elimination; rank over the rationals
uses fraction-free (Bareiss) elimination on integer-scaled rows, so no
floating point is ever involved. Sparse-basis search enumerates column
subsets in lexicographic order with weight pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# elimination kernels

def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        v = row
        while v:
            lsb = v & -v
            piv = pivots.get(lsb)
            if piv is None:
                pivots[lsb] = v
                rank += 1
                break
            v ^= piv
    return rank


def mod_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) by Gaussian elimination on row lists."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    rank = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][c] % p), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][c], p - 2, p) if p > 2 else 1
        prow = [(x * inv) % p for x in work[r]]
        work[r] = prow
        for i in range(r + 1, nrows):
            f = work[i][c] % p
            if f:
                row = work[i]
                work[i] = [(x - f * y) % p for x, y in zip(row, prow)]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def mod_nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows @ x = 0} over GF(p)."""
    work = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [(x * inv) % p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(x - f * y) % p for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for row_idx, c in enumerate(pivots):
            vec[c] = (-work[row_idx][free]) % p
        basis.append(vec)
    return basis


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix by fraction-free elimination.

    Every interior division is asserted exact; a failed assertion means the
    elimination bookkeeping is broken, not bad input.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    prev = 1
    rank = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][c]
        prow = work[r]
        for i in range(r + 1, nrows):
            row = work[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    q, rem = divmod(row[j] * pv - f * prow[j], prev)
                    assert rem == 0, "fraction-free elimination divided inexactly"
                    row[j] = q
            elif prev != 1 or pv != 1:
                for j in range(c + 1, ncols):
                    q, rem = divmod(row[j] * pv, prev)
                    assert rem == 0, "fraction-free elimination divided inexactly"
                    row[j] = q
            row[c] = 0
        prev = pv
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# matrix types

@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over GF(p), entries stored as residues in [0, p)."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        width = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            if any(not 0 <= x < self.p for x in row):
                raise ValueError("entries must be reduced mod p")

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        return cls(p, tuple(tuple(x % p for x in row) for row in rows))

    @classmethod
    def identity(cls, p: int, n: int) -> "FieldMatrix":
        return cls(p, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def all_ones(cls, p: int, rows: int, cols: int) -> "FieldMatrix":
        return cls(p, tuple((1,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        if self.p == 2:
            return gf2_rank(
                sum(x << j for j, x in enumerate(row)) for row in self.entries
            )
        return mod_rank(self.entries, self.p)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.p, tuple(zip(*self.entries)) if self.entries else ())


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals (Fraction keeps lowest terms)."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        width = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[int, str, Fraction]]]) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        scaled = []
        for row in self.entries:
            den = 1
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
            scaled.append([int(x * den) for x in row])
        return bareiss_rank(scaled)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        tother = other.transpose().entries
        return RationalMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in tother)
                for row in self.entries
            )
        )


Matrix = Union[FieldMatrix, RationalMatrix]


def sparsity(m: Matrix) -> int:
    """Number of nonzero entries."""
    return sum(1 for row in m.entries for x in row if x)


# ---------------------------------------------------------------------------
# sparse bases

def _column_vectors(m: FieldMatrix) -> list[tuple[int, ...]]:
    return [tuple(row[c] for row in m.entries) for c in range(m.cols)]


def min_column_basis_weight(m: FieldMatrix) -> int:
    """Minimum total nonzeros over sets of rank(m) independent columns.

    Lexicographic subset search, pruning on partial weight and on partial
    dependence (a dependent prefix cannot extend to a basis).
    """
    k = m.rank()
    if k == 0:
        return 0
    cols = _column_vectors(m)
    weights = [sum(1 for x in col if x) for col in cols]
    ncols = len(cols)
    best: list[int] = [sum(sorted(weights, reverse=True)[:k]) ]  # trivial upper bound

    def extend(start: int, chosen: list[int], weight: int) -> None:
        if weight >= best[0] and len(chosen) < k:
            return
        if len(chosen) == k:
            if weight < best[0]:
                best[0] = weight
            return
        for idx in range(start, ncols - (k - len(chosen)) + 1):
            w = weight + weights[idx]
            if w > best[0]:
                continue
            candidate = chosen + [idx]
            sub = [cols[i] for i in candidate]
            if mod_rank(sub, m.p) == len(candidate):
                extend(idx + 1, candidate, w)

    extend(0, [], 0)
    return best[0]


def min_row_basis_weight(m: FieldMatrix) -> int:
    return min_column_basis_weight(m.transpose())


def has_sparse_bases(m: FieldMatrix, ell: int) -> bool:
    """True iff both a column basis and a row basis have total nonzeros <= ell."""
    return min_column_basis_weight(m) <= ell and min_row_basis_weight(m) <= ell


# ---------------------------------------------------------------------------
# text format: "rows cols modulus" then row-major entries (modulus 0 = rationals)

def format_matrix_text(m: Matrix) -> str:
    if isinstance(m, FieldMatrix):
        head = f"{m.rows} {m.cols} {m.p}"
        body = "\n".join(" ".join(str(x) for x in row) for row in m.entries)
    else:
        head = f"{m.rows} {m.cols} 0"
        body = "\n".join(" ".join(str(x) for x in row) for row in m.entries)
    return head + ("\n" + body if body else "") + "\n"


def parse_matrix_text(text: str) -> Matrix:
    tokens = text.split()
    if len(tokens) < 3:
        raise ValueError("matrix text needs a 'rows cols modulus' header")
    rows, cols, modulus = int(tokens[0]), int(tokens[1]), int(tokens[2])
    body = tokens[3:]
    if len(body) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(body)}")
    grid = [body[i * cols:(i + 1) * cols] for i in range(rows)]
    if modulus == 0:
        return RationalMatrix.from_rows(grid)
    return FieldMatrix.from_rows(modulus, [[int(x) for x in row] for row in grid])
