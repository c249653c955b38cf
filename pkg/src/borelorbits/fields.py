"""Exact arithmetic over the rationals and prime fields, and dense matrices.

Scalars are plain Python values: ``fractions.Fraction`` for the rationals
(always in lowest terms with positive denominator) and ``int`` residues in
``[0, p)`` for GF(p).  The :class:`FieldSpec` carries the arithmetic, so no
per-element wrapper objects are needed and nothing ever rounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .rankcontrol import RankControl

__all__ = [
    "FieldSpec",
    "RATIONALS",
    "Matrix",
    "MatrixFormatError",
    "mat_rank",
    "rank_control",
    "rank_control_naive",
    "congruence_transform",
    "lu_transform",
    "borel_random",
    "parse_matrix",
    "format_matrix",
]

_MR_BASES = (2, 3, 5, 7)  # deterministic Miller-Rabin below 3.2e9


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``modulus=None``) or a prime field GF(modulus)."""

    modulus: int | None = None

    def __post_init__(self) -> None:
        p = self.modulus
        if p is not None:
            if not (2 <= p < 2**31):
                raise ValueError(f"modulus {p} out of range")
            if not _is_prime(p):
                raise ValueError(f"modulus {p} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    def coerce(self, x):
        if self.modulus is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer residue")
            x = x.numerator
        return int(x) % self.modulus

    @property
    def zero(self):
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self):
        return Fraction(1) if self.modulus is None else 1

    def add(self, a, b):
        return a + b if self.modulus is None else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.modulus is None else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.modulus is None else (a * b) % self.modulus

    def neg(self, a):
        return -a if self.modulus is None else (-a) % self.modulus

    def inv(self, a):
        if self.modulus is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def is_zero(self, a) -> bool:
        return a == 0

    def __str__(self) -> str:
        return "rationals" if self.modulus is None else f"gf({self.modulus})"


RATIONALS = FieldSpec()


class MatrixFormatError(ValueError):
    """Malformed matrix text; carries 1-based line and entry position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, entry {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`, row-major entries."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows, field: FieldSpec = RATIONALS) -> Matrix:
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(field.coerce(x) for r in rows for x in r)
        return cls(field, nr, nc, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = RATIONALS) -> Matrix:
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = RATIONALS) -> Matrix:
        z, o = field.zero, field.one
        flat = tuple(o if i == j else z for i in range(n) for j in range(n))
        return cls(field, n, n, flat)

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row_values(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row_values(i) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        flat = tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.field, self.cols, self.rows, flat)

    def submatrix(self, k: int, l: int) -> Matrix:
        """Upper-left k-by-l corner."""
        flat = tuple(self.at(i, j) for i in range(k) for j in range(l))
        return Matrix(self.field, k, l, flat)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        f = self.field
        out = []
        for i in range(self.rows):
            ri = self.entries[i * self.cols : (i + 1) * self.cols]
            for j in range(other.cols):
                acc = f.zero
                for k, a in enumerate(ri):
                    if a != 0:
                        acc = f.add(acc, f.mul(a, other.at(k, j)))
                out.append(acc)
        return Matrix(f, self.rows, other.cols, tuple(out))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.at(i, j) == self.at(j, i)
            for i in range(self.rows)
            for j in range(i)
        )

    def is_upper_triangular(self) -> bool:
        return self.rows == self.cols and all(
            self.at(i, j) == 0 for i in range(self.rows) for j in range(i)
        )

    def is_lower_triangular(self) -> bool:
        return self.rows == self.cols and all(
            self.at(i, j) == 0 for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def has_invertible_diagonal(self) -> bool:
        return all(self.at(i, i) != 0 for i in range(min(self.rows, self.cols)))

    def rank(self) -> int:
        """Exact rank by Gaussian elimination; an empty matrix has rank 0."""
        if self.rows == 0 or self.cols == 0:
            return 0
        return _prefix_ranks(self.field, self.to_rows(), self.cols)[-1]

    def rank_control(self) -> RankControl:
        """Ranks of all upper-left corners.

        One column-echelon pass per row-extended prefix: the pass over the
        first k rows yields the ranks of all k-by-l corners at once.

        >>> Matrix.identity(3).rank_control().grid
        ((1, 1, 1), (1, 2, 2), (1, 2, 3))
        """
        rows = self.to_rows()
        grid = tuple(
            tuple(_prefix_ranks(self.field, rows[:k], self.cols))
            for k in range(1, self.rows + 1)
        )
        return RankControl(grid)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row_values(i)) for i in range(self.rows))


def _prefix_ranks(field: FieldSpec, rows: list[list], cols: int) -> list[int]:
    """Rank of the first l columns of ``rows``, for every l in 1..cols.

    Maintains an echelon basis of the column space; each new column is
    reduced against the recorded pivots and either absorbed or added.
    """
    pivots: list[tuple[int, list]] = []
    out = []
    for j in range(cols):
        v = [row[j] for row in rows]
        for lead, w in pivots:
            c = v[lead]
            if c != 0:
                v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, w)]
        lead = next((i for i, a in enumerate(v) if a != 0), None)
        if lead is not None:
            inv = field.inv(v[lead])
            pivots.append((lead, [field.mul(a, inv) for a in v]))
        out.append(len(pivots))
    return out


def mat_rank(m: Matrix) -> int:
    return m.rank()


def rank_control(m: Matrix) -> RankControl:
    return m.rank_control()


def rank_control_naive(m: Matrix) -> RankControl:
    """Rank-control by independent elimination of every corner (slow path,
    kept as the cross-check for the incremental scheme)."""
    grid = tuple(
        tuple(m.submatrix(k, l).rank() for l in range(1, m.cols + 1))
        for k in range(1, m.rows + 1)
    )
    return RankControl(grid)


def congruence_transform(b: Matrix, s: Matrix) -> Matrix:
    """Congruence action of an invertible upper-triangular b on s: b^t s b."""
    if b.field != s.field:
        raise ValueError("field mismatch")
    if b.rows != b.cols or s.rows != s.cols or b.rows != s.rows:
        raise ValueError("dimension mismatch")
    if not b.is_upper_triangular():
        raise ValueError("transform matrix is not upper-triangular")
    if not b.has_invertible_diagonal():
        raise ValueError("transform matrix is not invertible")
    return b.transpose() @ s @ b


def lu_transform(l: Matrix, x: Matrix, b: Matrix) -> Matrix:
    """Two-sided triangular action l x b (l lower-, b upper-triangular,
    both invertible); preserves all upper-left corner ranks."""
    if not (l.field == x.field == b.field):
        raise ValueError("field mismatch")
    if l.rows != l.cols or b.rows != b.cols:
        raise ValueError("triangular factors must be square")
    if l.cols != x.rows or x.cols != b.rows:
        raise ValueError("dimension mismatch")
    if not l.is_lower_triangular() or not l.has_invertible_diagonal():
        raise ValueError("left factor is not invertible lower-triangular")
    if not b.is_upper_triangular() or not b.has_invertible_diagonal():
        raise ValueError("right factor is not invertible upper-triangular")
    return l @ x @ b


def borel_random(n: int, field: FieldSpec, seed: int) -> Matrix:
    """Seeded invertible upper-triangular matrix over a prime field.

    Diagonal entries are uniform on nonzero residues, strict upper entries
    uniform on all residues; draws are row-major, so output is a pure
    function of (n, p, seed).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not field.is_prime_field:
        raise ValueError("sampling requires a prime field")
    p = field.modulus
    rng = random.Random(seed)
    rows = []
    for i in range(n):
        row = [0] * n
        for j in range(i, n):
            row[j] = rng.randrange(1, p) if i == j else rng.randrange(p)
        rows.append(row)
    return Matrix.from_rows(rows, field)


def _parse_entry(token: str, field: FieldSpec, line: int, col: int):
    if field.is_prime_field:
        try:
            value = int(token)
        except ValueError:
            raise MatrixFormatError(f"invalid residue {token!r}", line, col) from None
        if not 0 <= value < field.modulus:
            raise MatrixFormatError(
                f"residue {value} out of range for {field}", line, col
            )
        return value
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise MatrixFormatError(f"invalid rational {token!r}", line, col) from None


def parse_matrix(text: str, field: FieldSpec = RATIONALS) -> Matrix:
    """Parse the shared text format: a "rows cols" header line, then one
    whitespace-separated line per row.  Rationals are "num" or "num/den";
    prime-field entries are nonnegative residues below the modulus.
    """
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError("empty input", 1, 1)
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError('expected header "rows cols"', 1, 1)
    try:
        nr, nc = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError('expected header "rows cols"', 1, 1) from None
    if nr < 1 or nc < 1:
        raise MatrixFormatError("dimensions must be positive", 1, 1)
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != nr:
        raise MatrixFormatError(
            f"expected {nr} rows, found {len(body)}", len(lines), 1
        )
    rows = []
    for i, ln in enumerate(body):
        tokens = ln.split()
        if len(tokens) != nc:
            raise MatrixFormatError(
                f"expected {nc} entries, found {len(tokens)}", i + 2, max(len(tokens), 1)
            )
        rows.append(
            [_parse_entry(tok, field, i + 2, j + 1) for j, tok in enumerate(tokens)]
        )
    return Matrix.from_rows(rows, field)


def format_matrix(m: Matrix) -> str:
    header = f"{m.rows} {m.cols}"
    body = "\n".join(" ".join(str(x) for x in m.row_values(i)) for i in range(m.rows))
    return f"{header}\n{body}\n" if body else f"{header}\n"
