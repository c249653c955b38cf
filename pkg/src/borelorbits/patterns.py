"""Partial permutations and partial involutions as 0-1 pattern matrices.

A partial permutation of size n is an injective map defined on a subset of
{0, ..., n-1}, stored in one-line notation with ``None`` marking undefined
positions.  Its matrix form has at most one 1 per row and per column; a
partial involution is the symmetric case.  Indices are 0-based internally
and presented 1-based at the command line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .fields import RATIONALS, FieldSpec, Matrix
from .rankcontrol import RankControl

__all__ = [
    "PartialPermutation",
    "PartialInvolution",
    "InvolutionDecomposition",
    "PermStats",
    "enumerate_partial_permutations",
    "enumerate_partial_involutions",
    "pattern_from_rank_control",
    "decompose",
    "permutation_stats",
    "involutions",
]

PermOneLine = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class PartialPermutation:
    """Injective partial map i -> image[i], with None for undefined rows.

    Equality is by image, so a :class:`PartialInvolution` compares equal to
    the plain partial permutation with the same matrix.

    >>> p = PartialPermutation((1, 0, None))
    >>> p.matrix_rows()
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    >>> p.is_involution()
    True
    """

    image: tuple[int | None, ...]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PartialPermutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __post_init__(self) -> None:
        n = len(self.image)
        seen = set()
        for v in self.image:
            if v is None:
                continue
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"image value {v!r} out of range")
            if v in seen:
                raise ValueError("not injective")
            seen.add(v)

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def from_matrix(cls, rows) -> PartialPermutation:
        rows = [list(r) for r in rows]
        n = len(rows)
        image: list[int | None] = []
        for r in rows:
            if len(r) != n or any(x not in (0, 1) for x in r):
                raise ValueError("not a square 0-1 matrix")
            ones = [j for j, x in enumerate(r) if x == 1]
            if len(ones) > 1:
                raise ValueError("row with more than one 1")
            image.append(ones[0] if ones else None)
        return cls(tuple(image))

    @classmethod
    def from_permutation(cls, perm: PermOneLine) -> PartialPermutation:
        return cls(tuple(perm))

    @classmethod
    def zero(cls, n: int) -> PartialPermutation:
        return cls((None,) * n)

    @classmethod
    def identity(cls, n: int) -> PartialPermutation:
        return cls(tuple(range(n)))

    def matrix_rows(self) -> list[list[int]]:
        return [
            [1 if self.image[i] == j else 0 for j in range(self.n)]
            for i in range(self.n)
        ]

    def flat(self) -> tuple[int, ...]:
        """Row-major 0-1 entries; the canonical sort key for enumerations."""
        return tuple(x for row in self.matrix_rows() for x in row)

    def to_matrix(self, field: FieldSpec = RATIONALS) -> Matrix:
        return Matrix.from_rows(self.matrix_rows(), field)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.image) if v is not None)

    def is_involution(self) -> bool:
        return all(
            v is None or self.image[v] == i for i, v in enumerate(self.image)
        )

    def inverse(self) -> PartialPermutation:
        inv: list[int | None] = [None] * self.n
        for i, v in enumerate(self.image):
            if v is not None:
                inv[v] = i
        return PartialPermutation(tuple(inv))

    def rank_control(self) -> RankControl:
        """Corner ranks of the pattern matrix.

        For a partial permutation the rank of a corner is just the number
        of 1s inside it, so the grid is a 2-d prefix count.

        >>> PartialPermutation.identity(3).rank_control().grid
        ((1, 1, 1), (1, 2, 2), (1, 2, 3))
        """
        n = self.n
        grid = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.image):
            if v is not None:
                grid[i][v] = 1
        for i in range(n):
            for j in range(n):
                grid[i][j] += (
                    (grid[i - 1][j] if i else 0)
                    + (grid[i][j - 1] if j else 0)
                    - (grid[i - 1][j - 1] if i and j else 0)
                )
        return RankControl.from_grid(grid)

    def __str__(self) -> str:
        return "[" + " ".join(
            "." if v is None else str(v + 1) for v in self.image
        ) + "]"


class PartialInvolution(PartialPermutation):
    """Partial permutation whose matrix is symmetric."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_involution():
            raise ValueError("pattern matrix is not symmetric")

    @classmethod
    def from_involution(cls, sigma: PermOneLine) -> PartialInvolution:
        return cls(tuple(sigma))


class PermStats(NamedTuple):
    inv: int
    exc: int
    fix: int


def permutation_stats(sigma) -> PermStats:
    """Inversions, excedances and fixed points of a total permutation.

    >>> permutation_stats((2, 3, 0, 1))
    PermStats(inv=4, exc=2, fix=0)
    """
    sigma = tuple(sigma)
    m = len(sigma)
    if sorted(sigma) != list(range(m)):
        raise ValueError("not a permutation")
    inv = sum(
        1 for i in range(m) for j in range(i + 1, m) if sigma[i] > sigma[j]
    )
    exc = sum(1 for i, v in enumerate(sigma) if v > i)
    fix = sum(1 for i, v in enumerate(sigma) if v == i)
    return PermStats(inv, exc, fix)


@dataclass(frozen=True)
class InvolutionDecomposition:
    """A partial involution split into its invertible core and zero rows.

    ``core`` is the total involution left after deleting the zero rows and
    columns; ``zero_rows`` are the deleted positions (0-based, increasing).
    """

    core: PermOneLine
    zero_rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.core) + len(self.zero_rows)

    def to_pattern(self) -> PartialInvolution:
        n = self.n
        kept = [i for i in range(n) if i not in set(self.zero_rows)]
        image: list[int | None] = [None] * n
        for pos, i in enumerate(kept):
            image[i] = kept[self.core[pos]]
        return PartialInvolution(tuple(image))


def decompose(pi: PartialInvolution) -> InvolutionDecomposition:
    """Split off the zero rows (= zero columns, by symmetry).

    >>> rows = [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0],
    ...         [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0]]
    >>> d = decompose(PartialInvolution.from_matrix(rows))
    >>> d.core, d.zero_rows
    ((2, 3, 0, 1), (2, 5))
    """
    if not pi.is_involution():
        raise ValueError("pattern matrix is not symmetric")
    zero_rows = tuple(i for i, v in enumerate(pi.image) if v is None)
    kept = [i for i, v in enumerate(pi.image) if v is not None]
    pos = {i: k for k, i in enumerate(kept)}
    core = tuple(pos[pi.image[i]] for i in kept)
    return InvolutionDecomposition(core, zero_rows)


def enumerate_partial_permutations(n: int) -> list[PartialPermutation]:
    """All partial permutations of size n, sorted row-major lexicographically
    on their 0-1 matrices (so ids are stable across runs).

    >>> [len(enumerate_partial_permutations(n)) for n in (1, 2, 3)]
    [2, 7, 34]
    """
    if not 1 <= n <= 6:
        raise ValueError("n out of supported range 1..6")
    out: list[PartialPermutation] = []

    def fill(i: int, image: list[int | None], used: set[int]) -> None:
        if i == n:
            out.append(PartialPermutation(tuple(image)))
            return
        image.append(None)
        fill(i + 1, image, used)
        image.pop()
        for j in range(n):
            if j not in used:
                image.append(j)
                used.add(j)
                fill(i + 1, image, used)
                used.remove(j)
                image.pop()

    fill(0, [], set())
    out.sort(key=PartialPermutation.flat)
    return out


def enumerate_partial_involutions(n: int) -> list[PartialInvolution]:
    """All partial involutions of size n in the same canonical order.

    Each position is either a zero row, a fixed point, or paired with a
    later position; the recursion visits every symmetric pattern once.

    >>> [len(enumerate_partial_involutions(n)) for n in (1, 2, 3, 4)]
    [2, 5, 14, 43]
    """
    if not 1 <= n <= 8:
        raise ValueError("n out of supported range 1..8")
    out: list[PartialInvolution] = []
    image: list[int | None] = [None] * n

    def fill(free: list[int]) -> None:
        if not free:
            out.append(PartialInvolution(tuple(image)))
            return
        i, rest = free[0], free[1:]
        image[i] = None
        fill(rest)
        image[i] = i
        fill(rest)
        image[i] = None
        for k, j in enumerate(rest):
            image[i], image[j] = j, i
            fill(rest[:k] + rest[k + 1 :])
            image[i] = image[j] = None

    fill(list(range(n)))
    out.sort(key=PartialInvolution.flat)
    return out


def involutions(n: int) -> list[PermOneLine]:
    """Total involutions of S_n in lexicographic one-line order."""
    found: list[PermOneLine] = []
    image: list[int | None] = [None] * n

    def fill(free: list[int]) -> None:
        if not free:
            found.append(tuple(image))  # type: ignore[arg-type]
            return
        i, rest = free[0], free[1:]
        image[i] = i
        fill(rest)
        image[i] = None
        for k, j in enumerate(rest):
            image[i], image[j] = j, i
            fill(rest[:k] + rest[k + 1 :])
            image[i] = image[j] = None

    fill(list(range(n)))
    found.sort()
    return found


def pattern_from_rank_control(r: RankControl) -> PartialPermutation:
    """Invert a rank-control grid back to its unique pattern matrix.

    Entry (i, j) of the pattern is the double difference
    r[i][j] - r[i-1][j] - r[i][j-1] + r[i-1][j-1] (zero outside the grid);
    grids that are not the profile of any partial permutation are rejected.
    Returns a :class:`PartialInvolution` when the grid is symmetric.
    """
    if r.nrows != r.ncols:
        raise ValueError("not a square rank-control grid")
    n = r.nrows
    g = r.grid
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = (
                g[i][j]
                - (g[i - 1][j] if i else 0)
                - (g[i][j - 1] if j else 0)
                + (g[i - 1][j - 1] if i and j else 0)
            )
            if v not in (0, 1):
                raise ValueError("not a partial-permutation rank-control")
            row.append(v)
        rows.append(row)
    cls = PartialInvolution if r.is_symmetric() else PartialPermutation
    try:
        return cls.from_matrix(rows)
    except ValueError as exc:
        raise ValueError("not a partial-permutation rank-control") from exc
