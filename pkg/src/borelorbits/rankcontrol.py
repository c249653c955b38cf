"""Rank-control matrices and the orders built on their componentwise comparison.

A rank-control matrix assigns to every (k, l) the rank of the upper-left
k-by-l submatrix of some matrix.  Componentwise comparison of these grids
induces the containment order on orbit closures (direct order) and the
Bruhat order on partial permutations (inverse order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .fields import Matrix
    from .patterns import PartialInvolution, PartialPermutation

__all__ = [
    "RankControl",
    "leq_R",
    "bruhat_leq",
    "orbit_leq",
    "closure_contains",
]


@dataclass(frozen=True)
class RankControl:
    """Grid of upper-left submatrix ranks.

    ``grid[i][j]`` (0-based) is the rank of the (i+1)-by-(j+1) upper-left
    submatrix.  Construction rejects grids that no matrix can produce:
    entries must be bounded by min(row, column) index, and appending one
    row or one column may raise the rank by at most 1.
    """

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        grid = self.grid
        for i, row in enumerate(grid):
            if len(row) != len(grid[0]):
                raise ValueError("ragged rank-control grid")
            for j, r in enumerate(row):
                if not isinstance(r, int):
                    raise ValueError("rank-control entries must be integers")
                if r < 0 or r > min(i + 1, j + 1):
                    raise ValueError(
                        f"rank-control entry {r} at ({i + 1},{j + 1}) out of range"
                    )
                above = grid[i - 1][j] if i > 0 else 0
                left = row[j - 1] if j > 0 else 0
                if r - above not in (0, 1) or r - left not in (0, 1):
                    raise ValueError(
                        f"rank-control step at ({i + 1},{j + 1}) not in {{0,1}}"
                    )

    @classmethod
    def from_grid(cls, rows) -> RankControl:
        return cls(tuple(tuple(int(r) for r in row) for row in rows))

    @property
    def nrows(self) -> int:
        return len(self.grid)

    @property
    def ncols(self) -> int:
        return len(self.grid[0]) if self.grid else 0

    def is_symmetric(self) -> bool:
        n = self.nrows
        if n != self.ncols:
            return False
        return all(
            self.grid[i][j] == self.grid[j][i] for i in range(n) for j in range(i)
        )

    def leq(self, other: RankControl) -> bool:
        """Componentwise comparison; raises on shape mismatch."""
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("rank-control shape mismatch")
        return all(
            a <= b for ra, rb in zip(self.grid, other.grid) for a, b in zip(ra, rb)
        )

    def __le__(self, other: RankControl) -> bool:
        return self.leq(other)

    def __ge__(self, other: RankControl) -> bool:
        return other.leq(self)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(r) for r in row) for row in self.grid)


def leq_R(p: RankControl, q: RankControl) -> bool:
    """True iff every entry of p is at most the matching entry of q."""
    return p.leq(q)


def bruhat_leq(pi: PartialPermutation, sigma: PartialPermutation) -> bool:
    """Bruhat order on (partial) permutations.

    pi is below sigma exactly when the rank-control of pi dominates the
    rank-control of sigma entrywise, i.e. the Bruhat order is the inverse
    of the componentwise rank-control order.
    """
    if pi.n != sigma.n:
        raise ValueError("size mismatch")
    return sigma.rank_control().leq(pi.rank_control())


def orbit_leq(pi: PartialInvolution, sigma: PartialInvolution) -> bool:
    """Closure-containment order on congruence Borel orbits.

    The orbit of pi lies in the closure of the orbit of sigma exactly when
    the rank-control of pi is entrywise at most that of sigma.
    """
    if pi.n != sigma.n:
        raise ValueError("size mismatch")
    return pi.rank_control().leq(sigma.rank_control())


def closure_contains(pi: PartialInvolution, s: Matrix) -> bool:
    """Membership of the symmetric matrix s in the orbit closure of pi."""
    if not s.is_symmetric():
        raise ValueError("matrix is not symmetric")
    if s.rows != pi.n:
        raise ValueError("size mismatch")
    return s.rank_control().leq(pi.rank_control())
