"""Orbit-closure dimensions from diagonal equalities of rank-control grids.

For a pattern with rank-control r (padded with a virtual zero row, and for
the full-square count also a virtual zero column), the codimension of its
orbit closure is the number of positions where r[i][j] equals its upper-left
diagonal neighbour r[i-1][j-1]:

* symmetric variant: count over i <= j, dimension n(n+1)/2 - count;
* nonsymmetric variant: count over all (i, j), dimension n^2 - count;
* antisymmetric variant: count over i < j, dimension n(n-1)/2 - count.

The symmetric count also has a closed form through the invertible core:
(exc + inv)/2 of the core involution plus, for each zero row, its position
counted from the bottom.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fields import RATIONALS, FieldSpec, Matrix
from .patterns import (
    PartialInvolution,
    PartialPermutation,
    PermOneLine,
    decompose,
    permutation_stats,
)

__all__ = [
    "DimensionReport",
    "ambient_dim",
    "d_count",
    "dim_symmetric",
    "incitti_d",
    "involution_rank",
    "e_count",
    "dim_nonsymmetric",
    "a_count",
    "signed_pattern_rows",
    "sigma_from_signed_rows",
    "antisym_representative",
    "dim_antisymmetric",
]

VARIANTS = ("symmetric", "nonsymmetric", "antisymmetric")


def ambient_dim(variant: str, n: int) -> int:
    if variant == "symmetric":
        return n * (n + 1) // 2
    if variant == "nonsymmetric":
        return n * n
    if variant == "antisymmetric":
        return n * (n - 1) // 2
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class DimensionReport:
    variant: str
    stat: int
    ambient_dim: int
    dim: int

    def __post_init__(self) -> None:
        if self.dim != self.ambient_dim - self.stat:
            raise ValueError("inconsistent dimension report")

    def to_json(self) -> str:
        return json.dumps(
            {
                "variant": self.variant,
                "stat": self.stat,
                "ambient_dim": self.ambient_dim,
                "dim": self.dim,
            },
            separators=(",", ":"),
        )


def _diagonal_equalities(grid, positions) -> int:
    """Count (i, j) in positions (1-based) with r[i][j] == r[i-1][j-1],
    reading entries outside the grid as 0."""
    count = 0
    for i, j in positions:
        r = grid[i - 1][j - 1]
        prev = grid[i - 2][j - 2] if i >= 2 and j >= 2 else 0
        if r == prev:
            count += 1
    return count


def d_count(pi: PartialInvolution) -> int:
    """Upper-triangle diagonal equalities (i <= j) of the rank-control.

    >>> d_count(PartialInvolution.identity(3))
    0
    >>> d_count(PartialInvolution((1, 0, 2)))
    1
    """
    n = pi.n
    grid = pi.rank_control().grid
    return _diagonal_equalities(
        grid, ((i, j) for i in range(1, n + 1) for j in range(i, n + 1))
    )


def dim_symmetric(pi: PartialInvolution) -> DimensionReport:
    """Dimension of the congruence orbit closure of a symmetric pattern."""
    stat = d_count(pi)
    amb = ambient_dim("symmetric", pi.n)
    return DimensionReport("symmetric", stat, amb, amb - stat)


def incitti_d(pi: PartialInvolution) -> int:
    """The same codimension via the core decomposition: (exc + inv)/2 of
    the core involution plus the bottom-up labels of the zero rows.

    >>> incitti_d(PartialInvolution.zero(3))
    6
    """
    dec = decompose(pi)
    stats = permutation_stats(dec.core)
    if (stats.exc + stats.inv) % 2 != 0:
        raise ValueError("core statistic exc + inv is odd")
    n = pi.n
    return (stats.exc + stats.inv) // 2 + sum(n - z for z in dec.zero_rows)


def involution_rank(sigma: PermOneLine) -> int:
    """(exc + inv)/2 of a total involution; its Bruhat poset rank."""
    sigma = tuple(sigma)
    if any(sigma[v] != i for i, v in enumerate(sigma)):
        raise ValueError("not an involution")
    stats = permutation_stats(sigma)
    return (stats.exc + stats.inv) // 2


def e_count(pi: PartialPermutation) -> int:
    """Diagonal equalities over the whole square (virtual zero row and
    column), the codimension statistic for two-sided triangular orbits."""
    n = pi.n
    grid = pi.rank_control().grid
    return _diagonal_equalities(
        grid, ((i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    )


def dim_nonsymmetric(pi: PartialPermutation) -> DimensionReport:
    stat = e_count(pi)
    amb = ambient_dim("nonsymmetric", pi.n)
    return DimensionReport("nonsymmetric", stat, amb, amb - stat)


def signed_pattern_rows(sigma: PermOneLine) -> list[list[int]]:
    """Alternating pattern of an involution: +1 at (i, sigma(i)) above the
    diagonal, -1 below, zero rows at fixed points."""
    sigma = tuple(sigma)
    if any(sigma[v] != i for i, v in enumerate(sigma)):
        raise ValueError("not an involution")
    n = len(sigma)
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(sigma):
        if v > i:
            rows[i][v] = 1
            rows[v][i] = -1
    return rows


def sigma_from_signed_rows(rows) -> PermOneLine:
    """Recover the involution from its alternating pattern (fixed points
    are the zero rows); rejects anything else."""
    rows = [list(r) for r in rows]
    n = len(rows)
    sigma = list(range(n))
    for i in range(n):
        if len(rows[i]) != n:
            raise ValueError("not a square pattern")
        if rows[i][i] != 0:
            raise ValueError("diagonal entries must be zero")
        for j in range(i + 1, n):
            v = rows[i][j]
            if v not in (-1, 0, 1) or rows[j][i] != -v:
                raise ValueError("not an alternating sign pattern")
            if v == 1:
                if sigma[i] != i or sigma[j] != j:
                    raise ValueError("more than one entry in a row or column")
                sigma[i], sigma[j] = j, i
            elif v == -1:
                raise ValueError("positive entries must sit above the diagonal")
    return tuple(sigma)


def antisym_representative(sigma: PermOneLine, field: FieldSpec = RATIONALS) -> Matrix:
    """Alternating matrix representative of an involution's orbit."""
    return Matrix.from_rows(signed_pattern_rows(sigma), field)


def a_count(sigma: PermOneLine) -> int:
    """Strict-upper-triangle diagonal equalities of the representative's
    rank-control (virtual zero row)."""
    m = antisym_representative(sigma)
    n = m.rows
    grid = m.rank_control().grid
    return _diagonal_equalities(
        grid, ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    )


def dim_antisymmetric(sigma: PermOneLine) -> DimensionReport:
    stat = a_count(sigma)
    amb = ambient_dim("antisymmetric", len(tuple(sigma)))
    return DimensionReport("antisymmetric", stat, amb, amb - stat)
