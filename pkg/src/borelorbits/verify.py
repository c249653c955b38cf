"""Independent verification oracles.

Nothing here reuses the combinatorial dimension formulas it is meant to
check: invariance fuzzing acts on actual matrices, the Bruhat oracle walks
covering relations in the symmetric group, and dimension verification
counts points of orbit closures over prime fields and reads the growth
degree off an exact polynomial interpolation.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dimension import (
    ambient_dim,
    antisym_representative,
    dim_antisymmetric,
    dim_nonsymmetric,
    dim_symmetric,
    signed_pattern_rows,
)
from .fields import FieldSpec, Matrix, borel_random, congruence_transform, _is_prime
from .patterns import (
    PartialInvolution,
    PermOneLine,
    pattern_from_rank_control,
    permutation_stats,
)

__all__ = [
    "FuzzFailure",
    "FuzzReport",
    "invariance_fuzz",
    "lu_invariance_fuzz",
    "bruhat_oracle",
    "symmetric_canonicalize",
    "rank_control_class_counts",
    "closure_point_count",
    "PointCountReport",
    "dimension_fit",
]

MAX_ENUMERATION = 60_000_000  # matrices per (variant, q) counting pass


# ----------------------------------------------------------------------
# randomized invariance checks


@dataclass(frozen=True)
class FuzzFailure:
    trial: int
    seed: int
    prime: int
    pattern: tuple[tuple[int, ...], ...]

    def describe(self) -> str:
        rows = ";".join(" ".join(str(x) for x in row) for row in self.pattern)
        return f"seed={self.seed} trial={self.trial} pattern=[{rows}] prime={self.prime}"


@dataclass(frozen=True)
class FuzzReport:
    prime: int
    trials: int
    seed: int
    failures: tuple[FuzzFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _trial_seed(seed: int, trial: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + trial) % 2**63


def invariance_fuzz(
    pi: PartialInvolution,
    prime: int,
    trials: int,
    seed: int,
    transform: str = "borel",
) -> FuzzReport:
    """Check that random congruence transforms preserve the rank-control.

    With ``transform="borel"`` the sampled matrices are invertible
    upper-triangular and every trial must preserve the grid.  With
    ``transform="general"`` they are invertible but deliberately not
    upper-triangular, a negative control expected to produce failures.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if transform not in ("borel", "general"):
        raise ValueError(f"unknown transform {transform!r}")
    field = FieldSpec.prime(prime)
    s = pi.to_matrix(field)
    expected = pi.rank_control()
    pattern = tuple(tuple(row) for row in pi.matrix_rows())
    failures = []
    for t in range(trials):
        tseed = _trial_seed(seed, t)
        if transform == "borel":
            moved = congruence_transform(borel_random(pi.n, field, tseed), s)
        else:
            g = _general_invertible(pi.n, field, tseed)
            moved = g.transpose() @ s @ g
        if moved.rank_control() != expected:
            failures.append(FuzzFailure(t, seed, prime, pattern))
    return FuzzReport(prime, trials, seed, tuple(failures))


def _general_invertible(n: int, field: FieldSpec, seed: int) -> Matrix:
    """Invertible matrix with at least one nonzero entry below the diagonal."""
    p = field.modulus
    rng = random.Random(seed)
    while True:
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if n > 1 and all(rows[i][j] == 0 for i in range(n) for j in range(i)):
            continue
        m = Matrix.from_rows(rows, field)
        if m.rank() == n:
            return m


def lu_invariance_fuzz(n: int, prime: int, trials: int, seed: int) -> FuzzReport:
    """Check that l @ x @ b preserves the rank-control of an arbitrary x."""
    if trials < 1:
        raise ValueError("trials must be positive")
    field = FieldSpec.prime(prime)
    p = field.modulus
    failures = []
    for t in range(trials):
        tseed = _trial_seed(seed, t)
        rng = random.Random(tseed)
        x = Matrix.from_rows(
            [[rng.randrange(p) for _ in range(n)] for _ in range(n)], field
        )
        lower = borel_random(n, field, rng.getrandbits(62)).transpose()
        upper = borel_random(n, field, rng.getrandbits(62))
        if (lower @ x @ upper).rank_control() != x.rank_control():
            pattern = tuple(tuple(row) for row in x.to_rows())
            failures.append(FuzzFailure(t, seed, prime, pattern))
    return FuzzReport(prime, trials, seed, tuple(failures))


# ----------------------------------------------------------------------
# Bruhat order oracle on the symmetric group


def bruhat_oracle(n: int) -> frozenset[tuple[PermOneLine, PermOneLine]]:
    """The full Bruhat order on S_n, including reflexive pairs.

    Built with no reference to rank-control grids: covers multiply by a
    transposition and raise the inversion count by exactly 1; the order is
    the reflexive-transitive closure of the covers.
    """
    if not 1 <= n <= 5:
        raise ValueError("n out of supported range 1..5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    length = [permutation_stats(p).inv for p in perms]
    succ: dict[int, list[int]] = {i: [] for i in range(len(perms))}
    for i, p in enumerate(perms):
        for a in range(n):
            for b in range(a + 1, n):
                q = list(p)
                q[a], q[b] = q[b], q[a]
                j = index[tuple(q)]
                if length[j] == length[i] + 1:
                    succ[i].append(j)
    memo: dict[int, int] = {}

    def above(i: int) -> int:
        if i not in memo:
            mask = 1 << i
            for j in succ[i]:
                mask |= above(j)
            memo[i] = mask
        return memo[i]

    return frozenset(
        (perms[i], perms[j])
        for i in range(len(perms))
        for j in range(len(perms))
        if above(i) >> j & 1
    )


# ----------------------------------------------------------------------
# canonical forms


def symmetric_canonicalize(s: Matrix) -> PartialInvolution:
    """The partial involution indexing the congruence orbit of s.

    Computed by inverting the rank-control grid of s, which both sides of
    the congruence action share; works over the rationals and any prime
    field without ever extracting square roots.
    """
    if not s.is_symmetric():
        raise ValueError("matrix is not symmetric")
    pattern = pattern_from_rank_control(s.rank_control())
    if not isinstance(pattern, PartialInvolution):
        raise ValueError("rank-control of a symmetric matrix was not symmetric")
    return pattern


# ----------------------------------------------------------------------
# point counting over prime fields


def _free_slots(n: int, variant: str) -> list[tuple[int, int]]:
    if variant == "symmetric":
        return [(i, j) for i in range(n) for j in range(i, n)]
    if variant == "nonsymmetric":
        return [(i, j) for i in range(n) for j in range(n)]
    if variant == "antisymmetric":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    raise ValueError(f"unknown variant {variant!r}")


def _minor_nonzero_masks(entries, n: int, q: int):
    """Nonzero masks of every square minor, keyed by (rows, cols)."""
    dets: dict[tuple, np.ndarray] = {}

    def det(rows: tuple, cols: tuple) -> np.ndarray:
        key = (rows, cols)
        if key not in dets:
            if len(rows) == 1:
                d = entries[(rows[0], cols[0])]
            else:
                head, rest = rows[0], rows[1:]
                d = None
                for t, c in enumerate(cols):
                    sub = det(rest, cols[:t] + cols[t + 1 :])
                    term = entries[(head, c)] * sub % q
                    if d is None:
                        d = term if t % 2 == 0 else (-term) % q
                    elif t % 2 == 0:
                        d = (d + term) % q
                    else:
                        d = (d - term) % q
            dets[key] = d
        return dets[key]

    masks = {}
    for t in range(1, n + 1):
        for rows in itertools.combinations(range(n), t):
            for cols in itertools.combinations(range(n), t):
                masks[(rows, cols)] = det(rows, cols) != 0
    return masks


def _chunk_rank_keys(entries, n: int, q: int, size: int) -> np.ndarray:
    """Mixed-radix key (base n+1) of the rank-control grid per matrix."""
    masks = _minor_nonzero_masks(entries, n, q)
    base = n + 1
    keys = np.zeros(size, dtype=np.int64)
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            rank = np.zeros(size, dtype=np.int64)
            for t in range(1, min(k, l) + 1):
                exists = np.zeros(size, dtype=bool)
                for rows in itertools.combinations(range(k), t):
                    for cols in itertools.combinations(range(l), t):
                        exists |= masks[(rows, cols)]
                rank = np.where(exists, t, rank)
            keys += rank * base ** ((k - 1) * n + (l - 1))
    return keys


def rank_control_class_counts(
    n: int, variant: str, q: int
) -> dict[tuple[tuple[int, ...], ...], int]:
    """Number of matrices over GF(q) with each rank-control grid.

    Enumerates every matrix of the variant (free entries: upper triangle
    with diagonal / all / strict upper triangle) in vectorized chunks and
    tallies the grid of corner ranks, computed from minor nonvanishing.
    """
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    if variant == "antisymmetric" and q == 2:
        raise ValueError("antisymmetric counting requires an odd prime")
    slots = _free_slots(n, variant)
    d = len(slots)
    total = q**d
    if total > MAX_ENUMERATION:
        raise ValueError(
            f"infeasible enumeration: {q}^{d} matrices exceeds {MAX_ENUMERATION}"
        )
    base = n + 1
    counts = np.zeros(base ** (n * n), dtype=np.int64)
    weights = [q ** (d - 1 - t) for t in range(d)]
    chunk = 1 << 19
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        size = stop - start
        zero = np.zeros(size, dtype=np.int64)
        entries: dict[tuple[int, int], np.ndarray] = {}
        for t, (i, j) in enumerate(slots):
            digit = idx // weights[t] % q
            entries[(i, j)] = digit
            if variant == "symmetric" and i != j:
                entries[(j, i)] = digit
            elif variant == "antisymmetric":
                entries[(j, i)] = (q - digit) % q
        if variant == "antisymmetric":
            for i in range(n):
                entries[(i, i)] = zero
        keys = _chunk_rank_keys(entries, n, q, size)
        counts += np.bincount(keys, minlength=len(counts))
    result: dict[tuple[tuple[int, ...], ...], int] = {}
    for key in np.nonzero(counts)[0]:
        digits = []
        rem = int(key)
        for _ in range(n * n):
            digits.append(rem % base)
            rem //= base
        grid = tuple(
            tuple(digits[k * n + l] for l in range(n)) for k in range(n)
        )
        result[grid] = int(counts[key])
    return result


@lru_cache(maxsize=128)
def _class_counts_cached(n: int, variant: str, q: int):
    return rank_control_class_counts(n, variant, q)


def _pattern_rc_grid(pattern, variant: str) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Rank-control grid and size of a pattern, per variant."""
    if variant in ("symmetric", "nonsymmetric"):
        if variant == "symmetric" and not pattern.is_involution():
            raise ValueError("symmetric variant needs a partial involution")
        return pattern.rank_control().grid, pattern.n
    sigma = tuple(pattern)
    rc = antisym_representative(sigma).rank_control()
    return rc.grid, len(sigma)


def closure_point_count(pattern, variant: str, q: int) -> int:
    """Exact number of GF(q) points of the orbit closure of a pattern.

    The closure consists of all matrices of the variant whose rank-control
    grid is entrywise at most that of the pattern, so the count aggregates
    the per-grid class counts below it.
    """
    grid, n = _pattern_rc_grid(pattern, variant)
    flat = tuple(x for row in grid for x in row)
    classes = _class_counts_cached(n, variant, q)
    return sum(
        c
        for g, c in classes.items()
        if all(x <= y for x, y in zip((x for row in g for x in row), flat))
    )


# ----------------------------------------------------------------------
# dimension verification by polynomial growth


@dataclass(frozen=True)
class PointCountReport:
    pattern: tuple[tuple[int, ...], ...]
    variant: str
    primes: tuple[int, ...]
    counts: tuple[int, ...]
    interp_degree: int
    witness_ok: bool
    holdout_prime: int
    holdout_count: int
    holdout_predicted: Fraction
    predicted_dim: int
    ratio_ok: bool

    @property
    def fitted_degree(self) -> int | str:
        return self.interp_degree if self.witness_ok else "non-polynomial"

    def to_json(self) -> str:
        return json.dumps(
            {
                "pattern": [list(row) for row in self.pattern],
                "variant": self.variant,
                "primes": list(self.primes),
                "counts": list(self.counts),
                "fitted_degree": self.fitted_degree,
                "predicted_dim": self.predicted_dim,
                "holdout_prime": self.holdout_prime,
                "holdout_count": self.holdout_count,
                "holdout_predicted": str(self.holdout_predicted),
                "witness_ok": self.witness_ok,
                "ratio_ok": self.ratio_ok,
            },
            separators=(",", ":"),
        )


def _newton_coefficients(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Exact interpolating polynomial coefficients, lowest degree first."""
    k = len(xs)
    dd = [Fraction(y) for y in ys]
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        for j in range(k - 1, 0, -1):
            coeffs[j] = coeffs[j - 1] - coeffs[j] * xs[i]
        coeffs[0] = dd[i] - coeffs[0] * xs[i]
    return coeffs


def _poly_eval(coeffs: list[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _predicted_dim(pattern, variant: str) -> int:
    if variant == "symmetric":
        return dim_symmetric(pattern).dim
    if variant == "nonsymmetric":
        return dim_nonsymmetric(pattern).dim
    return dim_antisymmetric(tuple(pattern)).dim


def dimension_fit(pattern, variant: str, primes) -> PointCountReport:
    """Estimate the closure dimension from point-count growth.

    Counts at the first ambient+1 primes pin down an exact interpolating
    polynomial in q; its degree is the fitted dimension.  The last prime
    is held out: an exact prediction there witnesses polynomial growth.
    A coarse ratio test against the expected growth (q2/q1)^dim between
    the last two primes is reported as the fallback diagnostic.
    """
    primes = list(primes)
    if sorted(set(primes)) != primes:
        raise ValueError("primes must be strictly increasing")
    grid, n = _pattern_rc_grid(pattern, variant)
    amb = ambient_dim(variant, n)
    if len(primes) < amb + 2:
        raise ValueError(f"need at least {amb + 2} primes, got {len(primes)}")
    counts = [closure_point_count(pattern, variant, q) for q in primes]
    for q, c in zip(primes, counts):
        if c > q**amb:
            raise ValueError("count exceeds the ambient space")
    coeffs = _newton_coefficients(primes[: amb + 1], counts[: amb + 1])
    degree = max((i for i, c in enumerate(coeffs) if c != 0), default=0)
    hold_q, hold_c = primes[-1], counts[-1]
    predicted = _poly_eval(coeffs, hold_q)
    witness_ok = predicted == hold_c
    dim = _predicted_dim(pattern, variant)
    expected_ratio = Fraction(primes[-1], primes[-2]) ** dim
    ratio = Fraction(counts[-1], counts[-2])
    ratio_ok = Fraction(1, 2) <= ratio / expected_ratio <= 2
    if variant == "antisymmetric":
        rows = tuple(tuple(r) for r in signed_pattern_rows(tuple(pattern)))
    else:
        rows = tuple(tuple(r) for r in pattern.matrix_rows())
    return PointCountReport(
        pattern=rows,
        variant=variant,
        primes=tuple(primes),
        counts=tuple(counts),
        interp_degree=degree,
        witness_ok=witness_ok,
        holdout_prime=hold_q,
        holdout_count=hold_c,
        holdout_predicted=predicted,
        predicted_dim=dim,
        ratio_ok=ratio_ok,
    )
