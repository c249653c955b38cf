"""The poset of congruence Borel orbits for one size and matrix variant.

Elements are patterns in a canonical (row-major lexicographic) order, the
order relation is componentwise comparison of rank-control grids, covers
are obtained by transitive reduction, and every element carries its
codimension statistic and orbit-closure dimension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import dimension as dimmod
from .dimension import VARIANTS, ambient_dim
from .patterns import (
    enumerate_partial_involutions,
    enumerate_partial_permutations,
    involutions,
)
from .rankcontrol import RankControl

__all__ = [
    "OrbitElement",
    "OrbitPoset",
    "GradedReport",
    "build_poset",
    "hasse_edges",
    "check_graded",
    "regular_subposet",
    "export",
    "poset_from_json",
]


@dataclass(frozen=True)
class OrbitElement:
    id: int
    pattern: tuple[tuple[int, ...], ...]
    rank_control: RankControl
    stat: int
    dim: int


@dataclass(frozen=True)
class OrbitPoset:
    n: int
    variant: str
    elements: tuple[OrbitElement, ...]
    leq: frozenset[tuple[int, int]]  # reflexive
    hasse: tuple[tuple[int, int], ...]  # covering pairs (lower, higher)

    def leq_ids(self, a: int, b: int) -> bool:
        return (a, b) in self.leq

    def dims(self) -> list[int]:
        return [e.dim for e in self.elements]

    def level_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for e in self.elements:
            sizes[e.dim] = sizes.get(e.dim, 0) + 1
        return sizes

    def minimal_ids(self) -> list[int]:
        lowers = {hi for _, hi in self.hasse}
        return [e.id for e in self.elements if e.id not in lowers]

    def maximal_ids(self) -> list[int]:
        uppers = {lo for lo, _ in self.hasse}
        return [e.id for e in self.elements if e.id not in uppers]

    def element_by_pattern(self, pattern) -> OrbitElement:
        key = tuple(tuple(row) for row in pattern)
        for e in self.elements:
            if e.pattern == key:
                return e
        raise KeyError(f"pattern not in poset: {key}")


def _patterns_and_stats(n: int, variant: str):
    if variant == "symmetric":
        pats = enumerate_partial_involutions(n)
        return [
            (tuple(tuple(r) for r in p.matrix_rows()), p.rank_control(), dimmod.d_count(p))
            for p in pats
        ]
    if variant == "nonsymmetric":
        pats = enumerate_partial_permutations(n)
        return [
            (tuple(tuple(r) for r in p.matrix_rows()), p.rank_control(), dimmod.e_count(p))
            for p in pats
        ]
    if variant == "antisymmetric":
        items = []
        for sigma in involutions(n):
            rows = tuple(tuple(r) for r in dimmod.signed_pattern_rows(sigma))
            rc = dimmod.antisym_representative(sigma).rank_control()
            items.append((rows, rc, dimmod.a_count(sigma)))
        items.sort(key=lambda item: item[0])
        return items
    raise ValueError(f"unknown variant {variant!r}")


def _transitive_reduction(n_el: int, strict: list[tuple[int, int]]):
    """Covers of a finite order via bitmask up/down sets."""
    up = [1 << i for i in range(n_el)]
    down = [1 << i for i in range(n_el)]
    for a, b in strict:
        up[a] |= 1 << b
        down[b] |= 1 << a
    covers = []
    for a, b in strict:
        between = up[a] & down[b]
        if between == (1 << a) | (1 << b):
            covers.append((a, b))
    covers.sort()
    return covers


@lru_cache(maxsize=None)
def build_poset(n: int, variant: str) -> OrbitPoset:
    """Build the full orbit poset for the given size and variant."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    limit = 5 if variant == "nonsymmetric" else 6
    if not 1 <= n <= limit:
        raise ValueError(f"n out of supported range 1..{limit} for {variant}")
    items = _patterns_and_stats(n, variant)
    amb = ambient_dim(variant, n)
    elements = tuple(
        OrbitElement(i, pat, rc, stat, amb - stat)
        for i, (pat, rc, stat) in enumerate(items)
    )
    flats = [tuple(x for row in e.rank_control.grid for x in row) for e in elements]
    pairs = set()
    strict = []
    for a, fa in enumerate(flats):
        for b, fb in enumerate(flats):
            if a == b or all(x <= y for x, y in zip(fa, fb)):
                pairs.add((a, b))
                if a != b:
                    strict.append((a, b))
    covers = _transitive_reduction(len(elements), strict)
    return OrbitPoset(n, variant, elements, frozenset(pairs), tuple(covers))


def hasse_edges(p: OrbitPoset) -> tuple[tuple[int, int], ...]:
    """Covering pairs (lower id, higher id); the transitive reduction of leq."""
    return p.hasse


@dataclass(frozen=True)
class GradedReport:
    ok: bool
    violations: tuple[tuple[int, int, int, int], ...]  # (lo, hi, lo_dim, hi_dim)

    def __str__(self) -> str:
        if self.ok:
            return "graded: all covers raise the dimension by exactly 1"
        lines = [
            f"cover {lo} -> {hi}: dim {dlo} -> {dhi}"
            for lo, hi, dlo, dhi in self.violations
        ]
        return "not graded:\n" + "\n".join(lines)


def check_graded(p: OrbitPoset) -> GradedReport:
    """Report every cover whose dimension step is not exactly 1."""
    bad = tuple(
        (lo, hi, p.elements[lo].dim, p.elements[hi].dim)
        for lo, hi in p.hasse
        if p.elements[hi].dim - p.elements[lo].dim != 1
    )
    return GradedReport(not bad, bad)


def regular_subposet(p: OrbitPoset) -> OrbitPoset:
    """Restriction of a symmetric poset to its invertible patterns.

    Invertible patterns are exactly those with full corner rank n; they
    form an interval, so covers restrict.  Reversing the restricted order
    gives the Bruhat poset of total involutions, whose rank function is
    the stat label (exc + inv)/2 carried by each element.
    """
    if p.variant != "symmetric":
        raise ValueError("regular subposet is defined for the symmetric variant")
    keep = [e.id for e in p.elements if e.rank_control.grid[-1][-1] == p.n]
    newid = {old: i for i, old in enumerate(keep)}
    elements = tuple(
        OrbitElement(
            newid[e.id], e.pattern, e.rank_control, e.stat, e.dim
        )
        for e in p.elements
        if e.id in newid
    )
    pairs = frozenset(
        (newid[a], newid[b]) for a, b in p.leq if a in newid and b in newid
    )
    strict = [(a, b) for a, b in pairs if a != b]
    covers = _transitive_reduction(len(elements), strict)
    return OrbitPoset(p.n, p.variant, elements, pairs, tuple(covers))


def _to_json(p: OrbitPoset, include_leq: bool = False) -> str:
    doc = {
        "n": p.n,
        "variant": p.variant,
        "elements": [
            {
                "id": e.id,
                "pattern": [list(row) for row in e.pattern],
                "rank_control": [list(row) for row in e.rank_control.grid],
                "stat": e.stat,
                "dim": e.dim,
            }
            for e in p.elements
        ],
    }
    if include_leq:
        doc["leq"] = sorted([a, b] for a, b in p.leq)
    doc["hasse"] = [list(edge) for edge in p.hasse]
    return json.dumps(doc, separators=(",", ":"))


def _to_dot(p: OrbitPoset) -> str:
    lines = [
        "digraph orbit_poset {",
        "  rankdir=BT;",
        '  node [shape=box fontname="monospace"];',
    ]
    for e in p.elements:
        rows = [" ".join(str(x) for x in row) for row in e.pattern]
        label = "\\n".join(rows + [f"dim {e.dim}"])
        lines.append(f'  n{e.id} [label="{label}"];')
    for lo, hi in p.hasse:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(p: OrbitPoset, format: str) -> str:
    """Deterministic serialization; "dot" or "json"."""
    if format == "json":
        return _to_json(p)
    if format == "dot":
        return _to_dot(p)
    raise ValueError(f"unknown export format {format!r}")


def poset_from_json(text: str) -> OrbitPoset:
    """Rebuild a poset from its JSON export.

    The full order is recovered as the reflexive-transitive closure of the
    stored covers (or taken verbatim when "leq" is present).
    """
    doc = json.loads(text)
    elements = tuple(
        OrbitElement(
            el["id"],
            tuple(tuple(row) for row in el["pattern"]),
            RankControl.from_grid(el["rank_control"]),
            el["stat"],
            el["dim"],
        )
        for el in doc["elements"]
    )
    hasse = tuple((a, b) for a, b in doc["hasse"])
    if "leq" in doc:
        pairs = frozenset((a, b) for a, b in doc["leq"])
    else:
        n_el = len(elements)
        succ: dict[int, list[int]] = {i: [] for i in range(n_el)}
        for lo, hi in hasse:
            succ[lo].append(hi)
        memo: dict[int, int] = {}

        def above(i: int) -> int:
            if i not in memo:
                mask = 1 << i
                for hi in succ[i]:
                    mask |= above(hi)
                memo[i] = mask
            return memo[i]

        pairs = frozenset(
            (i, j) for i in range(n_el) for j in range(n_el) if above(i) >> j & 1
        )
    return OrbitPoset(doc["n"], doc["variant"], elements, pairs, hasse)
