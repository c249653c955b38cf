import itertools

import pytest

from borelorbits.dimension import antisym_representative
from borelorbits.fields import FieldSpec, Matrix, borel_random, congruence_transform
from borelorbits.patterns import (
    PartialInvolution,
    PartialPermutation,
    enumerate_partial_involutions,
    enumerate_partial_permutations,
    involutions,
)
from borelorbits.rankcontrol import bruhat_leq, orbit_leq
from borelorbits.verify import (
    bruhat_oracle,
    closure_point_count,
    dimension_fit,
    invariance_fuzz,
    lu_invariance_fuzz,
    rank_control_class_counts,
    symmetric_canonicalize,
)


def brute_closure_count(rc_target, variant, q, n):
    """Per-matrix reference count, independent of the vectorized pass."""
    field = FieldSpec.prime(q)
    count = 0
    if variant == "symmetric":
        slots = [(i, j) for i in range(n) for j in range(i, n)]
    elif variant == "nonsymmetric":
        slots = [(i, j) for i in range(n) for j in range(n)]
    else:
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for values in itertools.product(range(q), repeat=len(slots)):
        rows = [[0] * n for _ in range(n)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
            if variant == "symmetric" and i != j:
                rows[j][i] = v
            elif variant == "antisymmetric":
                rows[j][i] = (-v) % q
        m = Matrix.from_rows(rows, field)
        if m.rank_control().leq(rc_target):
            count += 1
    return count


class TestInvarianceFuzz:
    def test_identity_pattern_clean(self):
        report = invariance_fuzz(PartialInvolution.identity(2), 3, 100, seed=7)
        assert report.ok
        assert report.trials == 100

    def test_zero_pattern_trivial(self):
        assert invariance_fuzz(PartialInvolution.zero(3), 5, 50, seed=1).ok

    def test_negative_control_fails(self):
        pi = PartialInvolution((None, 1))
        report = invariance_fuzz(pi, 7, 50, seed=3, transform="general")
        assert len(report.failures) >= 1
        line = report.failures[0].describe()
        assert "seed=3" in line and "prime=7" in line

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            invariance_fuzz(PartialInvolution.identity(2), 3, 0, seed=0)
        with pytest.raises(ValueError):
            invariance_fuzz(PartialInvolution.identity(2), 3, 1, seed=0, transform="spin")

    def test_lu_fuzz_clean(self):
        assert lu_invariance_fuzz(4, 7, 300, seed=11).ok
        assert lu_invariance_fuzz(3, 2, 300, seed=12).ok


class TestBruhatOracle:
    def test_n2(self):
        o = bruhat_oracle(2)
        assert ((0, 1), (1, 0)) in o
        assert ((1, 0), (0, 1)) not in o

    def test_n3_pair_count(self):
        # 13 strict comparable pairs plus 6 reflexive ones
        assert len(bruhat_oracle(3)) == 19

    def test_extremes(self):
        o = bruhat_oracle(3)
        perms = list(itertools.permutations(range(3)))
        for p in perms:
            assert ((0, 1, 2), p) in o
            assert (p, (2, 1, 0)) in o

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_agrees_with_rank_control_order(self, n):
        o = bruhat_oracle(n)
        perms = sorted(itertools.permutations(range(n)))
        pats = {p: PartialPermutation.from_permutation(p) for p in perms}
        for a in perms:
            for b in perms:
                assert bruhat_leq(pats[a], pats[b]) == ((a, b) in o)


class TestCanonicalize:
    def test_rational_diag(self):
        m = Matrix.from_rows([[4, 0], [0, 9]])
        assert symmetric_canonicalize(m) == PartialInvolution.identity(2)

    def test_rational_offdiag(self):
        m = Matrix.from_rows([[0, 5], [5, 0]])
        assert symmetric_canonicalize(m) == PartialInvolution((1, 0))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            symmetric_canonicalize(Matrix.from_rows([[0, 1], [0, 0]]))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_retraction(self, n):
        for pi in enumerate_partial_involutions(n):
            assert symmetric_canonicalize(pi.to_matrix()) == pi

    @pytest.mark.parametrize("p", [5, 7, 1009])
    def test_orbit_invariance(self, p):
        field = FieldSpec.prime(p)
        pats = enumerate_partial_involutions(3)
        for trial in range(120):
            pi = pats[trial % len(pats)]
            b = borel_random(3, field, trial)
            s = congruence_transform(b, pi.to_matrix(field))
            assert symmetric_canonicalize(s) == pi


class TestPointCounts:
    def test_zero_pattern_single_point(self):
        for variant, pat in [
            ("symmetric", PartialInvolution.zero(2)),
            ("nonsymmetric", PartialPermutation.zero(2)),
            ("antisymmetric", (0, 1)),
        ]:
            assert closure_point_count(pat, variant, 3) == 1

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_identity_closure_is_everything(self, q):
        n = 3
        assert closure_point_count(
            PartialInvolution.identity(n), "symmetric", q
        ) == q ** (n * (n + 1) // 2)

    def test_swap_n2(self):
        assert closure_point_count(PartialInvolution((1, 0)), "symmetric", 3) == 9

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_symmetric_n2_matches_brute_force(self, q):
        for pi in enumerate_partial_involutions(2):
            assert closure_point_count(pi, "symmetric", q) == brute_closure_count(
                pi.rank_control(), "symmetric", q, 2
            )

    def test_symmetric_n3_matches_brute_force_gf2(self):
        for pi in enumerate_partial_involutions(3):
            assert closure_point_count(pi, "symmetric", 2) == brute_closure_count(
                pi.rank_control(), "symmetric", 2, 3
            )

    def test_nonsymmetric_n2_matches_brute_force(self):
        for pp in enumerate_partial_permutations(2):
            assert closure_point_count(pp, "nonsymmetric", 3) == brute_closure_count(
                pp.rank_control(), "nonsymmetric", 3, 2
            )

    def test_antisymmetric_n3_matches_brute_force(self):
        for sigma in involutions(3):
            rc = antisym_representative(sigma).rank_control()
            assert closure_point_count(sigma, "antisymmetric", 5) == brute_closure_count(
                rc, "antisymmetric", 5, 3
            )

    def test_class_counts_partition_space(self):
        classes = rank_control_class_counts(2, "symmetric", 5)
        assert sum(classes.values()) == 5**3

    def test_monotone_under_orbit_order(self):
        pats = enumerate_partial_involutions(3)
        for q in (2, 3):
            counts = {p: closure_point_count(p, "symmetric", q) for p in pats}
            for a in pats:
                for b in pats:
                    if orbit_leq(a, b):
                        assert counts[a] <= counts[b]

    def test_guards(self):
        with pytest.raises(ValueError):
            rank_control_class_counts(2, "symmetric", 4)  # not prime
        with pytest.raises(ValueError):
            rank_control_class_counts(3, "antisymmetric", 2)  # needs odd prime
        with pytest.raises(ValueError):
            closure_point_count(PartialInvolution.identity(3), "symmetric", 1031)


class TestDimensionFit:
    def test_zero_pattern_constant(self):
        rep = dimension_fit(PartialInvolution.zero(2), "symmetric", [2, 3, 5, 7, 11])
        assert rep.fitted_degree == 0
        assert rep.predicted_dim == 0
        assert rep.counts == (1, 1, 1, 1, 1)
        assert rep.witness_ok

    def test_identity_n2(self):
        rep = dimension_fit(PartialInvolution.identity(2), "symmetric", [2, 3, 5, 7, 11])
        assert rep.fitted_degree == 3
        assert rep.witness_ok
        assert rep.counts[0] == 8

    def test_nonsymmetric_n2_all_patterns(self):
        for pp in enumerate_partial_permutations(2):
            rep = dimension_fit(pp, "nonsymmetric", [2, 3, 5, 7, 11, 13])
            assert rep.witness_ok
            assert rep.fitted_degree == rep.predicted_dim

    def test_antisymmetric_n3_all_involutions(self):
        for sigma in involutions(3):
            rep = dimension_fit(sigma, "antisymmetric", [3, 5, 7, 11, 13])
            assert rep.witness_ok
            assert rep.fitted_degree == rep.predicted_dim

    def test_needs_enough_primes(self):
        with pytest.raises(ValueError):
            dimension_fit(PartialInvolution.identity(2), "symmetric", [2, 3, 5])

    def test_report_json(self):
        import json

        rep = dimension_fit(PartialInvolution.zero(2), "symmetric", [2, 3, 5, 7, 11])
        doc = json.loads(rep.to_json())
        assert doc["fitted_degree"] == 0
        assert doc["witness_ok"] is True
        assert doc["counts"] == [1, 1, 1, 1, 1]
