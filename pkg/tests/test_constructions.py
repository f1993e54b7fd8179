"""Juxtapositions, replacement, polynomial arrays, families, feasibility."""

from itertools import combinations

import numpy as np
import pytest

from oakit.algebra import (
    column_vector,
    ds_linear,
    expand,
    hadamard01,
    juxtapose_scheme_raw,
    product_construction,
)
from oakit.arrays import (
    MixedArray,
    delete_columns,
    distance_spectrum,
    min_distance,
    select_columns,
    verify_strength,
)
from oakit.constructions import (
    ColumnReplacement,
    OrthogonalPartition,
    ReplacementPlan,
    bush_oa,
    bush_oa_even,
    expansive_replace,
    five_column_feasibility,
    juxtapose_partitions,
    juxtapose_scheme,
    k_uniform_product,
    partition_from_scheme,
    three_uniform_3m2n,
    trivial_moa,
    two_uniform_3m2n,
    two_uniform_dm2n,
    two_uniform_from_scheme,
    two_uniform_prime_power,
)
from oakit.errors import ConstructionError, ParameterError, VerificationError
from oakit.quantum import verify_k_uniform


class TestJuxtaposeScheme:
    def test_24x17_family_base(self, moa12, h12):
        arr, cert = juxtapose_scheme(moa12, h12.as_scheme())
        assert arr.runs == 24 and arr.ncols == 17
        assert arr.profile() == "3^1 2^16"
        assert verify_strength(arr, 2).holds
        assert min_distance(arr) == cert.predicted_md

    def test_predicted_distance_is_exact_on_pairs(self, moa12, h12):
        pairs = [
            (moa12, h12.as_scheme()),
            (trivial_moa((2, 2)), hadamard01(4).as_scheme()),
            (bush_oa(3, 2), ds_linear(3, 2)),
        ]
        for host, scheme in pairs:
            arr, cert = juxtapose_scheme(host, scheme)
            assert min_distance(arr) == cert.predicted_md == min(
                host.runs, min_distance(host) + host.runs - host.runs // scheme.order
            )

    def test_degenerate_host_rejected(self):
        host = MixedArray.from_rows((2,), [[0], [0]])  # strength 2 impossible
        with pytest.raises(ParameterError):
            juxtapose_scheme(host, hadamard01(2).as_scheme())

    def test_row_mismatch(self, h12):
        with pytest.raises(ParameterError):
            juxtapose_scheme(trivial_moa((2, 2)), h12.as_scheme())


class TestPartitions:
    def test_canonical_partition_of_small_scheme(self):
        partition = partition_from_scheme(ds_linear(3, 1))
        assert partition.block_count == 3
        assert partition.blocks[0] == (0, 1, 2)

    def test_searched_scheme_partition(self, scheme18):
        partition = partition_from_scheme(scheme18)
        assert partition.block_count == 18

    def test_invalid_partition_rejected(self):
        arr = trivial_moa((2, 2))
        with pytest.raises(VerificationError):
            OrthogonalPartition(arr, ((0, 1), (2, 3)))  # blocks not strength 1

    def test_unequal_blocks_rejected(self):
        arr = trivial_moa((2,))
        with pytest.raises(ParameterError):
            OrthogonalPartition(arr, ((0,), (1,), ()))


class TestJuxtaposePartitions:
    def test_u_equals_v_case(self, scheme18):
        a = expand(scheme18)
        pa = partition_from_scheme(scheme18)
        b = expand(scheme18)
        pb = partition_from_scheme(scheme18)
        out, cert = juxtapose_partitions(a, pa, b, pb)
        assert out.runs == 3 * 3 * 18 and out.ncols == 10
        assert cert.predicted_md == min(
            min_distance(a) + min_distance(b), 5, 5
        )
        assert min_distance(out) >= cert.predicted_md
        assert verify_strength(out, 3).holds

    def test_block_order_behaviour(self, scheme18):
        # reordering BOTH partitions by the same permutation is a row
        # permutation; reordering one side still keeps the claimed strength
        # and distance bound, even though the pairing of blocks changes
        a = expand(scheme18)
        pa = partition_from_scheme(scheme18)
        blocks = list(pa.blocks)
        blocks[0], blocks[1] = blocks[1], blocks[0]
        pa_swapped = OrthogonalPartition(a, tuple(blocks))
        out1, _ = juxtapose_partitions(a, pa, a, pa)
        out_two_sided, _ = juxtapose_partitions(a, pa_swapped, a, pa_swapped)
        assert sorted(map(tuple, out1.cells.tolist())) == sorted(
            map(tuple, out_two_sided.cells.tolist())
        )
        out_one_sided, cert = juxtapose_partitions(a, pa_swapped, a, pa)
        assert verify_strength(out_one_sided, 3).holds
        assert min_distance(out_one_sided) >= cert.predicted_md
        assert (
            distance_spectrum(out_one_sided).distances
            == distance_spectrum(out1).distances
        )

    def test_strength_preconditions_enforced(self):
        weak = expand(ds_linear(3, 1))  # strength 2 only
        partition = partition_from_scheme(ds_linear(3, 1))
        with pytest.raises(ParameterError):
            juxtapose_partitions(weak, partition, weak, partition)


class TestExpansiveReplace:
    def test_identity_replacement(self, moa12):
        plan = ReplacementPlan((ColumnReplacement(0, column_vector(3)),))
        out, _ = expansive_replace(moa12, plan, 2)
        assert out == moa12

    def test_table3_special_array(self, moa12):
        arr, cert = two_uniform_from_scheme(12, 12, 2, replacement=moa12, scheme_keep=4)
        assert arr.runs == 24 and arr.profile() == "3^1 2^8"
        assert cert.verified and cert.measured_md >= 3
        assert verify_k_uniform(arr, 2).holds

    def test_product_replacement_at_144_runs(self):
        host = product_construction(bush_oa(3, 2), bush_oa(4, 2, columns=4))
        plan = ReplacementPlan((ColumnReplacement(0, trivial_moa((4, 3))),))
        out, cert = expansive_replace(host, plan, 2)
        assert out.profile() == "12^3 4^1 3^1"
        assert verify_strength(out, 2).holds and min_distance(out) >= 3
        assert verify_k_uniform(out, 2).holds
        assert cert.predicted_md == 3  # certified via the distance conditions

    def test_strength_preserved_by_oracle(self, moa12):
        # replace the ternary column of the 12-run seed by a 3-row factorial
        rep = MixedArray.from_rows((3,), [[0], [1], [2]])
        plan = ReplacementPlan((ColumnReplacement(0, rep),))
        out, _ = expansive_replace(moa12, plan, 2)
        assert verify_strength(out, 2).holds

    def test_run_count_mismatch(self, moa12):
        with pytest.raises(ParameterError):
            expansive_replace(
                moa12, ReplacementPlan((ColumnReplacement(0, trivial_moa((2, 2))),)), 2
            )

    def test_empty_plan_rejected(self):
        with pytest.raises(ParameterError):
            ReplacementPlan(())

    def test_sub_column_selection(self):
        host = two_uniform_prime_power(2, 3)[0]  # 16 x 9 over 8^1 2^8
        rep = trivial_moa((2, 2, 2))
        plan = ReplacementPlan((ColumnReplacement(0, rep, keep=(0, 2)),))
        out, cert = expansive_replace(host, plan, 2)
        assert out.profile() == "2^10"
        assert verify_strength(out, 2).holds


class TestPolynomialArrays:
    def test_small_case(self):
        arr = bush_oa(3, 2)
        assert arr.runs == 9 and arr.ncols == 4
        assert verify_strength(arr, 2).holds and min_distance(arr) == 3

    def test_q7_k4(self):
        arr = bush_oa(7, 4)
        assert arr.runs == 2401 and arr.ncols == 8
        assert verify_strength(arr, 4).holds
        assert min_distance(arr) == 5

    def test_precondition(self):
        with pytest.raises(ParameterError):
            bush_oa(2, 2)  # q < 2k - 1
        with pytest.raises(ParameterError):
            bush_oa(6, 2)  # not a prime power

    @pytest.mark.parametrize(
        "q,k",
        [(q, k) for q in (2, 3, 4, 5, 7, 8, 9, 11) for k in (1, 2, 3, 4) if q >= 2 * k - 1],
    )
    def test_distance_is_mds(self, q, k):
        arr = bush_oa(q, k)
        assert min_distance(arr) == q + 2 - k
        assert verify_strength(arr, k).holds

    def test_even_extension(self):
        arr = bush_oa_even(4)
        assert arr.runs == 64 and arr.ncols == 6
        assert verify_strength(arr, 3).holds and min_distance(arr) == 4

    def test_even_extension_rejects_odd(self):
        with pytest.raises(ParameterError):
            bush_oa_even(5)


class TestTrivialMoa:
    def test_56_run_factorial(self):
        arr = trivial_moa((7, 4, 2))
        assert arr.runs == 56
        report = verify_strength(arr, 3)
        assert report.holds and report.index == 1

    def test_grouping(self):
        merged = trivial_moa((7, 4, 2), groups=[(0, 1), (2,)])
        assert merged.levels == (28, 2) and merged.runs == 56
        direct = trivial_moa((28, 2))
        assert merged == direct

    def test_single_column(self):
        assert trivial_moa((2,)) == column_vector(2)


class TestFeasibility:
    @pytest.mark.parametrize(
        "levels",
        [(3, 2, 2, 2, 2), (2, 2, 3, 3, 3), (5, 5, 5, 2, 3), (2, 3, 5, 7, 11)],
    )
    def test_impossible_patterns(self, levels):
        verdict = five_column_feasibility(levels)
        assert verdict.impossible

    def test_exception_clause(self):
        verdict = five_column_feasibility((2, 3, 3, 3, 3))
        assert not verdict.impossible

    def test_hypothesis_unmet(self):
        assert not five_column_feasibility((2, 2, 2, 2, 2)).impossible
        assert "hypothesis" in five_column_feasibility((2, 4, 4, 4, 4)).reason

    def test_wrong_arity(self):
        with pytest.raises(ParameterError):
            five_column_feasibility((2, 3, 5))


class TestFamilies:
    @pytest.mark.parametrize("n", [8, 9, 12, 16, 17, 20, 40])
    def test_two_uniform_3_2n_sweep(self, n):
        arr, cert = two_uniform_3m2n(1, n)
        assert arr.profile() == f"3^1 2^{n}"
        assert cert.verified and cert.measured_md >= 3
        assert verify_strength(arr, 2).holds

    def test_two_uniform_m2(self):
        arr, cert = two_uniform_3m2n(2, 21)
        assert arr.profile() == "3^2 2^21" and cert.measured_md >= 3

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            two_uniform_3m2n(1, 7)
        with pytest.raises(ParameterError):
            two_uniform_3m2n(4, 30)

    def test_d4_family(self):
        arr, cert = two_uniform_dm2n(4, 1, 7)
        assert arr.profile() == "4^1 2^7" and cert.measured_md >= 3
        arr, cert = two_uniform_dm2n(4, 1, 12)
        assert arr.profile() == "4^1 2^12" and cert.measured_md >= 3

    def test_three_uniform_small(self, thm3_full):
        arr, cert = thm3_full
        assert arr.runs == 216 and arr.profile() == "3^5 2^36"
        assert cert.verified and cert.measured_md >= 4

    def test_three_uniform_m4(self):
        arr, cert = three_uniform_3m2n(4, 22)
        assert arr.profile() == "3^4 2^22"
        assert cert.measured_md >= 4
        assert verify_k_uniform(arr, 3).holds

    def test_three_uniform_gap_value(self):
        # 37 falls between the order-36 and order-72 guarantees
        arr, cert = three_uniform_3m2n(5, 37)
        assert arr.profile() == "3^5 2^37"
        assert cert.measured_md >= 4

    def test_three_uniform_five_levels(self):
        from oakit.constructions import three_uniform_dm2n

        arr, cert = three_uniform_dm2n(5, 4, 54)
        assert arr.runs == 1000 and arr.profile() == "5^4 2^54"
        assert cert.verified and cert.measured_md >= 4

    def test_three_uniform_five_levels_range_errors(self):
        from oakit.constructions import three_uniform_dm2n

        with pytest.raises(ParameterError):
            three_uniform_dm2n(4, 4, 40)  # even
        with pytest.raises(ParameterError):
            three_uniform_dm2n(5, 3, 54)  # m below 4
        with pytest.raises(ParameterError):
            three_uniform_dm2n(5, 4, 50)  # below 2 d^2 + 4

    def test_three_uniform_range_errors(self):
        with pytest.raises(ParameterError):
            three_uniform_3m2n(3, 36)
        with pytest.raises(ParameterError):
            three_uniform_3m2n(5, 16)

    def test_product_family(self):
        arr, cert = k_uniform_product(2, (3, 4), plan=[(3, (4, 3))])
        assert arr.profile() == "12^3 4^1 3^1"
        assert cert.verified and cert.measured_md >= 3
        assert verify_k_uniform(arr, 2).holds

    def test_product_family_base_distance_exact(self):
        arr, cert = k_uniform_product(2, (3, 4))
        assert arr.levels == (12, 12, 12, 12)
        assert cert.measured_md == 3 == cert.predicted_md

    def test_product_family_rejects_small_factor(self):
        with pytest.raises(ParameterError):
            k_uniform_product(2, (2, 3))  # 2 < 2k - 1

    def test_scheme_family_8_runs(self):
        arr, cert = two_uniform_from_scheme(4, 4, 2)
        assert arr.runs == 8 and arr.profile() == "4^1 2^4"
        assert cert.measured_md == 3

    def test_scheme_family_replacement_profile(self):
        arr, _ = two_uniform_from_scheme(12, 12, 2, replacement=trivial_moa((6, 2)))
        assert arr.profile() == "6^1 2^13"

    def test_prime_power_family(self):
        arr, cert = two_uniform_prime_power(2, 3, replacement=trivial_moa((4, 2)))
        assert arr.profile() == "4^1 2^9" and cert.measured_md >= 3
        assert verify_k_uniform(arr, 2).holds


class TestDeletionGuarantee:
    def test_any_deletion_within_budget_keeps_irredundancy(self, moa12, h12):
        arr, _ = juxtapose_scheme(moa12, h12.as_scheme())
        budget = min_distance(arr) - 3  # = 4
        assert budget == 4
        two_level = [j for j, d in enumerate(arr.levels) if d == 2]
        rng = np.random.default_rng(3)
        for _ in range(60):  # random sampling of 4-subsets of binary columns
            drop = rng.choice(two_level, size=budget, replace=False)
            out = delete_columns(arr, drop.tolist())
            assert min_distance(out) >= 3
        for drop in combinations(two_level[:8], budget):  # exhaustive corner
            assert min_distance(delete_columns(arr, drop)) >= 3
