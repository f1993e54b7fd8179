"""Canonical backtracking search: soundness, completeness, determinism."""

from itertools import product

import numpy as np
import pytest

from oakit.algebra import ds_linear, expand
from oakit.arrays import MixedArray, min_distance, verify_strength
from oakit.errors import ParameterError
from oakit.search import (
    NonexistenceResult,
    SearchResult,
    SearchSpec,
    exhaustive_nonexistence,
    search_moa,
    search_partition,
    search_scheme,
)

from oracles import naive_min_distance, naive_strength


class TestSearchMoa:
    def test_finds_the_12_run_seed(self):
        result = search_moa(SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=1))
        assert result.found
        arr = result.array
        assert verify_strength(arr, 2).holds and min_distance(arr) >= 1

    def test_finds_the_ame_seed(self):
        result = search_moa(SearchSpec(6, (6, 3, 2), 1, min_distance=2))
        assert result.found and min_distance(result.array) >= 2

    def test_divisibility_is_infeasible_not_nonexistent(self):
        result = search_moa(SearchSpec(4, (2, 2, 2), 3))
        assert result.status == "infeasible"
        assert "divisible" in result.reason

    def test_determinism(self):
        spec = SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=1)
        a = search_moa(spec).array
        b = search_moa(spec).array
        assert a == b

    def test_canonical_form_of_results(self):
        arr = search_moa(SearchSpec(8, (2, 2, 2, 2), 2)).array
        assert not arr.cells[0].any()
        rows = arr.row_tuples()
        assert rows == sorted(rows)

    def test_budget_reported_distinctly(self):
        result = search_moa(SearchSpec(18, (2, 3, 3, 3, 3), 2, min_distance=3, node_budget=50))
        assert result.status == "budget"


class TestCompleteness:
    """The canonical form must keep at least one member of every class."""

    @pytest.mark.parametrize(
        "runs,levels,k",
        [(4, (2, 2, 2), 2), (4, (2, 2, 2, 2), 2), (8, (2, 2, 2, 2), 3), (6, (3, 2), 2)],
    )
    def test_verdict_matches_brute_force(self, runs, levels, k):
        exists = self._brute_force_exists(runs, levels, k)
        result = search_moa(SearchSpec(runs, levels, k))
        assert result.found == exists
        if not exists:
            assert result.status in ("exhausted", "infeasible")

    @staticmethod
    def _brute_force_exists(runs, levels, k) -> bool:
        symbols = [range(d) for d in levels]
        all_rows = list(product(*symbols))
        # enumerate nondecreasing row sequences (row multisets cover all arrays)
        def rec(start, picked):
            if len(picked) == runs:
                return naive_strength(picked, levels, k)
            for idx in range(start, len(all_rows)):
                if rec(idx, picked + [all_rows[idx]]):
                    return True
            return False

        return rec(0, [])


class TestSearchScheme:
    def test_small_scheme(self):
        scheme = search_scheme(6, 3, 3, 2)
        assert not isinstance(scheme, SearchResult)
        assert verify_strength(expand(scheme), 2).holds

    def test_infeasible_when_rows_do_not_divide(self):
        result = search_scheme(9, 4, 2, 2)
        assert isinstance(result, SearchResult) and result.status == "infeasible"

    def test_determinism(self):
        a = search_scheme(12, 4, 2, 3)
        b = search_scheme(12, 4, 2, 3)
        assert not isinstance(a, SearchResult)
        assert np.array_equal(a.cells, b.cells)


class TestSearchPartition:
    def test_recovers_canonical_scheme_partition(self):
        scheme = ds_linear(3, 1)
        parent = expand(scheme)
        partition = search_partition(parent, 3)
        assert partition is not None
        assert partition.blocks == ((0, 1, 2), (3, 4, 5), (6, 7, 8))

    def test_oa_9_3_has_three_blocks(self):
        from oakit.constructions import bush_oa

        arr = bush_oa(3, 2, columns=3)
        partition = search_partition(arr, 3)
        assert partition is not None and partition.block_count == 3

    def test_divisibility_error(self):
        arr = MixedArray.from_rows((2,), [[0], [1]] * 3)
        with pytest.raises(ParameterError):
            search_partition(arr, 4)


class TestNonexistence:
    def test_existing_seed_is_a_counterexample(self):
        spec = SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=1, node_budget=10_000_000)
        verdict = exhaustive_nonexistence(spec)
        assert verdict.status == "counterexample"
        assert min_distance(verdict.counterexample) >= 1

    def test_impossible_pattern_proved_by_prefilter(self):
        spec = SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=3, node_budget=1000)
        verdict = exhaustive_nonexistence(spec)
        assert verdict.status == "proved"

    def test_budget_exhaustion_is_inconclusive(self):
        spec = SearchSpec(18, (2, 3, 3, 3, 3), 2, min_distance=3, node_budget=100)
        verdict = exhaustive_nonexistence(spec)
        assert verdict.status == "inconclusive"

    def test_requires_budget(self):
        with pytest.raises(ParameterError):
            exhaustive_nonexistence(SearchSpec(6, (2, 3), 2))

    def test_proved_nonexistence_md2_on_12_runs(self):
        # the strongest distance floor the 12-run 3^1 2^4 profile cannot meet
        spec = SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=2, node_budget=10_000_000)
        verdict = exhaustive_nonexistence(spec)
        assert verdict.status == "proved"


class TestOracleAgreement:
    def test_found_arrays_pass_independent_oracles(self):
        for spec in [
            SearchSpec(8, (4, 2, 2), 2),
            SearchSpec(9, (3, 3, 3), 2),
            SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=1),
        ]:
            result = search_moa(spec)
            assert result.found
            rows = result.array.row_tuples()
            assert naive_strength(rows, spec.levels, spec.strength)
            if spec.min_distance:
                assert naive_min_distance(rows, len(spec.levels)) >= spec.min_distance
