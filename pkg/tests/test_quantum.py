"""States, exact reductions, and uniformity verdicts."""

from fractions import Fraction

import numpy as np
import pytest

from oakit.arrays import MixedArray, min_distance, verify_strength
from oakit.constructions import bush_oa, trivial_moa, two_uniform_3m2n
from oakit.errors import ParameterError
from oakit.quantum import (
    emit_state,
    is_ame,
    reduced_density,
    render_ket,
    verify_k_uniform,
)

from oracles import naive_k_uniform, naive_reduced_density


@pytest.fixture(scope="module")
def state_array():
    arr, _ = two_uniform_3m2n(1, 9)
    return arr


class TestEmitState:
    def test_one_ket_per_row_in_order(self, state_array):
        state = emit_state(state_array)
        assert state.terms == 24
        assert state.kets == tuple(state_array.row_tuples())
        assert state.amplitude() == "1/sqrt(24)"

    def test_single_row(self):
        arr = MixedArray.from_rows((2, 3), [[1, 2]])
        state = emit_state(arr)
        assert state.kets == ((1, 2),)
        assert render_ket(state) == "|1 2⟩"

    def test_row_permutation_same_multiset(self, state_array):
        perm = np.random.default_rng(7).permutation(state_array.runs)
        other = MixedArray(state_array.levels, state_array.cells[perm])
        assert sorted(emit_state(other).kets) == sorted(emit_state(state_array).kets)

    def test_duplicate_flag(self):
        arr = MixedArray.from_rows((2,), [[0], [0]])
        assert emit_state(arr).has_duplicate_kets

    def test_ket_rendering_joins_terms(self):
        state = emit_state(trivial_moa((2, 2)))
        assert render_ket(state) == "|0 0⟩ + |0 1⟩ + |1 0⟩ + |1 1⟩"


class TestReducedDensity:
    def test_two_uniform_pair_is_maximally_mixed(self, state_array):
        rho = reduced_density(state_array, (0, 1))  # 3-level with a 2-level party
        assert rho.dimension == 6
        assert rho.is_maximally_mixed()
        assert rho.trace() == 1

    def test_hand_counted_two_row_example(self):
        arr = MixedArray.from_rows((2, 2), [[0, 0], [1, 0]])
        rho = reduced_density(arr, (0,))
        half = Fraction(1, 2)
        assert rho.entries == ((half, half), (half, half))

    def test_product_state_reduction_not_mixed(self):
        # the full factorial induces a product state: all entries are 1/2
        rho = reduced_density(trivial_moa((2, 2)), (0,))
        half = Fraction(1, 2)
        assert rho.entries == ((half, half), (half, half))
        assert not rho.is_maximally_mixed()
        assert rho.trace() == 1 and rho.is_symmetric()

    def test_matches_naive_oracle(self, state_array):
        for subset in [(0,), (3, 7), (1, 2, 9)]:
            rho = reduced_density(state_array, subset)
            naive = naive_reduced_density(
                state_array.row_tuples(), state_array.levels, subset
            )
            assert [list(row) for row in rho.entries] == naive

    def test_parameter_errors(self, state_array):
        with pytest.raises(ParameterError):
            reduced_density(state_array, ())
        with pytest.raises(ParameterError):
            reduced_density(state_array, tuple(range(state_array.ncols)))
        with pytest.raises(ParameterError):
            reduced_density(state_array, (0, 0))


class TestUniformity:
    def test_fixture_is_two_uniform(self, state_array):
        report = verify_k_uniform(state_array, 2)
        assert report.holds and report.subsets_checked == 45

    def test_duplicated_row_breaks_it(self, state_array):
        cells = state_array.cells.copy()
        cells[1] = cells[0]
        corrupted = MixedArray(state_array.levels, cells)
        report = verify_k_uniform(corrupted, 2)
        assert not report.holds and report.witness_subset is not None

    def test_k_equal_n_minus_one_fails_on_factorial(self):
        arr = trivial_moa((2, 2, 2))
        assert not verify_k_uniform(arr, 2).holds

    def test_monotone_on_fixture(self, state_array):
        assert verify_k_uniform(state_array, 2).holds
        assert verify_k_uniform(state_array, 1).holds

    def test_equivalence_on_selected_arrays(self, state_array):
        arrays = [
            state_array,
            trivial_moa((2, 2, 2)),
            trivial_moa((3, 2)),
            bush_oa(3, 2),
            bush_oa(5, 3),
        ]
        rng = np.random.default_rng(11)
        for base in list(arrays):
            cells = base.cells.copy()
            i = rng.integers(base.runs)
            j = rng.integers(base.ncols)
            cells[i, j] = (cells[i, j] + 1) % base.levels[j]
            arrays.append(MixedArray(base.levels, cells))
        for arr in arrays:
            for k in (1, 2, 3):
                if k >= arr.ncols:
                    continue
                fast = verify_k_uniform(arr, k).holds
                slow = verify_strength(arr, k).holds and min_distance(arr) >= k + 1
                assert fast == slow

    def test_against_naive_density_oracle(self):
        arrays = [
            trivial_moa((2, 2)),
            bush_oa(3, 2),
            MixedArray.from_rows((2, 2, 2), [[0, 0, 0], [1, 1, 0], [0, 1, 1], [1, 0, 1]]),
        ]
        for arr in arrays:
            for k in (1, 2):
                if k >= arr.ncols:
                    continue
                assert (
                    verify_k_uniform(arr, k).holds
                    == naive_k_uniform(arr.row_tuples(), arr.levels, k)
                )

    def test_relabeling_preserves_verdicts(self, state_array):
        cells = state_array.cells.copy()
        cells[:, 0] = (cells[:, 0] + 1) % 3  # local symbol relabel on party 0
        relabeled = MixedArray(state_array.levels, cells)
        assert verify_k_uniform(relabeled, 2).holds

    def test_wide_complement_projection(self):
        # 72 binary parties: the complement of a singleton cannot be packed
        # into one 64-bit code, exercising the unique-rows grouping path
        from oakit.algebra import expand, hadamard01

        arr = expand(hadamard01(72).as_scheme(3))  # 144 x 72, distance 36
        assert verify_k_uniform(arr, 1).holds
        cells = arr.cells.copy()
        cells[3] = cells[2]
        assert not verify_k_uniform(MixedArray(arr.levels, cells), 1).holds


class TestAme:
    def test_searched_seed_is_ame(self):
        from oakit.catalog import seed_array

        seed = seed_array("moa-6-6x3x2")
        assert is_ame(seed)

    def test_five_party_two_uniform_is_ame(self):
        # strength 2, distance >= 3, five parties: uniform at floor(5/2) = 2
        arr = bush_oa(4, 2)  # OA(16, 5, 4, 2), distance 4
        assert is_ame(arr)

    def test_factorial_is_not_ame(self):
        assert not is_ame(trivial_moa((2, 2)))
