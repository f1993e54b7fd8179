"""Backtracking search for seed arrays and bounded nonexistence checks.

The searcher works in a canonical form (all-zero first row, sorted rows,
sorted equal-level columns), so exhausting it proves nonexistence.  Verdicts
are exactly what the run established: found, proved, or inconclusive.
"""

from oakit import (
    SearchSpec,
    exhaustive_nonexistence,
    five_column_feasibility,
    min_distance,
    search_moa,
)

# The 12-run mixed seed: found in well under a second.
result = search_moa(SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=1))
print("12-run seed:", result.status, f"after {result.nodes} nodes")
print(result.array.cells.tolist())

# The same profile with distance floor 2 is exhaustively impossible.
result = search_moa(SearchSpec(12, (3, 2, 2, 2, 2), 2, min_distance=2))
print("\ndistance floor 2:", result.status, f"({result.nodes} nodes)")

# Counting verdicts for five-column irredundant strength-2 arrays.
for levels in [(3, 2, 2, 2, 2), (2, 2, 3, 3, 3), (2, 3, 5, 7, 11), (2, 3, 3, 3, 3)]:
    verdict = five_column_feasibility(levels)
    print(f"{levels}: {verdict.status} -- {verdict.reason}")

# The 2^1 3^4 pattern at 18 runs is not ruled out by counting; a bounded
# search stays honest about what it established.
verdict = exhaustive_nonexistence(
    SearchSpec(18, (2, 3, 3, 3, 3), 2, min_distance=3, node_budget=2_000_000)
)
print("\n18-run 2^1 3^4 irredundant search:", verdict.status, "-", verdict.reason)

# A spec whose member exists comes back as a counterexample immediately.
verdict = exhaustive_nonexistence(
    SearchSpec(6, (6, 3, 2), 1, min_distance=2, node_budget=1_000_000)
)
print("6-run AME seed nonexistence attempt:", verdict.status,
      "->", min_distance(verdict.counterexample), "minimal distance")
