"""From arrays to k-uniform states of heterogeneous systems.

An r-row array with minimal distance >= k + 1 and strength k induces a
k-uniform state: the uniform superposition of its rows as product kets has
every k-party reduction maximally mixed.  All checks here are exact
rational arithmetic; no state vector is ever materialized.
"""

from oakit import emit_state, is_ame, reduced_density, render_ket, verify_k_uniform
from oakit.catalog import fixture_states, seed_array

states = fixture_states()

# The 24-term two-uniform state of one qutrit and nine qubits.
state = states["3^1x2^9"]
print(f"|phi> over 3^1 x 2^9: {state.terms} kets, amplitude {state.amplitude()}")
print("first terms:", render_ket(state)[:80], "...")
array = state.to_array()
print("two-uniform:", verify_k_uniform(array, 2).holds)

# Reductions are exact rational matrices; a two-party one is (1/6) I.
rho = reduced_density(array, (0, 1))
print("rho_{0,1} diagonal:", [str(rho.entries[i][i]) for i in range(3)],
      "trace:", rho.trace())

# The 64-term three-uniform state of five ququarts and two qubits.
state45 = states["4^5x2^2"]
print(f"\n|phi> over 4^5 x 2^2: {state45.terms} kets,",
      "three-uniform:", verify_k_uniform(state45.to_array(), 3).holds)

# A three-party absolutely maximally entangled state with unequal levels:
# every 1-party reduction of the 6-run seed is maximally mixed.
seed = seed_array("moa-6-6x3x2")
print(f"\nAME seed rows: {seed.row_tuples()}")
print("AME in C^6 x C^3 x C^2:", is_ame(seed))
print(render_ket(emit_state(seed)))
