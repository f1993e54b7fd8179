"""Difference schemes, Hadamard matrices, and scheme juxtaposition.

A difference scheme D(r, c, d) is accepted operationally: its expansion
D (+) (d) must be an orthogonal array of the declared strength.  Square
schemes drive the juxtaposition [A (+) 0_d, D (+) (d)] whose minimal
distance is exactly min(r, MD(A) + r - r/d).
"""

from oakit import (
    delete_columns,
    ds_linear,
    ds_poly3,
    expand,
    hadamard01,
    is_difference_scheme,
    juxtapose_scheme,
    min_distance,
    verify_strength,
)
from oakit.catalog import seed_array

# Hadamard matrices in 0/1 form, normalized: all row pairs at distance n/2.
h12 = hadamard01(12)  # quadratic-residue construction at q = 11
print("order-12 Hadamard, first rows:")
for row in h12.cells[:3]:
    print("  ", "".join(map(str, row)))

# As a binary difference scheme it even has strength 3.
print("strength-3 scheme predicate:", is_difference_scheme(h12.cells, 2, 3).holds)

# The linear scheme over GF(3): the multiplication table of Z_3.
d333 = ds_linear(3, 1)
print("\nD(3,3,3) =", d333.cells.tolist())
oa = expand(d333)
print("expansion:", oa, "strength 2:", verify_strength(oa, 2).holds)
print("expansion distances are {r - r/d, r}:", min_distance(oa))

# Strength-3 schemes exist over every odd prime power via a*c + b*c^2.
scheme25 = ds_poly3(5)
print("\nstrength-3 scheme on 25 rows x 5 columns over GF(5):",
      is_difference_scheme(scheme25.cells, 5, 3, scheme25.group).holds)

# Juxtaposition: a 12-run strength-2 seed against the order-12 scheme gives
# a 24-run array on 17 columns whose minimal distance obeys the formula.
seed = seed_array("moa-12-3x2^4")
arr, cert = juxtapose_scheme(seed, h12.as_scheme())
print(f"\n[{seed.profile()} seed (+) 0_2, scheme (+) (2)] = {arr}")
print("predicted minimal distance:", cert.predicted_md, "measured:", min_distance(arr))

# Deleting trailing binary columns within the budget keeps irredundancy.
trimmed = delete_columns(arr, range(13, 17))
print("after deleting 4 columns:", trimmed, "MD:", min_distance(trimmed))
