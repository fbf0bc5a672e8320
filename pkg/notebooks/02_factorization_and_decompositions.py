# %% [markdown]
# # Factorization and decompositions
#
# Take the Demazure module of a translation by a dominant coweight, at level m,
# and restrict it to the finite-type algebra. Its character is the product of
# the characters attached to any splitting of the coweight into dominant
# pieces. The decomposition into irreducibles also has a closed form when the
# coweight is fundamental.

# %%
from affdemazure.branching import decompose
from affdemazure.theorems import (restricted_character, theorem2_expected, verify_thm1,
                                  verify_thm1a, verify_thm2)

report = verify_thm1("C2", 1, [(1, 0), (0, 1)])
print(report.to_json(timing=False))

# %% [markdown]
# Each factor can be split into irreducibles on its own.

# %%
for cw in [(1, 0), (0, 1)]:
    dec = decompose(restricted_character("C2", cw, 1))
    print(cw, dec.to_json_obj())

# %% [markdown]
# The predicted multiset comes straight from enumerating compositions. The
# engine's decomposition must match it exactly.

# %%
for algebra, i in [("B3", 2), ("G2", 2), ("D4", 2)]:
    expected = theorem2_expected(algebra, i, 2)
    print(algebra, i, expected.as_counter(), verify_thm2(algebra, i, 2).status)

# %% [markdown]
# A mixed highest weight `m Lambda_0 + s Lambda_i` with a minuscule node `i`
# factors with a front factor of `V(m omega_i^*)`. The alternative reading with
# `s` in place of `m` fails as soon as the two differ.

# %%
for reading in ("derived", "stated"):
    r = verify_thm1a("A1", 0, 1, 1, reading=reading)
    print(reading, r.status, r.lhs, r.rhs)
