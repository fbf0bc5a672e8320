# %% [markdown]
# # Truncated limits and twisted algebras
#
# Repeating the word of `s_theta s_0` N times and then applying `w_0` multiplies
# the character by the N-th power of a fixed finite module W. The sequence of
# dimensions therefore grows geometrically with ratio `dim W`.

# %%
from affdemazure import build_cartan
from affdemazure.theorems import (special_vertex_identity, translation_lattice,
                                  verify_limit, verify_twisted_decomposition,
                                  verify_twisted_thm, verify_wmodule, wmodule_char)

print("dim W =", wmodule_char("C2", 1).mass())
for N in range(3):
    r = verify_limit("C2", 1, (1, 0), N)
    print(N, r.status, r.lhs["dim"])

# %% [markdown]
# W contains the trivial module exactly once.

# %%
print(verify_wmodule("B3", 2).to_json(timing=False))

# %% [markdown]
# For twisted algebras the basepoint is a special vertex `k`. The product
# `s_k s_{theta_k}` acts trivially on level-0 weights. Translations then run
# over an integer lattice spanned by a single Weyl orbit.

# %%
for label in ("A2^2", "D3^2", "D4^3", "E6^2"):
    cd = build_cartan(label)
    print(label, special_vertex_identity(label, 0).status, translation_lattice(cd, 0))

# %%
print(verify_twisted_thm("D3^2", 0, 1, [(1, 0), (0, 2)]).status)
for label, i, l in [("A2^2", 1, 2), ("D4^3", 1, 1), ("A5^2", 3, 1)]:
    r = verify_twisted_decomposition(label, i, l)
    print(label, i, l, r.status, "flagged" if r.flagged else "")
