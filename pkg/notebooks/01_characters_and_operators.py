# %% [markdown]
# # Characters and Demazure operators
#
# Weights are integer vectors in the fundamental-weight basis, one coordinate
# per node of the Dynkin diagram. Node 0 is the affine node. Everything is
# taken modulo the null root, so a level-0 weight has a unique representative.

# %%
import numpy as np

from affdemazure import build_cartan
from affdemazure.charring import monomial
from affdemazure.demazure import apply_simple, demazure_character
from affdemazure.weylgroup import peel_reduced_word, translation_element

a1 = build_cartan("A1^1")
np.array(a1.gcm)

# %% [markdown]
# The operator for node `i` acts on a single exponential by looking at the
# `i`-th coordinate `c`. A nonnegative `c` gives a root string of length `c + 1`.
# `c = -1` gives zero, and anything smaller gives a negated interior string.

# %%
for c in (2, -1, -3):
    x = apply_simple(monomial(a1, (0, c)), 1)
    print(c, x.as_dict())

# %% [markdown]
# A translation by a dominant coweight becomes a reduced word together with a
# diagram automorphism. The automorphism acts first, then the letters act
# from right to left.

# %%
for cw in [(1,), (2,), (3,)]:
    print(cw, peel_reduced_word(translation_element(a1, cw)).to_json())

# %% [markdown]
# Applying the word to the level-1 vacuum weight gives a Demazure character.
# Dropping the affine coordinate turns it into a finite character.

# %%
x = demazure_character(a1, (2,), (1, 0))
level, fin = x.project_to_finite()
print(x.as_dict())
print(level, fin.as_dict())

# %% [markdown]
# Coefficients are Python integers, so they never overflow. Here is a
# larger case in C2, summarized by total dimension and support size.

# %%
c2 = build_cartan("C2^1")
big = demazure_character(c2, (2, 1), (3, 0, 0))
print(big.mass(), len(big))
