# Every linear map on a matrix algebra is x -> sum a_i x b_i; on a field it is not.
import numpy as np

from gpilab import AdditiveMap, DecompositionError, elementary_decomposition, recompose, standard_algebra

M = standard_algebra("matrix", p=3, n=2)

# %% transpose
transpose = AdditiveMap.from_images(M, ["e11", "e21", "e12", "e22"])
pairs = elementary_decomposition(M, transpose)
print("transpose =", " + ".join(f"({a}) x ({b})" for a, b in pairs))
assert recompose(M, pairs) == transpose

# %% random maps
rng = np.random.default_rng(1)
sizes = []
for _ in range(20):
    T = AdditiveMap(M, rng.integers(0, 3, size=(4, 4)))
    sizes.append(len(elementary_decomposition(M, T)))
print("terms needed for 20 random maps:", sizes)

# %% Frobenius on GF(9) is additive but not GF(9)-linear
F = standard_algebra("field", p=3, k=2)
try:
    elementary_decomposition(F, AdditiveMap.frobenius(F))
except DecompositionError as exc:
    print("GF(9) Frobenius:", exc)
