# Solving f(x) = x^n g(x^-1) for additive f, g on a finite algebra.
from gpilab import (AdditiveMap, power_template, solve, standard_algebra, theorem2_filter,
                    units_additively_generate)

# %% small fields: solutions appear exactly when p - 1 divides n - 2
for p in (3, 5, 7):
    F = standard_algebra("field", p=p)
    dims = {n: solve(power_template(F, n)).dimension for n in range(1, 13)}
    print(f"GF({p})", dims)

# %% (id, frob) on GF(9) with n = 3 + 9
F9 = standard_algebra("field", p=3, k=2)
space = solve(power_template(F9, 12))
print("GF(9), n=12: dimension", space.dimension,
      " contains (id, frob):", space.contains([AdditiveMap.identity(F9), AdditiveMap.frobenius(F9)]))

# %% the scaling argument and additive generation by units
M = standard_algebra("matrix", p=3, n=2)
print("units span M2(F3):", units_additively_generate(M))
print("scaling filter for p=3, n=3:", theorem2_filter(3, 3).to_json())
print("M2(F3), n=3: dimension", solve(power_template(M, 3)).dimension)

# %% n = 2: right multiplications solve it on M2(F5)
M5 = standard_algebra("matrix", p=5, n=2)
space = solve(power_template(M5, 2))
right = [AdditiveMap.left_right(M5, M5.one, q) for q in M5.basis_elements()]
print("M2(F5), n=2: dimension", space.dimension, " x -> xq pairs inside:", all(space.contains([T, T]) for T in right))
