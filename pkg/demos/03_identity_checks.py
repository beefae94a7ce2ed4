# Checking identities exhaustively or by seeded sampling.
from gpilab import check_hua, is_gpi, standard_algebra
from gpilab.identities import hall_polynomial

# %% the commutator is not an identity of M2(F3)
M = standard_algebra("matrix", p=3, n=2)
v = is_gpi(hall_polynomial(M))
print("[[X,Y]^2, Z] on M2(F3):", v.holds, "after", v.checked, "substitutions")

# %% but it fails on 3x3 matrices; sampling finds a witness quickly
M3 = standard_algebra("matrix", p=2, n=3)
v = is_gpi(hall_polynomial(M3), "sampled", seed=0, trials=1000)
print("on M3(F2):", v.holds, "witness", [str(w) for w in v.witness])

# %% Hua's identity wherever all the inverses exist
for A in (standard_algebra("field", p=3, k=2), M):
    v = check_hua(A)
    print(A, "Hua holds:", v.holds, "on", v.checked, "admissible pairs")
