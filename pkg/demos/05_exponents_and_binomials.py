# Binomials mod p, the polynomial P, and the split of exponents into two cases.
from gpilab import binom_mod_p, classify_case, find_P_nonroot, lemma3_data, poly_P, poly_Q, standard_algebra

# %% Lucas' theorem
print("C(14, 2) mod 3 =", binom_mod_p(14, 2, 3), "  C(7, 4) mod 3 =", binom_mod_p(7, 4, 3))
print("k = 7, p = 3:", lemma3_data(7, 3))

# %% P(X) = (1+X)^n + (1-X)^n - 2X^n - 2
for n, p in [(14, 3), (6, 5), (8, 3), (10, 3)]:
    case = classify_case(n, p)
    print(f"n={n:3d} p={p}: {case.to_json()}  P = {poly_P(n, p)}")

# %% P can vanish as a function on a small field while being nonzero
print("non-root of P(14, 3) in GF(9):", find_P_nonroot(14, 3, 9), "  in GF(27):", find_P_nonroot(14, 3, 27))

# %% Q evaluated on matrix units
M = standard_algebra("matrix", p=3, n=2)
for l in (0, 1):
    print(f"Q(p=3, l={l}, m=1)(e11, e12) =", poly_Q(3, l, 1, M)(M("e11"), M("e12")))
