# Finite algebras from structure constants: fields, matrix rings, units.
import numpy as np

from gpilab import center, centralizer, enumerate_units, standard_algebra

# %% GF(9) = F_3[t]/(t^2 + 1)
F = standard_algebra("field", p=3, k=2)
t = F("t")
print(F, "basis", F.basis)
print("t*t =", t * t, "  t^-1 =", t.inverse(), "  t^4 =", t**4)

# every nonzero element has order dividing 8
orders = [min(e for e in range(1, 9) if x**e == 1) for x in enumerate_units(F)]
print("unit orders", sorted(orders))

# %% 2x2 matrices over F_3 as a 4-dimensional F_3-algebra
M = standard_algebra("matrix", p=3, n=2)
e11, e12 = M("e11"), M("e12")
print("e11*e12 =", e11 * e12, "  e12*e11 =", e12 * e11)
print("(e11 + e12)^5 =", (e11 + e12) ** 5)
print("units of M2(F3):", len(enumerate_units(M)))

# %% centralizers and center
print("C(e11) =", [str(x) for x in centralizer(M, [e11])])
print("Z(M2(F3)) =", [str(x) for x in center(M)])

# %% the structure tensor itself
T = M.mul_table
print("nonzero structure constants:", int(np.count_nonzero(T)), "of", T.size)
