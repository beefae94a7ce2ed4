# Generalized polynomials: coefficients interleaved with variables, canonical zero tests.
from gpilab import GenPoly, additive_form_test, linearize, parse_expr, standard_algebra, symmetrized

M = standard_algebra("matrix", p=3, n=2)
X = GenPoly.variable(M)
e11, e12, e21 = M("e11"), M("e12"), M("e21")

# %% formal zero is not functional zero
G = e11 * X - X * e11
print("G =", G, "  formally zero?", G.is_zero_formal(), "  G(e12) =", G(e12))

F = standard_algebra("field", p=3, k=2)
Y = GenPoly.variable(F)
frob = Y**9 - Y
print("X^9 - X over GF(9): formally zero?", frob.is_zero_formal(),
      " vanishes everywhere?", all(frob(x).is_zero() for x in F.elements()))

# %% parsing and printing round trip
H = parse_expr("e11*X^2*e12 + 2*X", M)
print("parsed:", H, " degree", H.degree)
assert parse_expr(str(H), M) == H

# %% linearization
G2 = e12 * X * e21 * X
L = linearize(G2, 2)
print("linearize(e12 X e21 X) =", L)
print("matches the symmetric closed form:", L == symmetrized(G2))
print("third linearization vanishes:", linearize(G2, 3).is_zero_formal())

# %% which polynomials are sums a X b?
for text in ["e11*X*e22 + e12*X", "X^2", "X + 1"]:
    form = additive_form_test(parse_expr(text, M))
    print(f"{text:22s}", "additive" if form.additive else f"not additive ({form.obstruction})",
          [(str(a), str(b)) for a, b in form.pairs])
