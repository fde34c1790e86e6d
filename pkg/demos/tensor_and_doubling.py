"""Spectra under tensor products and repetitive doubling.

The Coxeter eigenvalues of A (x) B are the products -lambda*mu, so the
polynomial is chi_A (x) chi_B (x) (T+1).  Doubling multiplies in Phi_6.
"""
from coxeterlab import algebras as alg
from coxeterlab import coxeter as cx
from coxeterlab.polyengine import T, cyclotomic, cyclotomic_factorize, tensor_product

a2 = alg.from_hereditary_quiver(alg.dynkin_quiver("A2"))
a3 = alg.from_hereditary_quiver(alg.dynkin_quiver("A3"))
for x, y, label in [(a2, a2, "A2 x A2"), (a3, a2, "A3 x A2")]:
    chi = cx.coxeter_polynomial(alg.tensor(x, y))
    naive = tensor_product(cx.coxeter_polynomial(x), cx.coxeter_polynomial(y))
    print(label, cyclotomic_factorize(chi), "| chi(x)chi:", cyclotomic_factorize(naive),
          "| with (T+1):", cyclotomic_factorize(tensor_product(naive, T + 1)))

for m in (2, 3, 4, 6, 12):
    print(f"Phi_6 (x) Phi_{m} =", cyclotomic_factorize(tensor_product(cyclotomic(6), cyclotomic(m))))

d = alg.double_repetitive(a3)
print("double of A3:", cyclotomic_factorize(cx.coxeter_polynomial(d)))
