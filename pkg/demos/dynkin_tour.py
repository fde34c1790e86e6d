"""Coxeter polynomials and periods of the Dynkin and extended Dynkin quivers."""
from coxeterlab import algebras as alg
from coxeterlab import coxeter as cx

for name in ["A4", "D5", "D7", "E6", "E7", "E8"]:
    m = cx.coxeter_matrix(alg.from_hereditary_quiver(alg.dynkin_quiver(name)))
    print(f"{name:4} {str(m.factorization):28} period {cx.periodicity(m).period}")

for name in ["D4", "E6", "E7", "E8"]:
    a = alg.from_hereditary_quiver(alg.extended_dynkin_quiver(name))
    m = cx.coxeter_matrix(a)
    h = cx.homological_form(a)
    print(f"{name}~ {str(m.factorization):28} form {h.classification}, radical rank {h.radical_rank}")
