"""Walk through the wild star [2,3,7]: its Coxeter polynomial is Lehmer's polynomial."""
from coxeterlab import algebras as alg
from coxeterlab import coxeter as cx
from coxeterlab import spectral as sp


def main():
    a = alg.from_hereditary_quiver(alg.star_quiver([2, 3, 7]))
    m = cx.coxeter_matrix(a)
    print("vertices:", a.n)
    print("chi =", m.charpoly)
    print("factorization:", m.factorization)
    r = sp.measures(m)
    print(f"spectral radius {r.spectral_radius:.9f}, Mahler measure {r.mahler:.9f}")
    # the same star as an extended canonical algebra is periodic of order 42
    e = cx.coxeter_matrix(alg.extended_canonical([2, 3, 7]))
    print("extended canonical (2,3,7):", e.factorization, "period", cx.periodicity(e).period)


if __name__ == "__main__":
    main()
