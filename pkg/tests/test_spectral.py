import cmath
import math
import random

import numpy as np
import pytest

import corpus
from coxeterlab import algebras as alg
from coxeterlab import coxeter as cx
from coxeterlab import spectral as sp
from coxeterlab.polyengine import IntPoly, T, cyclotomic, cyclotomic_factorize

LEHMER = IntPoly((1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1))


class TestNumericRoots:
    def test_phi3(self):
        zs = sp.numeric_roots(T ** 2 + T + 1)
        assert all(abs(abs(z) - 1) < 1e-12 for z in zs)
        assert sorted(round(cmath.phase(z), 9) for z in zs) == sorted(round(x, 9) for x in (2 * math.pi / 3, -2 * math.pi / 3))

    def test_lehmer(self):
        zs = sp.numeric_roots(LEHMER)
        outside = [z for z in zs if abs(z) > 1 + 1e-9]
        assert len(outside) == 1 and abs(outside[0].imag) < 1e-12
        assert abs(outside[0].real - 1.176281) < 1e-6

    def test_quadratic_formula(self):
        zs = sorted(z.real for z in sp.numeric_roots(T ** 2 - 3 * T + 1))
        assert zs == pytest.approx([(3 - 5 ** 0.5) / 2, (3 + 5 ** 0.5) / 2], abs=1e-12)

    def test_repeated_cyclotomic_roots_stay_on_circle(self):
        p = cyclotomic(1) ** 4 * cyclotomic(6) ** 3 * cyclotomic(12) ** 2
        zs = sp.numeric_roots(p)
        assert len(zs) == p.degree
        assert max(abs(abs(z) - 1) for z in zs) < 1e-12

    def test_residuals_below_tolerance(self):
        rng = random.Random(11)
        for _ in range(20):
            p = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 25))] + [1])
            if p.coeffs[0] == 0:
                continue
            zs = sp.numeric_roots(p, 1e-10)
            assert len(zs) == p.degree
            assert all(sp.backward_error(p, z) < 1e-10 for z in zs)

    def test_zero_polynomial(self):
        with pytest.raises(ValueError):
            sp.numeric_roots(IntPoly(()))

    def test_error_carries_iterate(self):
        err = sp.RootFindingError("x", [1j])
        assert err.best == [1j]


class TestMeasures:
    def test_e8_certified(self):
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.dynkin_quiver("E8"))))
        assert r.certified and (r.spectral_radius, r.mahler, r.energy) == (1.0, 1.0, 8.0)

    def test_single_vertex(self):
        r = sp.measures(cx.coxeter_matrix(alg.truncated_linear(1, 2)))
        assert (r.spectral_radius, r.mahler, r.energy) == (1.0, 1.0, 1.0)

    def test_wild_star_is_lehmer(self):
        m = cx.coxeter_matrix(alg.from_hereditary_quiver(alg.star_quiver([2, 3, 7])))
        assert m.factorization.residual == LEHMER
        r = sp.measures(m)
        assert not r.certified
        assert abs(r.mahler - 1.176280) < 1e-5

    def test_kronecker3(self):
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.kronecker_quiver(3))))
        assert r.spectral_radius == pytest.approx((7 + 45 ** 0.5) / 2, rel=1e-12)

    def test_frobenius_exact(self):
        m = cx.coxeter_matrix(alg.from_hereditary_quiver(alg.linear_quiver(2)))
        r = sp.measures(m)
        assert r.frobenius_squared == 3 and r.frobenius == math.sqrt(3)

    def test_numeric_agrees_with_certified_on_corpus(self):
        for _, a in corpus.full_corpus()[::3]:
            m = cx.coxeter_matrix(a)
            if not m.factorization.is_cyclotomic:
                continue
            zs = sp.numeric_roots(m.charpoly)
            assert max(abs(abs(z) - 1) for z in zs) < 1e-8
            assert sum(abs(z) for z in zs) == pytest.approx(a.n, abs=1e-8)

    def test_json_digits(self):
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.star_quiver([2, 3, 7]))))
        j = r.to_json()
        assert j["mahler"] == "1.17628081826"
        assert j["certified"] is False


class TestRootProperties:
    def test_product_and_conjugation(self):
        for _, a in corpus.full_corpus()[::4]:
            m = cx.coxeter_matrix(a)
            zs = sp.numeric_roots(m.charpoly)
            assert abs(abs(np.prod(zs)) - 1) < 1e-8
            for z in zs:
                assert min(abs(z.conjugate() - w) for w in zs) < 1e-7
                assert min(abs(1 / z - w) for w in zs) < 1e-7

    def test_energy_lower_bound(self):
        for _, a in corpus.full_corpus():
            r = sp.measures(cx.coxeter_matrix(a))
            assert r.energy >= a.n - 1e-8

    def test_mahler_multiplicative(self):
        rng = random.Random(5)
        for _ in range(15):
            f = IntPoly([rng.choice([-1, 1])] + [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))] + [1])
            g = IntPoly([rng.choice([-2, 1])] + [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))] + [1])
            assert sp.mahler_measure(f * g) == pytest.approx(sp.mahler_measure(f) * sp.mahler_measure(g), rel=1e-8)


class TestInequalityChain:
    def test_dynkin_eigen_norm(self):
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.dynkin_quiver("D6"))))
        c = sp.verify_inequality_chain(r, True, "eigen")
        assert c.ok and all(c.equalities.values())
        assert r.energy == 6

    def test_wild_star_strict(self):
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.star_quiver([2, 3, 7]))))
        c = sp.verify_inequality_chain(r, False, "eigen")
        assert c.ok and not any(c.equalities.values())
        assert r.energy > r.n

    def test_kronecker3_strict(self):
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.kronecker_quiver(3))))
        assert sp.verify_inequality_chain(r, False, "eigen").ok

    def test_frobenius_last_link_fails_for_a2(self):
        # sqrt(2) * sqrt(3) > 2 * 1: the entrywise norm is not bounded by n * rho
        r = sp.measures(cx.coxeter_matrix(alg.from_hereditary_quiver(alg.linear_quiver(2))))
        c = sp.verify_inequality_chain(r, True, "frobenius")
        assert not c.ok
        assert any(f.startswith("sqrt(n)N<=n*rho") for f in c.failures)

    def test_eigen_norm_bounded_by_frobenius(self):
        for _, a in corpus.full_corpus():
            r = sp.measures(cx.coxeter_matrix(a))
            assert r.eigen_norm ** 2 <= r.frobenius_squared + 1e-8 * max(1, r.frobenius_squared)
            assert r.energy <= math.sqrt(a.n) * r.frobenius + 1e-8

    def test_unknown_norm(self):
        r = sp.measures(cx.coxeter_matrix(alg.truncated_linear(1, 2)))
        with pytest.raises(ValueError):
            sp.verify_inequality_chain(r, True, "spectral")


def test_cyclotomic_flag_matches_factorization():
    p = cyclotomic(5) * cyclotomic(8)
    assert cyclotomic_factorize(p).is_cyclotomic
