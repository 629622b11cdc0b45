#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsphere/haar.hpp"
#include "support.hpp"

using namespace qsphere;

namespace {

NCPoly gen(Signature sig, int j, bool starred = false) {
    return NCPoly::generator(sig, Letter(j, starred));
}

NCPoly pair(Signature sig, int j) { return mul(gen(sig, j), gen(sig, j, true)); }

// All m in N_0^ell with m_1 + .. + m_ell <= total.
std::vector<std::vector<uint32_t>> exponents_up_to(int ell, unsigned total) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur(ell, 0);
    auto rec = [&](auto&& self, int pos, unsigned left) -> void {
        if (pos == ell) {
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

}  // namespace

TEST_CASE("expectation keeps exactly the matched monomials") {
    const Signature sig(1);
    CHECK(expectation(gen(sig, 1)).is_zero());
    CHECK(expectation(pair(sig, 1)) == pair(sig, 1));
    NCPoly x = mul(mul(gen(sig, 1), pair(sig, 2)), gen(sig, 1, true));
    CHECK(expectation(x) == x);

    // linear, idempotent, unital
    testgen::Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        NCPoly a = testgen::random_ncpoly(rng, sig, 3, 6);
        CHECK(expectation(expectation(a)) == expectation(a));
    }
    CHECK(expectation(NCPoly::one(sig)) == NCPoly::one(sig));
}

TEST_CASE("theta scales generators by even powers of q") {
    const Signature sig(1);
    CHECK(theta(gen(sig, 1)) == gen(sig, 1));
    CHECK(theta(gen(sig, 2)) == gen(sig, 2).scaled(QScalar::q_power(2)));
    CHECK(theta(gen(sig, 2, true)) == gen(sig, 2, true).scaled(QScalar::q_power(-2)));
}

TEST_CASE("theta is an algebra automorphism") {
    testgen::Rng rng(32);
    std::uniform_int_distribution<int> ell_dist(1, 3);
    for (int i = 0; i < 100; ++i) {
        const Signature sig(ell_dist(rng));
        NCPoly a = testgen::random_ncpoly(rng, sig, 2, 4);
        NCPoly b = testgen::random_ncpoly(rng, sig, 2, 4);
        CHECK(theta(mul(a, b)) == mul(theta(a), theta(b)));
    }
}

TEST_CASE("simplex_reduce on the worked examples") {
    const Signature sig(1);
    CHECK(simplex_reduce(pair(sig, 1)) == APoly::generator(sig, 1));

    APoly a1 = APoly::generator(sig, 1);
    CHECK(simplex_reduce(mul(pair(sig, 1), pair(sig, 1))) == a1 * a1);

    NCPoly x = mul(mul(gen(sig, 1), pair(sig, 2)), gen(sig, 1, true));
    CHECK(simplex_reduce(x) == a1 - a1 * a1);

    CHECK_THROWS_AS(simplex_reduce(gen(sig, 1)), std::invalid_argument);
}

TEST_CASE("expand-back: build_A after simplex_reduce is the identity") {
    SUBCASE("systematic matched monomials") {
        for (int ell = 1; ell <= 3; ++ell) {
            const Signature sig(ell);
            for (const auto& m : exponents_up_to(ell, 6)) {
                SphereMonomial mono(sig.N);
                for (int j = 0; j < ell; ++j) mono.n[j] = mono.m[j] = m[j];
                NCPoly x(sig);
                x.add_term(mono, QScalar(1));
                CHECK(expand_A(simplex_reduce(x)) == x);
            }
        }
    }
    SUBCASE("random matched polynomials") {
        testgen::Rng rng(33);
        for (int i = 0; i < 150; ++i) {
            const Signature sig(1 + static_cast<int>(rng() % 3));
            NCPoly x = expectation(testgen::random_ncpoly(rng, sig, 3, 8));
            CHECK(expand_A(simplex_reduce(x)) == x);
        }
    }
}

TEST_CASE("haar_A closed values") {
    CHECK(haar_A({0}, Signature(1)) == QRat(1));
    CHECK(haar_A({0, 0, 0}, Signature(3)) == QRat(1));
    CHECK(haar_A({1}, Signature(1)) == QRat(one_minus_q2(1), one_minus_q2(2)));
    CHECK(haar_A({1, 0}, Signature(2)) == QRat(one_minus_q2(1), one_minus_q2(3)));
}

TEST_CASE("haar spot values") {
    for (int ell = 1; ell <= 3; ++ell) {
        const Signature sig(ell);
        CHECK(haar(NCPoly::one(sig)) == QRat(1));
        CHECK(haar(pair(sig, 1)) ==
              QRat(one_minus_q2(1), one_minus_q2(static_cast<unsigned>(sig.N))));
    }
    // h(z_2 z_2*) at ell = 1 equals q^2 / (1 + q^2)
    const Signature sig(1);
    QScalar den(1);
    den.add_term(2, 1);
    CHECK(haar(pair(sig, 2)) == QRat(QScalar::q_power(2), den));
}

TEST_CASE("haar recurrence under multiplication by A_j") {
    for (int ell = 1; ell <= 3; ++ell) {
        const Signature sig(ell);
        for (int j = 1; j <= ell; ++j) {
            for (const auto& mj : exponents_up_to(j, 6)) {
                std::vector<uint32_t> m(ell, 0);
                std::copy(mj.begin(), mj.end(), m.begin());
                unsigned total = 0;
                for (uint32_t v : m) total += v;
                std::vector<uint32_t> next = m;
                ++next[j - 1];
                QRat lhs = haar_A(next, sig);
                QRat rhs = QRat::qint_ratio(j + total, sig.N + total) * haar_A(m, sig);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("h is invariant under the conditional expectation") {
    testgen::Rng rng(34);
    std::uniform_int_distribution<int> ell_dist(1, 3);
    for (int i = 0; i < 200; ++i) {
        const Signature sig(ell_dist(rng));
        NCPoly x = testgen::random_ncpoly(rng, sig, 3, 6);
        CHECK(haar(expectation(x)) == haar(x));
    }
}

TEST_CASE("modular property h(xy) = h(y theta(x))") {
    testgen::Rng rng(35);
    std::uniform_int_distribution<int> ell_dist(1, 2);
    for (int i = 0; i < 100; ++i) {
        const Signature sig(ell_dist(rng));
        NCPoly x = testgen::random_ncpoly(rng, sig, 2, 4);
        NCPoly y = testgen::random_ncpoly(rng, sig, 2, 4);
        CHECK(haar(mul(x, y)) == haar(mul(y, theta(x))));
    }
    // the worked pair: h(z_2 z_2*) = h(z_2* theta(z_2))
    const Signature sig(1);
    NCPoly z2 = NCPoly::generator(sig, Letter(2, false));
    NCPoly z2s = NCPoly::generator(sig, Letter(2, true));
    CHECK(haar(mul(z2, z2s)) == haar(mul(z2s, theta(z2))));
}

TEST_CASE("measure weights") {
    const Signature s1(1);
    CHECK(measure_weight(GridIndex({0}), s1) == one_minus_q2(1));
    CHECK(measure_weight(GridIndex({3}), s1) == one_minus_q2(1).shifted(6));
    const Signature s2(2);
    CHECK(measure_weight(GridIndex({2, 1}), s2) ==
          (one_minus_q2(1) * one_minus_q2(2)).shifted(4 * 2 + 2 * 1));
}

TEST_CASE("measure normalization: per-coordinate geometric series multiply to 1") {
    for (int ell = 1; ell <= 4; ++ell) {
        const Signature sig(ell);
        QRat total(1);
        for (int k = 1; k <= ell; ++k) {
            // sum over n_k of (1-q^{2k}) q^{2(N-k) n_k}
            total *= QRat(one_minus_q2(static_cast<unsigned>(k)),
                          one_minus_q2(static_cast<unsigned>(sig.N - k)));
        }
        CHECK(total == QRat(1));
    }
}

TEST_CASE("grid point coordinates") {
    const Signature s1(1);
    CHECK(lambda_point(GridIndex({0}), s1, Rational(1, 2)) == std::vector<Rational>{1});
    CHECK(lambda_point(GridIndex({3}), s1, Rational(1, 2)) ==
          std::vector<Rational>{Rational(1, 64)});
    const Signature s2(2);
    auto pt = lambda_point(GridIndex({1, 0}), s2, Rational(1, 2));
    CHECK(pt == std::vector<Rational>{Rational(1, 4), Rational(0)});
    auto origin = lambda_point(GridIndex({0, 0}), s2, Rational(1, 2));
    CHECK(origin == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK_THROWS_AS(lambda_point(GridIndex({0}), s1, Rational(1)), std::invalid_argument);
}

TEST_CASE("A_j eigenvalues and telescoping to the coordinates") {
    const Signature sig(2);
    CHECK(a_eigenvalue(sig.N, GridIndex({4, 7}), sig) == QScalar(1));
    CHECK(a_eigenvalue(1, GridIndex({1, 1}), sig) == QScalar::q_power(4));
    testgen::Rng rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<uint32_t> n{static_cast<uint32_t>(rng() % 5),
                                static_cast<uint32_t>(rng() % 5)};
        GridIndex idx(n);
        const Rational q0(2, 3);
        auto pt = lambda_point(idx, sig, q0);
        for (int j = 1; j <= sig.ell; ++j) {
            Rational diff = a_eigenvalue(j, idx, sig).eval(q0) -
                            (j > 1 ? a_eigenvalue(j - 1, idx, sig).eval(q0) : Rational(0));
            CHECK(diff == pt[j - 1]);
        }
    }
}

TEST_CASE("haar_numeric certified evaluation") {
    const Signature sig(1);
    const Rational tol(1, 1000000000000L);  // 1e-12

    auto r = haar_numeric(pair(sig, 1), Rational(1, 2), tol);
    CHECK(r.tail_bound <= tol);
    CHECK(abs(r.value - Rational(4, 5)) <= tol);

    auto one = haar_numeric(NCPoly::one(sig), Rational(1, 2), tol);
    CHECK(abs(one.value - 1) <= one.tail_bound);

    auto r2 = haar_numeric(pair(sig, 2), Rational(1, 2), tol);
    CHECK(abs(r2.value - Rational(1, 5)) <= tol);

    CHECK_THROWS_AS(haar_numeric(pair(sig, 1), Rational(1, 2), tol, 2), std::runtime_error);
}

TEST_CASE("haar_numeric agrees with the exact path on random inputs") {
    testgen::Rng rng(37);
    const Rational tol(1, 10000000000L);  // 1e-10
    std::uniform_int_distribution<int> ell_dist(1, 2);
    for (int i = 0; i < 40; ++i) {
        const Signature sig(ell_dist(rng));
        NCPoly x(sig);
        if (i % 2 == 0)
            x.add_term(testgen::random_monomial(rng, sig, 8, i % 4 != 0), QScalar(1));
        else
            x = testgen::random_ncpoly(rng, sig, 3, 6);
        for (const Rational& q0 : {Rational(1, 2), Rational(4, 5)}) {
            auto numeric = haar_numeric(x, q0, tol);
            CHECK(abs(numeric.value - rat_eval(haar(x), q0)) <= tol);
        }
    }
}

TEST_CASE("classical limit values") {
    CHECK(haar_classical({1}) == Rational(1, 2));
    CHECK(haar_classical({0, 0}) == 1);
    CHECK(haar_classical({1, 0}) == Rational(1, 3));
}

TEST_CASE("classical limit agrees with limit_q1 of the exact formula") {
    for (int ell = 1; ell <= 3; ++ell) {
        const Signature sig(ell);
        for (const auto& m : exponents_up_to(ell, 5))
            CHECK(limit_q1(haar_A(m, sig)) == haar_classical(m));
    }
}

TEST_CASE("haar_curve exact values and the q = 1 endpoint") {
    const Signature sig(1);
    auto pts = haar_curve(pair(sig, 1), {Rational(1, 2), Rational(1)});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].value == Rational(4, 5));
    CHECK(pts[1].value == Rational(1, 2));

    auto ones = haar_curve(NCPoly::one(sig), {Rational(1, 3), Rational(2, 3), Rational(1)});
    for (const auto& pt : ones) CHECK(pt.value == 1);

    CHECK_THROWS_AS(haar_curve(pair(sig, 1), {Rational(2)}), std::invalid_argument);
}

TEST_CASE("positivity of h(x* x) at rational q") {
    testgen::Rng rng(38);
    std::uniform_int_distribution<int> ell_dist(1, 2);
    for (int i = 0; i < 60; ++i) {
        const Signature sig(ell_dist(rng));
        NCPoly x = testgen::random_ncpoly(rng, sig, 2, 4);
        if (x.is_zero()) continue;
        Rational v = rat_eval(haar(mul(star(x), x)), Rational(1, 2));
        CHECK(v > 0);
    }
}
