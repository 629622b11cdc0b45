#pragma once

// Shared deterministic generators for the property-style tests.

#include <random>
#include <vector>

#include "qsphere/qmatrix.hpp"
#include "qsphere/scalarq.hpp"
#include "qsphere/sphere.hpp"

namespace qsphere::testgen {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline QScalar random_qscalar(Rng& rng, int max_terms = 3, int max_exp = 5) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(-max_exp, max_exp);
    QScalar r;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) r.add_term(exp(rng), random_rational(rng));
    return r;
}

inline QScalar random_nonzero_qscalar(Rng& rng) {
    for (;;) {
        QScalar r = random_qscalar(rng);
        if (!r.is_zero()) return r;
    }
}

inline Word random_word(Rng& rng, Signature sig, size_t max_len) {
    std::uniform_int_distribution<size_t> len(0, max_len);
    std::uniform_int_distribution<int> idx(1, sig.N);
    std::uniform_int_distribution<int> st(0, 1);
    Word w;
    const size_t k = len(rng);
    for (size_t i = 0; i < k; ++i) w.emplace_back(idx(rng), st(rng) == 1);
    return w;
}

inline NCPoly random_ncpoly(Rng& rng, Signature sig, int max_terms = 3, size_t max_len = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    NCPoly r(sig);
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        QScalar c = random_qscalar(rng, 2, 3);
        if (c.is_zero()) c = QScalar(1);
        r += normal_form(random_word(rng, sig, max_len), sig).scaled(c);
    }
    return r;
}

/// Canonical monomial with total degree <= max_degree; matched (n == m)
/// when `matched` is set, with the last block empty either way.
inline SphereMonomial random_monomial(Rng& rng, Signature sig, unsigned max_degree,
                                      bool matched) {
    SphereMonomial mono(sig.N);
    std::uniform_int_distribution<int> pick(0, sig.N - 1);
    if (matched) {
        std::uniform_int_distribution<unsigned> pairs(0, max_degree / 2);
        const unsigned k = pairs(rng);
        for (unsigned i = 0; i < k; ++i) {
            int j = pick(rng) % sig.ell;  // z_N never appears matched
            ++mono.n[j];
            ++mono.m[j];
        }
    } else {
        std::uniform_int_distribution<unsigned> deg(0, max_degree);
        std::uniform_int_distribution<int> side(0, 1);
        const unsigned k = deg(rng);
        for (unsigned i = 0; i < k; ++i) {
            int j = pick(rng);
            ++(side(rng) ? mono.n : mono.m)[j];
        }
        if (mono.n[sig.N - 1] > 0 && mono.m[sig.N - 1] > 0) {
            uint32_t drop = std::min(mono.n[sig.N - 1], mono.m[sig.N - 1]);
            (side(rng) ? mono.n : mono.m)[sig.N - 1] -= drop;
        }
    }
    return mono;
}

inline UWord random_uword(Rng& rng, int N, size_t max_len) {
    std::uniform_int_distribution<size_t> len(0, max_len);
    std::uniform_int_distribution<int> idx(1, N);
    UWord w;
    const size_t k = len(rng);
    for (size_t i = 0; i < k; ++i) w.emplace_back(idx(rng), idx(rng));
    return w;
}

inline UPoly random_upoly(Rng& rng, int N, int max_terms = 3, size_t max_len = 4) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    UPoly r(N);
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        QScalar c = random_qscalar(rng, 2, 3);
        if (c.is_zero()) c = QScalar(1);
        r += u_normal_form(random_uword(rng, N, max_len), N).scaled(c);
    }
    return r;
}

}  // namespace qsphere::testgen
