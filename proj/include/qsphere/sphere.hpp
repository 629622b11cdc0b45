#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsphere/scalarq.hpp"

namespace qsphere {

/// Rank of the odd sphere: generators z_1..z_N with N = ell + 1.
struct Signature {
    int ell;
    int N;
    explicit Signature(int ell_) : ell(ell_), N(ell_ + 1) {
        if (ell_ < 1) throw std::invalid_argument("Signature: ell must be >= 1");
    }
    bool operator==(const Signature& o) const { return ell == o.ell; }
    bool operator!=(const Signature& o) const { return ell != o.ell; }
};

/// One generator letter: z_index or its adjoint.
struct Letter {
    int index = 1;
    bool starred = false;

    Letter() = default;
    Letter(int index_, bool starred_) : index(index_), starred(starred_) {}

    /// Position in the monomial order z_1 < ... < z_N < z_N* < ... < z_1*.
    int rank(int N) const { return starred ? 2 * N - index : index - 1; }

    bool operator==(const Letter& o) const { return index == o.index && starred == o.starred; }
    std::string str() const { return "z" + std::to_string(index) + (starred ? "'" : ""); }
};

using Word = std::vector<Letter>;

/// Sorted monomial z_1^{n_1}..z_N^{n_N} (z_N*)^{m_N}..(z_1*)^{m_1}
/// with min(n_N, m_N) = 0; m_j is the exponent of z_j*.
struct SphereMonomial {
    std::vector<uint32_t> n;
    std::vector<uint32_t> m;

    SphereMonomial() = default;
    explicit SphereMonomial(int N) : n(N, 0), m(N, 0) {}

    uint32_t degree() const;
    bool matched() const { return n == m; }
    bool is_identity() const;
    Word word() const;

    bool operator==(const SphereMonomial& o) const { return n == o.n && m == o.m; }
    bool operator<(const SphereMonomial& o) const;  // degree, then word lex

    std::string str() const;
};

/// Element of the sphere coordinate algebra in canonical form: a finite
/// QScalar-linear combination of sorted monomials.
class NCPoly {
public:
    explicit NCPoly(Signature sig) : sig_(sig) {}

    static NCPoly zero(Signature sig) { return NCPoly(sig); }
    static NCPoly one(Signature sig) { return scalar(sig, QScalar(1)); }
    static NCPoly scalar(Signature sig, const QScalar& c);
    static NCPoly generator(Signature sig, Letter l);

    Signature signature() const { return sig_; }
    const std::map<SphereMonomial, QScalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    uint32_t degree() const;  // 0 for the zero polynomial

    void add_term(const SphereMonomial& mono, const QScalar& c);

    NCPoly operator-() const;
    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

    NCPoly scaled(const QScalar& c) const;

    bool operator==(const NCPoly& o) const { return sig_ == o.sig_ && coeffs_ == o.coeffs_; }
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    std::string str() const;

private:
    Signature sig_;
    std::map<SphereMonomial, QScalar> coeffs_;
};

/// Rewrites an arbitrary word in the generators to canonical form.
NCPoly normal_form(const Word& word, Signature sig);

/// Re-runs the rewriting engine on every stored monomial (idempotence check).
NCPoly normal_form(const NCPoly& x);

NCPoly mul(const NCPoly& a, const NCPoly& b);

/// Conjugate-linear anti-homomorphic involution.
NCPoly star(const NCPoly& a);

NCPoly pow(const NCPoly& a, unsigned e);

/// A_j = sum_{i<=j} z_i z_i* in canonical form; A_0 = 0, A_N = 1.
NCPoly build_A(int j, Signature sig);

}  // namespace qsphere
