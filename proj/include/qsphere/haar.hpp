#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsphere/scalarq.hpp"
#include "qsphere/sphere.hpp"

namespace qsphere {

/// Commutative polynomial in A_1..A_ell; key = exponent vector of length ell.
class APoly {
public:
    explicit APoly(Signature sig) : sig_(sig) {}

    static APoly zero(Signature sig) { return APoly(sig); }
    static APoly one(Signature sig) { return scalar(sig, QScalar(1)); }
    static APoly scalar(Signature sig, const QScalar& c);
    /// The generator A_j, 0 <= j <= N; A_0 = 0 and A_N = 1.
    static APoly generator(Signature sig, int j);

    Signature signature() const { return sig_; }
    const std::map<std::vector<uint32_t>, QScalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add_term(const std::vector<uint32_t>& m, const QScalar& c);

    APoly& operator+=(const APoly& o);
    APoly& operator-=(const APoly& o);
    friend APoly operator+(APoly a, const APoly& b) { return a += b; }
    friend APoly operator-(APoly a, const APoly& b) { return a -= b; }
    friend APoly operator*(const APoly& a, const APoly& b);

    bool operator==(const APoly& o) const { return sig_ == o.sig_ && coeffs_ == o.coeffs_; }
    bool operator!=(const APoly& o) const { return !(*this == o); }

    std::string str() const;

private:
    Signature sig_;
    std::map<std::vector<uint32_t>, QScalar> coeffs_;
};

/// Atom index of the spectral grid: one point per n in N_0^ell.
struct GridIndex {
    std::vector<uint32_t> n;
    GridIndex() = default;
    explicit GridIndex(std::vector<uint32_t> n_) : n(std::move(n_)) {}
};

/// Conditional expectation onto the commutative subalgebra generated by the
/// z_j z_j*: keeps exactly the monomials with matching exponent blocks.
NCPoly expectation(const NCPoly& x);

/// Modular automorphism: z_j -> q^{2(j-1)} z_j, z_j* -> q^{-2(j-1)} z_j*,
/// extended multiplicatively to monomials.
NCPoly theta(const NCPoly& x);

/// Rewrites a matched polynomial (expectation(x) == x) as a polynomial in
/// A_1..A_ell. Throws std::invalid_argument on unmatched monomials.
APoly simplex_reduce(const NCPoly& x);

/// Substitutes A_j -> build_A(j) and expands; inverse of simplex_reduce.
NCPoly expand_A(const APoly& p);

/// Haar value of A^m: prod_k (1-q^{2k}) / (1-q^{2(k+m_1+..+m_k)}).
QRat haar_A(const std::vector<uint32_t>& m, Signature sig);

/// Haar state, exact: linear extension of haar_A over simplex_reduce of the
/// matched part of x.
QRat haar(const NCPoly& x);

/// Exact mass of the grid atom n: prod_k (1-q^{2k}) q^{2(N-k) n_k}.
QScalar measure_weight(const GridIndex& n, Signature sig);

/// Coordinates of the grid atom n evaluated at q0 in (0,1).
std::vector<Rational> lambda_point(const GridIndex& n, Signature sig, const Rational& q0);

/// Eigenvalue of A_j on the grid atom n: q^{2(n_1+..+n_{N-j})}.
QScalar a_eigenvalue(int j, const GridIndex& n, Signature sig);

struct NumericHaar {
    Rational value;       // exact truncated sum
    Rational tail_bound;  // certified bound on the discarded tail
    unsigned shells;      // sum truncated to |n| <= shells
};

/// Evaluates the Haar state of x at q = q0 by summing the spectral measure
/// over grid atoms with |n| <= T, T chosen so the certified tail bound drops
/// below tol. Throws std::runtime_error when tol is unreachable within the cap.
NumericHaar haar_numeric(const NCPoly& x, const Rational& q0, const Rational& tol,
                         unsigned shell_cap = 100000);

/// q = 1 value of the Haar state on A^m: ell! * prod_k (k+m_1+..+m_k)^{-1}.
Rational haar_classical(const std::vector<uint32_t>& m);

struct CurvePoint {
    Rational q;
    Rational value;
};

/// Exact Haar values of x along a grid of rational q in (0,1]; q = 1 entries
/// are evaluated as the limit of the reduced rational function.
std::vector<CurvePoint> haar_curve(const NCPoly& x, const std::vector<Rational>& grid);

}  // namespace qsphere
