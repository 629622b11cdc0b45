#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace qsphere {

using Rational = mpq_class;

/// Thrown when a rational function is evaluated at a zero of its
/// (reduced) denominator.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

Rational rational_pow(const Rational& base, long e);

/// Laurent polynomial in q with arbitrary-precision rational coefficients.
///
/// Stored as exponent -> coefficient with no zero coefficients; the zero
/// polynomial is the empty map. All operations are exact.
class QScalar {
public:
    QScalar() = default;
    QScalar(long value) { if (value != 0) terms_[0] = value; }
    QScalar(const Rational& value) { if (value != 0) terms_[0] = value; }

    /// c * q^e
    static QScalar q_power(long e, const Rational& c = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    /// Smallest/largest stored exponent; requires a nonzero polynomial.
    long min_exp() const;
    long max_exp() const;

    Rational coeff(long e) const;
    const std::map<long, Rational>& terms() const { return terms_; }

    QScalar operator-() const;
    QScalar& operator+=(const QScalar& o);
    QScalar& operator-=(const QScalar& o);
    QScalar& operator*=(const QScalar& o);

    friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
    friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
    friend QScalar operator*(const QScalar& a, const QScalar& b);

    bool operator==(const QScalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const QScalar& o) const { return terms_ != o.terms_; }
    bool operator<(const QScalar& o) const { return terms_ < o.terms_; }

    QScalar pow(unsigned long e) const;

    /// Multiply by q^k (exponent shift).
    QScalar shifted(long k) const;

    /// Exact value at q = q0. Requires q0 != 0 when negative exponents occur.
    Rational eval(const Rational& q0) const;

    /// Sum_e |c_e| q0^e for q0 > 0; crude sup bound helper.
    Rational eval_abs(const Rational& q0) const;

    double eval_double(double q0) const;

    /// Adds c * q^e in place.
    void add_term(long e, const Rational& c);

    std::string str() const;

private:
    std::map<long, Rational> terms_;
};

/// q^2-integer 1 + q^2 + ... + q^(2(n-1)); qint(0) = 0.
QScalar qint(unsigned n);

/// 1 - q^(2n)
QScalar one_minus_q2(unsigned n);

/// Reduced ratio of two Laurent polynomials in q.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term, monic (so its leading coefficient is positive), and
/// coprime to the numerator over Q[q] after clearing q-powers. Any leftover
/// q-power shift lives in the numerator. Equality is direct comparison.
class QRat {
public:
    QRat() : num_(0), den_(1) {}
    QRat(long value) : num_(value), den_(1) {}
    QRat(const Rational& value) : num_(value), den_(1) {}
    QRat(QScalar num) : num_(std::move(num)), den_(1) { reduce(); }
    QRat(QScalar num, QScalar den);

    /// (1 - q^(2a)) / (1 - q^(2b)); requires b >= 1.
    static QRat qint_ratio(unsigned a, unsigned b);

    const QScalar& num() const { return num_; }
    const QScalar& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    QRat operator-() const;
    friend QRat operator+(const QRat& a, const QRat& b);
    friend QRat operator-(const QRat& a, const QRat& b);
    friend QRat operator*(const QRat& a, const QRat& b);
    friend QRat operator/(const QRat& a, const QRat& b);
    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }

    bool operator==(const QRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRat& o) const { return !(*this == o); }

    /// Exact value at q = q0 in (0,1]; throws PoleError if the reduced
    /// denominator vanishes there.
    Rational eval(const Rational& q0) const;

    /// Exact value at q = 1; throws PoleError on a genuine pole.
    Rational limit_q1() const;

    std::string str() const;

private:
    void reduce();

    QScalar num_;
    QScalar den_;
};

inline Rational rat_eval(const QRat& x, const Rational& q0) { return x.eval(q0); }
inline Rational limit_q1(const QRat& x) { return x.limit_q1(); }

/// Correctly rounded decimal representation with `digits` places after
/// the point (round half to even).
std::string to_decimal(const Rational& v, int digits);

/// Parses "p/q", an integer, or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace qsphere
