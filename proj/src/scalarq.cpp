#include "qsphere/scalarq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace qsphere {

Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return 1;
    if (base == 0) {
        if (e < 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return 0;
    }
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    r.canonicalize();
    return r;
}

QScalar QScalar::q_power(long e, const Rational& c) {
    QScalar r;
    if (c != 0) r.terms_[e] = c;
    return r;
}

bool QScalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

long QScalar::min_exp() const {
    if (terms_.empty()) throw std::domain_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

long QScalar::max_exp() const {
    if (terms_.empty()) throw std::domain_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

Rational QScalar::coeff(long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void QScalar::add_term(long e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

QScalar QScalar::operator-() const {
    QScalar r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

QScalar& QScalar::operator+=(const QScalar& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

QScalar operator*(const QScalar& a, const QScalar& b) {
    QScalar r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

QScalar& QScalar::operator*=(const QScalar& o) { return *this = *this * o; }

QScalar QScalar::pow(unsigned long e) const {
    QScalar r(1);
    QScalar base = *this;
    while (e) {
        if (e & 1) r *= base;
        if (e >>= 1) base *= base;
    }
    return r;
}

QScalar QScalar::shifted(long k) const {
    QScalar r;
    for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
    return r;
}

Rational QScalar::eval(const Rational& q0) const {
    if (terms_.empty()) return 0;
    if (q0 == 0 && min_exp() < 0) throw std::domain_error("eval at q=0 with negative exponents");
    Rational acc = 0;
    long cur_e = min_exp();
    Rational cur_p = rational_pow(q0, cur_e);
    for (const auto& [e, c] : terms_) {
        if (e != cur_e) {
            cur_p *= rational_pow(q0, e - cur_e);
            cur_e = e;
        }
        acc += c * cur_p;
    }
    return acc;
}

Rational QScalar::eval_abs(const Rational& q0) const {
    Rational acc = 0;
    long cur_e = 0;
    Rational cur_p = 1;
    for (const auto& [e, c] : terms_) {
        cur_p *= rational_pow(q0, e - cur_e);
        cur_e = e;
        acc += abs(c) * cur_p;
    }
    return acc;
}

double QScalar::eval_double(double q0) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) acc += c.get_d() * std::pow(q0, static_cast<double>(e));
    return acc;
}

std::string QScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (a == 1) && e != 0;
        if (!unit) {
            if (a.get_den() == 1) os << a.get_num();
            else os << "(" << a << ")";
        }
        if (e != 0) {
            if (!unit) os << "*";
            os << "q^" << e;
        }
    }
    return os.str();
}

QScalar qint(unsigned n) {
    QScalar r;
    for (unsigned i = 0; i < n; ++i) r.add_term(2 * static_cast<long>(i), 1);
    return r;
}

QScalar one_minus_q2(unsigned n) {
    QScalar r(1);
    r.add_term(2 * static_cast<long>(n), -1);
    return r;
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over Z used for reduction to canonical form.
// ---------------------------------------------------------------------------

namespace {

using ZPoly = std::vector<mpz_class>;  // index = exponent, back() != 0 unless empty

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void make_primitive(ZPoly& p) {
    if (p.empty()) return;
    mpz_class g = content(p);
    if (p.back() < 0) g = -g;
    if (g != 1)
        for (auto& c : p) c /= g;
}

// lc(b)^(deg a - deg b + 1) * a  mod  b
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
    const size_t db = b.size() - 1;
    const mpz_class& lb = b.back();
    while (a.size() >= b.size()) {
        const size_t da = a.size() - 1;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (size_t i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

// Primitive PRS gcd; result is primitive with positive leading coefficient.
ZPoly gcd_zpoly(ZPoly a, ZPoly b) {
    make_primitive(a);
    make_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = pseudo_rem(a, b);
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Exact division in Q[q]; the remainder must vanish.
std::vector<Rational> div_exact(const std::vector<Rational>& a, const ZPoly& g) {
    if (g.empty()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a;
    std::vector<Rational> quot(a.size() >= g.size() ? a.size() - g.size() + 1 : 0, Rational(0));
    const size_t dg = g.size() - 1;
    Rational lg(g.back());
    for (size_t i = rem.size(); i-- > 0;) {
        if (i < dg) break;
        if (rem[i] == 0) continue;
        Rational f = rem[i] / lg;
        quot[i - dg] = f;
        for (size_t k = 0; k <= dg; ++k) rem[i - dg + k] -= f * Rational(g[k]);
    }
    for (const auto& c : rem)
        if (c != 0) throw std::logic_error("div_exact: nonzero remainder");
    return quot;
}

std::vector<Rational> dense_from(const QScalar& p, long shift) {
    std::vector<Rational> d(static_cast<size_t>(p.max_exp() - shift) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) d[static_cast<size_t>(e - shift)] = c;
    return d;
}

ZPoly primitive_int(const std::vector<Rational>& p) {
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Rational t = p[i] * Rational(l);
        z[i] = t.get_num();
    }
    trim(z);
    make_primitive(z);
    return z;
}

QScalar sparse_from(const std::vector<Rational>& p, long shift) {
    QScalar r;
    for (size_t i = 0; i < p.size(); ++i) r.add_term(static_cast<long>(i) + shift, p[i]);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// QRat
// ---------------------------------------------------------------------------

QRat::QRat(QScalar num, QScalar den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("QRat: zero denominator");
    reduce();
}

void QRat::reduce() {
    if (den_.is_zero()) throw std::domain_error("QRat: zero denominator");
    if (num_.is_zero()) {
        den_ = QScalar(1);
        return;
    }
    const long a = num_.min_exp();
    const long b = den_.min_exp();
    std::vector<Rational> n = dense_from(num_, a);
    std::vector<Rational> d = dense_from(den_, b);
    ZPoly g = gcd_zpoly(primitive_int(n), primitive_int(d));
    if (g.size() > 1) {
        n = div_exact(n, g);
        d = div_exact(d, g);
    }
    Rational lc = d.back();
    for (auto& c : n) c /= lc;
    for (auto& c : d) c /= lc;
    num_ = sparse_from(n, a - b);
    den_ = sparse_from(d, 0);
}

QRat QRat::qint_ratio(unsigned a, unsigned b) {
    if (b == 0) throw std::domain_error("qint_ratio: zero denominator index");
    return QRat(one_minus_q2(a), one_minus_q2(b));
}

QRat QRat::operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
}

QRat operator+(const QRat& a, const QRat& b) {
    return QRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRat operator-(const QRat& a, const QRat& b) {
    return QRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

QRat operator*(const QRat& a, const QRat& b) { return QRat(a.num_ * b.num_, a.den_ * b.den_); }

QRat operator/(const QRat& a, const QRat& b) {
    if (b.is_zero()) throw std::domain_error("QRat: division by zero");
    return QRat(a.num_ * b.den_, a.den_ * b.num_);
}

Rational QRat::eval(const Rational& q0) const {
    Rational d = den_.eval(q0);
    if (d == 0) {
        std::ostringstream os;
        os << "denominator vanishes at q = " << q0;
        throw PoleError(os.str());
    }
    return num_.eval(q0) / d;
}

Rational QRat::limit_q1() const {
    Rational d = den_.eval(1);
    if (d == 0) throw PoleError("pole at q = 1");
    return num_.eval(1) / d;
}

std::string QRat::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::string to_decimal(const Rational& v, int digits) {
    if (digits < 0) digits = 0;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class n = v.get_num();
    bool neg = n < 0;
    if (neg) n = -n;
    n *= scale;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), v.get_den().get_mpz_t());
    mpz_class twice = 2 * r;
    int cmp = mpz_cmp(twice.get_mpz_t(), v.get_den().get_mpz_t());
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    mpz_class ip = q / scale, fp = q % scale;
    std::string out = neg && (ip != 0 || fp != 0) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        std::string f = fp.get_str();
        out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
    }
    return out;
}

Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("not a rational literal: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0) bad();
        r.canonicalize();
        if (r.get_den() == 0) bad();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        mpz_class z;
        if (mpz_set_str(z.get_mpz_t(), text.c_str(), 10) != 0) bad();
        return Rational(z);
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || frac_len == 0) bad();
    mpz_class z;
    if (mpz_set_str(z.get_mpz_t(), digits.c_str(), 10) != 0) bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r(z, den);
    r.canonicalize();
    return r;
}

}  // namespace qsphere
