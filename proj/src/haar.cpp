#include "qsphere/haar.hpp"

#include <algorithm>
#include <sstream>

namespace qsphere {

APoly APoly::scalar(Signature sig, const QScalar& c) {
    APoly r(sig);
    r.add_term(std::vector<uint32_t>(sig.ell, 0), c);
    return r;
}

APoly APoly::generator(Signature sig, int j) {
    if (j < 0 || j > sig.N) throw std::invalid_argument("APoly::generator: index out of range");
    if (j == 0) return zero(sig);
    if (j == sig.N) return one(sig);
    APoly r(sig);
    std::vector<uint32_t> m(sig.ell, 0);
    m[j - 1] = 1;
    r.add_term(m, QScalar(1));
    return r;
}

void APoly::add_term(const std::vector<uint32_t>& m, const QScalar& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(m.size()) != sig_.ell)
        throw std::invalid_argument("APoly: exponent vector of wrong length");
    auto [it, inserted] = coeffs_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

APoly& APoly::operator+=(const APoly& o) {
    if (sig_ != o.sig_) throw std::invalid_argument("signature mismatch");
    for (const auto& [m, c] : o.coeffs_) add_term(m, c);
    return *this;
}

APoly& APoly::operator-=(const APoly& o) {
    if (sig_ != o.sig_) throw std::invalid_argument("signature mismatch");
    for (const auto& [m, c] : o.coeffs_) add_term(m, -c);
    return *this;
}

APoly operator*(const APoly& a, const APoly& b) {
    if (a.sig_ != b.sig_) throw std::invalid_argument("signature mismatch");
    APoly r(a.sig_);
    for (const auto& [ma, ca] : a.coeffs_)
        for (const auto& [mb, cb] : b.coeffs_) {
            std::vector<uint32_t> m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

std::string APoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        bool ident = std::all_of(m.begin(), m.end(), [](uint32_t v) { return v == 0; });
        bool unit = c.is_one();
        if (!unit) {
            if (c.terms().size() == 1 && c.min_exp() == 0 && c.coeff(0).get_den() == 1 &&
                c.coeff(0) > 0)
                os << c.coeff(0).get_num();
            else
                os << "(" << c.str() << ")";
        }
        if (ident) {
            if (unit) os << "1";
            continue;
        }
        bool lead = unit;
        for (size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0) continue;
            if (!lead) os << "*";
            lead = false;
            os << "A" << (j + 1);
            if (m[j] > 1) os << "^" << m[j];
        }
    }
    return os.str();
}

NCPoly expectation(const NCPoly& x) {
    NCPoly out(x.signature());
    for (const auto& [mono, c] : x.coeffs())
        if (mono.matched()) out.add_term(mono, c);
    return out;
}

NCPoly theta(const NCPoly& x) {
    NCPoly out(x.signature());
    for (const auto& [mono, c] : x.coeffs()) {
        long e = 0;
        for (size_t j = 0; j < mono.n.size(); ++j)
            e += 2 * static_cast<long>(j) *
                 (static_cast<long>(mono.n[j]) - static_cast<long>(mono.m[j]));
        out.add_term(mono, c.shifted(e));
    }
    return out;
}

APoly simplex_reduce(const NCPoly& x) {
    const Signature sig = x.signature();
    APoly out(sig);
    for (const auto& [mono, c] : x.coeffs()) {
        if (!mono.matched())
            throw std::invalid_argument("simplex_reduce: unmatched monomial " + mono.str());
        // z_j^k (z_j*)^k = prod_{i=0}^{k-1} (A_j - q^{-2i} A_{j-1}); the A_r
        // with r >= j commute with z_j and z_j*, and A_{j-1} picks up q^{-2}
        // per z_j it crosses.
        APoly prod = APoly::scalar(sig, c);
        for (int j = 1; j <= sig.ell; ++j) {
            const APoly aj = APoly::generator(sig, j);
            const APoly ajm1 = APoly::generator(sig, j - 1);
            for (uint32_t i = 0; i < mono.n[j - 1]; ++i) {
                APoly factor = aj;
                for (const auto& [m, k] : ajm1.coeffs())
                    factor.add_term(m, -k.shifted(-2 * static_cast<long>(i)));
                prod = prod * factor;
            }
        }
        out += prod;
    }
    return out;
}

NCPoly expand_A(const APoly& p) {
    const Signature sig = p.signature();
    NCPoly out(sig);
    std::vector<NCPoly> gens;
    for (int j = 1; j <= sig.ell; ++j) gens.push_back(build_A(j, sig));
    for (const auto& [m, c] : p.coeffs()) {
        NCPoly term = NCPoly::scalar(sig, c);
        for (int j = 0; j < sig.ell; ++j)
            for (uint32_t i = 0; i < m[j]; ++i) term = mul(term, gens[j]);
        out += term;
    }
    return out;
}

QRat haar_A(const std::vector<uint32_t>& m, Signature sig) {
    if (static_cast<int>(m.size()) != sig.ell)
        throw std::invalid_argument("haar_A: exponent vector of wrong length");
    QRat r(1);
    unsigned partial = 0;
    for (int k = 1; k <= sig.ell; ++k) {
        partial += m[k - 1];
        r *= QRat::qint_ratio(static_cast<unsigned>(k), static_cast<unsigned>(k) + partial);
    }
    return r;
}

QRat haar(const NCPoly& x) {
    const APoly reduced = simplex_reduce(expectation(x));
    QRat r(0);
    for (const auto& [m, c] : reduced.coeffs()) r += QRat(c) * haar_A(m, x.signature());
    return r;
}

QScalar measure_weight(const GridIndex& n, Signature sig) {
    if (static_cast<int>(n.n.size()) != sig.ell)
        throw std::invalid_argument("measure_weight: grid index of wrong length");
    QScalar r(1);
    for (int k = 1; k <= sig.ell; ++k) {
        long e = 2l * (sig.N - k) * n.n[k - 1];
        r *= one_minus_q2(static_cast<unsigned>(k)).shifted(e);
    }
    return r;
}

QScalar a_eigenvalue(int j, const GridIndex& n, Signature sig) {
    if (j < 1 || j > sig.N) throw std::invalid_argument("a_eigenvalue: index out of range");
    if (static_cast<int>(n.n.size()) != sig.ell)
        throw std::invalid_argument("a_eigenvalue: grid index of wrong length");
    long s = 0;
    for (int i = 0; i < sig.N - j; ++i) s += n.n[i];
    return QScalar::q_power(2 * s);
}

std::vector<Rational> lambda_point(const GridIndex& n, Signature sig, const Rational& q0) {
    if (q0 <= 0 || q0 >= 1) throw std::invalid_argument("lambda_point: q0 must lie in (0,1)");
    std::vector<Rational> out(sig.ell);
    for (int j = 1; j <= sig.ell; ++j) {
        // j-th coordinate = eigenvalue of z_j z_j* = A_j - A_{j-1}
        Rational v = a_eigenvalue(j, n, sig).eval(q0);
        if (j > 1) v -= a_eigenvalue(j - 1, n, sig).eval(q0);
        out[j - 1] = v;
    }
    return out;
}

namespace {

// Visits every n in N_0^ell with |n| = total.
template <typename F>
void for_each_composition(int ell, unsigned total, std::vector<uint32_t>& n, int pos, F&& f) {
    if (pos == ell - 1) {
        n[pos] = total;
        f(n);
        return;
    }
    for (unsigned v = 0; v <= total; ++v) {
        n[pos] = v;
        for_each_composition(ell, total - v, n, pos + 1, f);
    }
}

}  // namespace

NumericHaar haar_numeric(const NCPoly& x, const Rational& q0, const Rational& tol,
                         unsigned shell_cap) {
    const Signature sig = x.signature();
    if (q0 <= 0 || q0 >= 1) throw std::invalid_argument("haar_numeric: q0 must lie in (0,1)");
    if (tol <= 0) throw std::invalid_argument("haar_numeric: tol must be positive");
    const APoly reduced = simplex_reduce(expectation(x));

    // Eigenvalues lie in (0,1], so sum_m |c_m(q0)| bounds the integrand.
    Rational sup_bound = 0;
    for (const auto& [m, c] : reduced.coeffs()) sup_bound += c.eval_abs(q0);

    // Per-coordinate weight prefactor prod_k (1 - q0^{2k}).
    Rational prefactor = 1;
    for (int k = 1; k <= sig.ell; ++k) prefactor *= 1 - rational_pow(q0, 2 * k);

    std::vector<Rational> q_even_pow{1};  // q_even_pow[t] = q0^{2t}
    auto q2p = [&](long t) -> const Rational& {
        while (static_cast<long>(q_even_pow.size()) <= t)
            q_even_pow.push_back(q_even_pow.back() * q0 * q0);
        return q_even_pow[static_cast<size_t>(t)];
    };

    // The truncated integral is accumulated as a Laurent polynomial in q and
    // evaluated once at the end; the box mass is tracked exactly as we go.
    QScalar integral_sym;
    Rational mass = 0;
    long points = 0;
    constexpr long kPointBudget = 50'000'000;
    std::vector<uint32_t> n(sig.ell, 0);
    for (unsigned shell = 0;; ++shell) {
        for_each_composition(sig.ell, shell, n, 0, [&](const std::vector<uint32_t>& idx) {
            ++points;
            // prefix[r] = n_1 + .. + n_r
            std::vector<long> prefix(sig.ell + 1, 0);
            for (int r = 1; r <= sig.ell; ++r) prefix[r] = prefix[r - 1] + idx[r - 1];
            long weight_exp = 0;
            for (int k = 1; k <= sig.ell; ++k) weight_exp += 2l * (sig.N - k) * idx[k - 1];
            mass += prefactor * q2p(weight_exp / 2);
            for (const auto& [m, c] : reduced.coeffs()) {
                long point_exp = 0;
                for (int j = 1; j <= sig.ell; ++j)
                    point_exp += 2l * m[j - 1] * prefix[sig.N - j];
                integral_sym += c.shifted(point_exp + weight_exp);
            }
        });
        // mass is an exact partial sum of a probability measure, so the
        // remaining tail 1 - mass is nonnegative.
        Rational bound = sup_bound * (1 - mass);
        if (bound <= tol) {
            QScalar pre_sym(1);
            for (int k = 1; k <= sig.ell; ++k) pre_sym *= one_minus_q2(static_cast<unsigned>(k));
            return NumericHaar{(pre_sym * integral_sym).eval(q0), bound, shell};
        }
        if (shell >= shell_cap || points > kPointBudget)
            throw std::runtime_error("haar_numeric: tolerance not reachable within shell cap");
    }
}

Rational haar_classical(const std::vector<uint32_t>& m) {
    const int ell = static_cast<int>(m.size());
    if (ell < 1) throw std::invalid_argument("haar_classical: empty exponent vector");
    Rational r = 1;
    unsigned partial = 0;
    for (int k = 1; k <= ell; ++k) {
        partial += m[k - 1];
        r *= Rational(k) / Rational(k + partial);
    }
    return r;
}

std::vector<CurvePoint> haar_curve(const NCPoly& x, const std::vector<Rational>& grid) {
    const QRat h = haar(x);
    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    for (const Rational& q : grid) {
        if (q <= 0 || q > 1) throw std::invalid_argument("haar_curve: grid value outside (0,1]");
        out.push_back({q, q == 1 ? h.limit_q1() : h.eval(q)});
    }
    return out;
}

}  // namespace qsphere
