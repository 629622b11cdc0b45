#include "qsphere/sphere.hpp"

#include <algorithm>
#include <sstream>

namespace qsphere {

uint32_t SphereMonomial::degree() const {
    uint32_t d = 0;
    for (uint32_t v : n) d += v;
    for (uint32_t v : m) d += v;
    return d;
}

bool SphereMonomial::is_identity() const {
    return std::all_of(n.begin(), n.end(), [](uint32_t v) { return v == 0; }) &&
           std::all_of(m.begin(), m.end(), [](uint32_t v) { return v == 0; });
}

Word SphereMonomial::word() const {
    Word w;
    const int N = static_cast<int>(n.size());
    for (int j = 1; j <= N; ++j)
        for (uint32_t k = 0; k < n[j - 1]; ++k) w.emplace_back(j, false);
    for (int j = N; j >= 1; --j)
        for (uint32_t k = 0; k < m[j - 1]; ++k) w.emplace_back(j, true);
    return w;
}

bool SphereMonomial::operator<(const SphereMonomial& o) const {
    uint32_t da = degree(), db = o.degree();
    if (da != db) return da < db;
    // lex on the sorted word: z-block ascending, then star-block by m_N..m_1
    if (n != o.n) return n < o.n;
    std::vector<uint32_t> ra(m.rbegin(), m.rend()), rb(o.m.rbegin(), o.m.rend());
    return ra < rb;
}

std::string SphereMonomial::str() const {
    if (is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](int j, bool starred, uint32_t e) {
        if (e == 0) return;
        if (!first) os << "*";
        first = false;
        os << "z" << j << (starred ? "'" : "");
        if (e > 1) os << "^" << e;
    };
    const int N = static_cast<int>(n.size());
    for (int j = 1; j <= N; ++j) emit(j, false, n[j - 1]);
    for (int j = N; j >= 1; --j) emit(j, true, m[j - 1]);
    return os.str();
}

NCPoly NCPoly::scalar(Signature sig, const QScalar& c) {
    NCPoly r(sig);
    r.add_term(SphereMonomial(sig.N), c);
    return r;
}

NCPoly NCPoly::generator(Signature sig, Letter l) {
    if (l.index < 1 || l.index > sig.N)
        throw std::invalid_argument("generator index out of range");
    NCPoly r(sig);
    SphereMonomial mono(sig.N);
    (l.starred ? mono.m : mono.n)[l.index - 1] = 1;
    r.add_term(mono, QScalar(1));
    return r;
}

uint32_t NCPoly::degree() const {
    uint32_t d = 0;
    for (const auto& [mono, c] : coeffs_) d = std::max(d, mono.degree());
    return d;
}

void NCPoly::add_term(const SphereMonomial& mono, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

NCPoly NCPoly::operator-() const {
    NCPoly r(sig_);
    for (const auto& [mono, c] : coeffs_) r.coeffs_.emplace(mono, -c);
    return r;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    if (sig_ != o.sig_) throw std::invalid_argument("signature mismatch");
    for (const auto& [mono, c] : o.coeffs_) add_term(mono, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    if (sig_ != o.sig_) throw std::invalid_argument("signature mismatch");
    for (const auto& [mono, c] : o.coeffs_) add_term(mono, -c);
    return *this;
}

NCPoly NCPoly::scaled(const QScalar& c) const {
    NCPoly r(sig_);
    if (c.is_zero()) return r;
    for (const auto& [mono, k] : coeffs_) r.coeffs_.emplace(mono, k * c);
    return r;
}

std::string NCPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        bool unit = c.is_one();
        if (!unit) {
            if (c.terms().size() == 1 && c.min_exp() == 0 && c.coeff(0).get_den() == 1 &&
                c.coeff(0) > 0)
                os << c.coeff(0).get_num();
            else
                os << "(" << c.str() << ")";
        }
        if (mono.is_identity()) {
            if (!unit) continue;
            os << "1";
        } else {
            if (!unit) os << "*";
            os << mono.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Rewriting engine.
//
// Oriented rules, applied at the leftmost reducible adjacent pair; each rule
// strictly decreases the word in the degree-then-lex order induced by
// z_1 < .. < z_N < z_N* < .. < z_1*, so rewriting terminates.
// ---------------------------------------------------------------------------

namespace {

struct PendingTerm {
    QScalar coeff;
    Word word;
};

Word splice(const Word& w, size_t p, std::initializer_list<Letter> repl) {
    Word r;
    r.reserve(w.size() - 2 + repl.size());
    r.insert(r.end(), w.begin(), w.begin() + p);
    r.insert(r.end(), repl.begin(), repl.end());
    r.insert(r.end(), w.begin() + p + 2, w.end());
    return r;
}

// Applies the rule at the leftmost redex of t.word, pushing the resulting
// terms on the stack. Returns false when the word is already canonical.
bool rewrite_step(PendingTerm& t, Signature sig, std::vector<PendingTerm>& stack) {
    const Word& w = t.word;
    const QScalar q_inv = QScalar::q_power(-1);
    const QScalar q_pos = QScalar::q_power(1);
    for (size_t p = 0; p + 1 < w.size(); ++p) {
        const Letter a = w[p], b = w[p + 1];
        if (!a.starred && !b.starred) {
            if (a.index > b.index) {
                stack.push_back({t.coeff * q_inv, splice(w, p, {b, a})});
                return true;
            }
        } else if (a.starred && b.starred) {
            if (a.index < b.index) {
                stack.push_back({t.coeff * q_inv, splice(w, p, {b, a})});
                return true;
            }
        } else if (a.starred && !b.starred) {
            if (a.index != b.index) {
                stack.push_back({t.coeff * q_pos, splice(w, p, {b, a})});
            } else {
                // z_j* z_j -> z_j z_j* + (1-q^2) sum_{i<j} z_i z_i*
                stack.push_back({t.coeff, splice(w, p, {b, a})});
                QScalar corr = t.coeff * (QScalar(1) - QScalar::q_power(2));
                for (int i = 1; i < a.index; ++i)
                    stack.push_back({corr, splice(w, p, {Letter(i, false), Letter(i, true)})});
            }
            return true;
        } else {
            // unstarred then starred: sorted unless it is the z_N z_N* junction
            if (a.index == sig.N && b.index == sig.N) {
                stack.push_back({t.coeff, splice(w, p, {})});
                for (int i = 1; i <= sig.ell; ++i)
                    stack.push_back({-t.coeff, splice(w, p, {Letter(i, false), Letter(i, true)})});
                return true;
            }
        }
    }
    return false;
}

SphereMonomial monomial_of_sorted(const Word& w, Signature sig) {
    SphereMonomial mono(sig.N);
    for (const Letter& l : w) ++(l.starred ? mono.m : mono.n)[l.index - 1];
    return mono;
}

void normalize_into(NCPoly& out, QScalar coeff, Word word, Signature sig) {
    std::vector<PendingTerm> stack;
    stack.push_back({std::move(coeff), std::move(word)});
    while (!stack.empty()) {
        PendingTerm t = std::move(stack.back());
        stack.pop_back();
        if (t.coeff.is_zero()) continue;
        if (!rewrite_step(t, sig, stack)) out.add_term(monomial_of_sorted(t.word, sig), t.coeff);
    }
}

}  // namespace

NCPoly normal_form(const Word& word, Signature sig) {
    for (const Letter& l : word)
        if (l.index < 1 || l.index > sig.N)
            throw std::invalid_argument("letter index out of range for signature");
    NCPoly out(sig);
    normalize_into(out, QScalar(1), word, sig);
    return out;
}

NCPoly normal_form(const NCPoly& x) {
    NCPoly out(x.signature());
    for (const auto& [mono, c] : x.coeffs()) normalize_into(out, c, mono.word(), x.signature());
    return out;
}

NCPoly mul(const NCPoly& a, const NCPoly& b) {
    if (a.signature() != b.signature()) throw std::invalid_argument("signature mismatch");
    NCPoly out(a.signature());
    for (const auto& [ma, ca] : a.coeffs()) {
        const Word wa = ma.word();
        for (const auto& [mb, cb] : b.coeffs()) {
            Word w = wa;
            const Word wb = mb.word();
            w.insert(w.end(), wb.begin(), wb.end());
            normalize_into(out, ca * cb, std::move(w), a.signature());
        }
    }
    return out;
}

NCPoly star(const NCPoly& a) {
    // On a sorted monomial the involution just swaps the two exponent blocks;
    // coefficients are rational, so conjugation is the identity on them.
    NCPoly out(a.signature());
    for (const auto& [mono, c] : a.coeffs()) {
        SphereMonomial s = mono;
        std::swap(s.n, s.m);
        out.add_term(s, c);
    }
    return out;
}

NCPoly pow(const NCPoly& a, unsigned e) {
    NCPoly r = NCPoly::one(a.signature());
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

NCPoly build_A(int j, Signature sig) {
    if (j < 0 || j > sig.N) throw std::invalid_argument("build_A: index out of range");
    NCPoly out(sig);
    for (int i = 1; i <= j; ++i)
        normalize_into(out, QScalar(1), Word{Letter(i, false), Letter(i, true)}, sig);
    return out;
}

}  // namespace qsphere
