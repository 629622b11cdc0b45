#include "qsphere/qmatrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qsphere {

UPoly UPoly::scalar(int N, const QScalar& c) {
    UPoly r(N);
    r.add_term({}, c);
    return r;
}

UPoly UPoly::generator(int N, UIndex u) {
    if (u.row < 1 || u.row > N || u.col < 1 || u.col > N)
        throw std::invalid_argument("generator index out of range");
    UPoly r(N);
    r.add_term({u}, QScalar(1));
    return r;
}

void UPoly::add_term(const UWord& w, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

UPoly UPoly::operator-() const {
    UPoly r(N_);
    for (const auto& [w, c] : coeffs_) r.coeffs_.emplace(w, -c);
    return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (N_ != o.N_) throw std::invalid_argument("UPoly: size mismatch");
    for (const auto& [w, c] : o.coeffs_) add_term(w, c);
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (N_ != o.N_) throw std::invalid_argument("UPoly: size mismatch");
    for (const auto& [w, c] : o.coeffs_) add_term(w, -c);
    return *this;
}

UPoly UPoly::scaled(const QScalar& c) const {
    UPoly r(N_);
    if (c.is_zero()) return r;
    for (const auto& [w, k] : coeffs_) r.coeffs_.emplace(w, k * c);
    return r;
}

std::string UPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : coeffs_) {
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
        if (w.empty()) {
            if (unit) os << "1";
            continue;
        }
        bool lead = unit;
        for (const UIndex& u : w) {
            if (!lead) os << "*";
            lead = false;
            os << u.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Rewriting to the row-major sorted basis.
// ---------------------------------------------------------------------------

namespace {

struct PendingTerm {
    QScalar coeff;
    UWord word;
};

UWord splice(const UWord& w, size_t p, std::initializer_list<UIndex> repl) {
    UWord r;
    r.reserve(w.size() - 2 + repl.size());
    r.insert(r.end(), w.begin(), w.begin() + p);
    r.insert(r.end(), repl.begin(), repl.end());
    r.insert(r.end(), w.begin() + p + 2, w.end());
    return r;
}

bool rewrite_step(PendingTerm& t, int N, URuleSet rules, std::vector<PendingTerm>& stack) {
    const UWord& w = t.word;
    for (size_t p = 0; p + 1 < w.size(); ++p) {
        const UIndex a = w[p], b = w[p + 1];
        if (a.rank(N) <= b.rank(N)) continue;
        if (a.row == b.row || a.col == b.col) {
            stack.push_back({t.coeff * QScalar::q_power(-1), splice(w, p, {b, a})});
        } else if (a.row > b.row && a.col < b.col) {
            stack.push_back({t.coeff, splice(w, p, {b, a})});
        } else {
            // a = u_{jl}, b = u_{ik} with i<j, k<l:
            // u_{jl} u_{ik} -> u_{ik} u_{jl} - (q - q^{-1}) u_{jk} u_{il}
            stack.push_back({t.coeff, splice(w, p, {b, a})});
            if (rules == URuleSet::full) {
                QScalar cq = QScalar::q_power(1) - QScalar::q_power(-1);
                stack.push_back({-(t.coeff * cq),
                                 splice(w, p, {UIndex(a.row, b.col), UIndex(b.row, a.col)})});
            }
        }
        return true;
    }
    return false;
}

void normalize_into(UPoly& out, QScalar coeff, UWord word, URuleSet rules) {
    const int N = out.N();
    std::vector<PendingTerm> stack;
    stack.push_back({std::move(coeff), std::move(word)});
    while (!stack.empty()) {
        PendingTerm t = std::move(stack.back());
        stack.pop_back();
        if (t.coeff.is_zero()) continue;
        if (!rewrite_step(t, N, rules, stack)) out.add_term(t.word, t.coeff);
    }
}

}  // namespace

UPoly u_normal_form(const UWord& word, int N, URuleSet rules) {
    for (const UIndex& u : word)
        if (u.row < 1 || u.row > N || u.col < 1 || u.col > N)
            throw std::invalid_argument("u_normal_form: index out of range");
    UPoly out(N);
    normalize_into(out, QScalar(1), word, rules);
    return out;
}

UPoly u_normal_form(const UPoly& x, URuleSet rules) {
    UPoly out(x.N());
    for (const auto& [w, c] : x.coeffs()) normalize_into(out, c, w, rules);
    return out;
}

UPoly u_mul(const UPoly& a, const UPoly& b, URuleSet rules) {
    if (a.N() != b.N()) throw std::invalid_argument("u_mul: size mismatch");
    UPoly out(a.N());
    for (const auto& [wa, ca] : a.coeffs())
        for (const auto& [wb, cb] : b.coeffs()) {
            UWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            normalize_into(out, ca * cb, std::move(w), rules);
        }
    return out;
}

int inversions(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    for (int v : sigma) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("inversions: not a permutation");
        seen[v - 1] = true;
    }
    int count = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (sigma[a] > sigma[b]) ++count;
    return count;
}

UPoly quantum_minor(std::vector<int> I, std::vector<int> J, int N) {
    if (I.empty() || I.size() != J.size())
        throw std::invalid_argument("quantum_minor: rows and columns must be nonempty, equal size");
    std::sort(I.begin(), I.end());
    std::sort(J.begin(), J.end());
    if (std::adjacent_find(I.begin(), I.end()) != I.end() ||
        std::adjacent_find(J.begin(), J.end()) != J.end())
        throw std::invalid_argument("quantum_minor: repeated index");
    if (I.front() < 1 || I.back() > N || J.front() < 1 || J.back() > N)
        throw std::invalid_argument("quantum_minor: index out of range");

    const int n = static_cast<int>(I.size());
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 1);
    UPoly out(N);
    do {
        const int inv = inversions(sigma);
        UWord w(n);
        for (int t = 0; t < n; ++t) w[t] = UIndex(I[sigma[t] - 1], J[t]);
        QScalar c = QScalar::q_power(inv);
        if (inv % 2 != 0) c = -c;
        normalize_into(out, c, std::move(w), URuleSet::full);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

UPoly quantum_determinant(int N) {
    std::vector<int> all(N);
    std::iota(all.begin(), all.end(), 1);
    return quantum_minor(all, all, N);
}

CommutationWitness check_central(int N, URuleSet rules) {
    if (N < 2) throw std::invalid_argument("check_central: N must be >= 2");
    const UPoly det = quantum_determinant(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const UPoly u = UPoly::generator(N, UIndex(i, j));
            const UPoly res = u_mul(det, u, rules) - u_mul(u, det, rules);
            if (!res.is_zero()) return {false, i, j, res.str()};
        }
    return {};
}

CommutationWitness check_laplace(int N, URuleSet rules) {
    if (N < 2) throw std::invalid_argument("check_laplace: N must be >= 2");
    const UPoly det = quantum_determinant(N);
    std::vector<int> all(N);
    std::iota(all.begin(), all.end(), 1);
    auto without = [&](int k) {
        std::vector<int> v;
        for (int x : all)
            if (x != k) v.push_back(x);
        return v;
    };
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            UPoly acc = UPoly::zero(N);
            for (int k = 1; k <= N; ++k) {
                const UPoly cof = quantum_minor(without(j), without(k), N);
                QScalar sign = QScalar::q_power(k - j);
                if ((k - j) % 2 != 0) sign = -sign;
                acc += u_mul(UPoly::generator(N, UIndex(i, k)), cof, rules).scaled(sign);
            }
            if (i == j) acc -= det;
            if (!acc.is_zero()) return {false, i, j, acc.str()};
        }
    return {};
}

}  // namespace qsphere
