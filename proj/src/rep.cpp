#include "qsphere/rep.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qsphere {

long BasisIndexer::dim() const {
    long r = 2l * M + 1;
    for (int i = 0; i < ell; ++i) r *= d;
    return r;
}

long BasisIndexer::flat(const std::vector<int>& n, int m) const {
    long idx = 0;
    for (int i = 0; i < ell; ++i) idx = idx * d + n[i];
    return idx * (2l * M + 1) + (m + M);
}

void BasisIndexer::unflat(long idx, std::vector<int>& n, int& m) const {
    n.assign(ell, 0);
    m = static_cast<int>(idx % (2l * M + 1)) - M;
    idx /= 2l * M + 1;
    for (int i = ell - 1; i >= 0; --i) {
        n[i] = static_cast<int>(idx % d);
        idx /= d;
    }
}

long TruncParams::dim() const { return BasisIndexer{sig.ell, d, M}.dim(); }

RepOp RepOp::identity(long dim) {
    RepOp r(dim);
    for (long c = 0; c < dim; ++c) r.set(c, c, 1.0);
    return r;
}

RepOp RepOp::adjoint() const {
    RepOp r(dim());
    for (long c = 0; c < dim(); ++c)
        if (row_[c] >= 0 && val_[c] != 0.0) r.set(row_[c], c, val_[c]);
    return r;
}

RepOp compose(const RepOp& a, const RepOp& b) {
    RepOp r(a.dim());
    for (long c = 0; c < b.dim(); ++c) {
        auto first = b.apply(c);
        if (!first) continue;
        auto second = a.apply(first->first);
        if (!second) continue;
        r.set(c, second->first, first->second * second->second);
    }
    return r;
}

std::vector<RepOp> build_rep(const TruncParams& p, long dim_cap) {
    const BasisIndexer ix{p.sig.ell, p.d, p.M};
    const long dim = ix.dim();
    if (dim > dim_cap) throw std::overflow_error("build_rep: truncation exceeds dimension cap");

    const double q = p.q0;
    auto shift_weight = [&](int n) { return std::sqrt(1.0 - std::pow(q, 2.0 * (n + 1))); };

    std::vector<RepOp> rep;
    rep.reserve(p.sig.N + 1);
    rep.emplace_back(dim);  // index 0 unused

    std::vector<int> n(p.sig.ell), n2;
    int m = 0;
    for (int j = 1; j <= p.sig.N; ++j) {
        RepOp op(dim);
        const int wf = p.sig.N - j;  // factors 0..wf-1 carry the diagonal weight
        for (long c = 0; c < dim; ++c) {
            ix.unflat(c, n, m);
            double v = 1.0;
            for (int f = 0; f < wf; ++f) v *= std::pow(q, n[f]);
            if (j == 1) {
                int m2 = m + 1 > p.M ? -p.M : m + 1;  // cyclic torus shift
                op.set(c, ix.flat(n, m2), v);
            } else {
                if (n[wf] == p.d - 1) continue;  // shift truncated at the top
                v *= shift_weight(n[wf]);
                n2 = n;
                ++n2[wf];
                op.set(c, ix.flat(n2, m), v);
            }
        }
        rep.push_back(std::move(op));
    }
    return rep;
}

namespace {

// pi of a single letter.
RepOp letter_op(const std::vector<RepOp>& rep, Letter l) {
    return l.starred ? rep[l.index].adjoint() : rep[l.index];
}

RepOp word_op(const std::vector<RepOp>& rep, const Word& w, long dim) {
    RepOp op = RepOp::identity(dim);
    for (const Letter& l : w) op = compose(op, letter_op(rep, l));
    return op;
}

// Sparse column accumulator for sums of word operators.
using Column = std::map<long, double>;

void add_word_column(Column& col, const RepOp& op, long c, double scale) {
    if (auto e = op.apply(c)) col[e->first] += scale * e->second;
}

double column_norm(const Column& col) {
    double s = 0.0;
    for (const auto& [r, v] : col) s += v * v;
    return std::sqrt(s);
}

struct Relation {
    std::string family;
    std::vector<std::pair<double, Word>> terms;  // sum of scale * word
    double constant = 0.0;                       // subtracted multiple of the identity
};

std::vector<Relation> defining_relations(Signature sig, double q) {
    std::vector<Relation> rels;
    auto z = [](int j) { return Letter(j, false); };
    auto zs = [](int j) { return Letter(j, true); };

    for (int i = 1; i <= sig.N; ++i)
        for (int j = 1; j <= sig.N; ++j) {
            if (i < j)
                rels.push_back(
                    {"zz-commutation", {{1.0, {z(i), z(j)}}, {-q, {z(j), z(i)}}}, 0.0});
            if (i != j)
                rels.push_back(
                    {"star-z-commutation", {{1.0, {zs(i), z(j)}}, {-q, {z(j), zs(i)}}}, 0.0});
        }

    for (int j = 2; j <= sig.N; ++j) {
        Relation r{"star-commutator", {}, 0.0};
        r.terms.push_back({1.0, {zs(j), z(j)}});
        r.terms.push_back({-1.0, {z(j), zs(j)}});
        for (int i = 1; i < j; ++i) r.terms.push_back({-(1.0 - q * q), {z(i), zs(i)}});
        rels.push_back(std::move(r));
    }
    rels.push_back({"z1-normality", {{1.0, {zs(1), z(1)}}, {-1.0, {z(1), zs(1)}}}, 0.0});

    Relation sum{"sphere-sum", {}, 1.0};
    for (int i = 1; i <= sig.N; ++i) sum.terms.push_back({1.0, {z(i), zs(i)}});
    rels.push_back(std::move(sum));
    return rels;
}

}  // namespace

std::vector<ResidualReport> relation_residual(const TruncParams& p, int interior_margin) {
    if (interior_margin < 1 || interior_margin >= p.d)
        throw std::invalid_argument("relation_residual: interior margin out of range");
    const BasisIndexer ix{p.sig.ell, p.d, p.M};
    const long dim = ix.dim();
    const std::vector<RepOp> rep = build_rep(p);

    std::vector<ResidualReport> out;
    auto family_slot = [&](const std::string& name) -> ResidualReport& {
        for (auto& r : out)
            if (r.family == name) return r;
        out.push_back({name, 0.0, 0.0});
        return out.back();
    };

    std::vector<int> n(p.sig.ell);
    int m = 0;
    for (const Relation& rel : defining_relations(p.sig, p.q0)) {
        std::vector<std::pair<double, RepOp>> ops;
        ops.reserve(rel.terms.size());
        for (const auto& [scale, w] : rel.terms) ops.push_back({scale, word_op(rep, w, dim)});

        ResidualReport& rr = family_slot(rel.family);
        for (long c = 0; c < dim; ++c) {
            Column col;
            for (const auto& [scale, op] : ops) add_word_column(col, op, c, scale);
            if (rel.constant != 0.0) col[c] -= rel.constant;
            const double norm = column_norm(col);
            rr.full = std::max(rr.full, norm);
            ix.unflat(c, n, m);
            bool interior = true;
            for (int v : n)
                if (v > p.d - 1 - interior_margin) interior = false;
            if (interior) rr.interior = std::max(rr.interior, norm);
        }
    }
    return out;
}

DiagonalReport diagonal_consistency(const NCPoly& x, const TruncParams& p) {
    if (x.signature() != p.sig)
        throw std::invalid_argument("diagonal_consistency: signature mismatch");
    const APoly reduced = simplex_reduce(x);  // throws on unmatched input
    const BasisIndexer ix{p.sig.ell, p.d, p.M};
    const long dim = ix.dim();
    const std::vector<RepOp> rep = build_rep(p);

    std::vector<std::pair<double, RepOp>> terms;
    for (const auto& [mono, c] : x.coeffs())
        terms.push_back({c.eval_double(p.q0), word_op(rep, mono.word(), dim)});

    DiagonalReport report;
    std::vector<int> n(p.sig.ell);
    int m = 0;
    for (long c = 0; c < dim; ++c) {
        Column col;
        for (const auto& [scale, op] : terms) add_word_column(col, op, c, scale);
        ix.unflat(c, n, m);
        // expected diagonal value: the reduced polynomial at the eigenvalues
        // a_j = q^{2(n_1+..+n_{N-j})}
        double expected = 0.0;
        for (const auto& [mexp, coeff] : reduced.coeffs()) {
            double v = coeff.eval_double(p.q0);
            for (int j = 1; j <= p.sig.ell; ++j) {
                long s = 0;
                for (int i = 0; i < p.sig.N - j; ++i) s += n[i];
                v *= std::pow(p.q0, 2.0 * s * mexp[j - 1]);
            }
            expected += v;
        }
        double diag = 0.0;
        for (const auto& [r, v] : col) {
            if (r == c)
                diag = v;
            else
                report.offdiag = std::max(report.offdiag, std::abs(v));
        }
        report.diag_dev = std::max(report.diag_dev, std::abs(diag - expected));
    }
    return report;
}

}  // namespace qsphere
