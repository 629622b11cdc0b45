#include "qsphere/expr.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace qsphere {

namespace ast {

NodePtr make_scalar(const Rational& coeff, long q_exp) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::scalar;
    n->coeff = coeff;
    n->q_exp = q_exp;
    return n;
}

NodePtr make_z(int index, bool starred) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::z_atom;
    n->index = index;
    n->starred = starred;
    return n;
}

NodePtr make_a(int index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::a_atom;
    n->index = index;
    return n;
}

NodePtr make_u(int row, int col) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::u_atom;
    n->row = row;
    n->col = col;
    return n;
}

NodePtr make_power(NodePtr base, unsigned exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::power;
    n->children.push_back(std::move(base));
    n->exponent = exponent;
    return n;
}

NodePtr make_product(std::vector<NodePtr> factors) {
    if (factors.size() == 1) return factors.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    n->children = std::move(factors);
    return n;
}

NodePtr make_sum(std::vector<NodePtr> terms, std::vector<int> signs) {
    if (terms.size() == 1 && signs.front() == 1) return terms.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::sum;
    n->children = std::move(terms);
    n->signs = std::move(signs);
    return n;
}

}  // namespace ast

namespace {

using ast::Kind;
using ast::Node;
using ast::NodePtr;

class Parser {
public:
    Parser(const std::string& text, Signature sig) : text_(text), sig_(sig) {}

    NodePtr run() {
        skip_ws();
        if (eof()) throw ParseError(pos_, "empty expression");
        NodePtr e = parse_expr();
        skip_ws();
        if (!eof()) throw ParseError(pos_, "unexpected trailing input");
        if (z_pos_ != npos && u_pos_ != npos)
            throw ParseError(std::max(z_pos_, u_pos_),
                             "cannot mix z/A atoms with u atoms in one expression");
        return e;
    }

private:
    static constexpr size_t npos = static_cast<size_t>(-1);

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char ch) {
        skip_ws();
        if (peek() == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char ch, const char* what) {
        if (!accept(ch)) throw ParseError(pos_, std::string("expected ") + what);
    }

    long parse_int() {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(start, "expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000000) throw ParseError(start, "integer literal too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    unsigned parse_uint() {
        skip_ws();
        if (peek() == '-') throw ParseError(pos_, "expected nonnegative integer");
        return static_cast<unsigned>(parse_int());
    }

    NodePtr parse_expr() {
        std::vector<NodePtr> terms;
        std::vector<int> signs;
        terms.push_back(parse_term());
        signs.push_back(1);
        for (;;) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                signs.push_back(peek() == '+' ? 1 : -1);
                ++pos_;
                terms.push_back(parse_term());
            } else {
                break;
            }
        }
        return ast::make_sum(std::move(terms), std::move(signs));
    }

    NodePtr parse_term() {
        std::vector<NodePtr> factors;
        factors.push_back(parse_factor());
        while (accept('*')) factors.push_back(parse_factor());
        return ast::make_product(std::move(factors));
    }

    // scalar := ("(" int "/" uint ")" | int) ("q^" int)? | "q^" int
    NodePtr parse_factor() {
        skip_ws();
        const size_t start = pos_;
        const char c = peek();
        if (c == '(') {
            // a parenthesized fraction is a scalar; anything else is a subexpression
            size_t save = pos_;
            if (auto frac = try_fraction()) return finish_scalar(*frac);
            pos_ = save;
            expect('(', "'('");
            NodePtr e = parse_expr();
            expect(')', "')'");
            return maybe_power(std::move(e));
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return finish_scalar(Rational(parse_int()));
        if (c == 'q') {
            ++pos_;
            expect('^', "'^' after q");
            return ast::make_scalar(1, parse_int());
        }
        if (c == 'z') {
            ++pos_;
            int idx = static_cast<int>(parse_uint());
            if (idx < 1 || idx > sig_.N)
                throw ParseError(start, "z index out of range for the signature");
            bool starred = false;
            if (peek() == '\'') {
                starred = true;
                ++pos_;
            }
            if (z_pos_ == npos) z_pos_ = start;
            return maybe_power(ast::make_z(idx, starred));
        }
        if (c == 'A') {
            ++pos_;
            int idx = static_cast<int>(parse_uint());
            if (idx < 0 || idx > sig_.N)
                throw ParseError(start, "A index out of range for the signature");
            if (z_pos_ == npos) z_pos_ = start;
            return maybe_power(ast::make_a(idx));
        }
        if (c == 'u') {
            ++pos_;
            expect('[', "'[' after u");
            int row = static_cast<int>(parse_uint());
            expect(',', "','");
            int col = static_cast<int>(parse_uint());
            expect(']', "']'");
            if (row < 1 || row > sig_.N || col < 1 || col > sig_.N)
                throw ParseError(start, "u index out of range for the signature");
            if (u_pos_ == npos) u_pos_ = start;
            return maybe_power(ast::make_u(row, col));
        }
        throw ParseError(pos_, "expected scalar, atom or '('");
    }

    std::optional<Rational> try_fraction() {
        if (!accept('(')) return std::nullopt;
        skip_ws();
        if (peek() != '-' && !std::isdigit(static_cast<unsigned char>(peek())))
            return std::nullopt;
        long num = parse_int();
        skip_ws();
        if (peek() != '/') return std::nullopt;
        ++pos_;
        long den = static_cast<long>(parse_uint());
        if (den == 0) throw ParseError(pos_, "zero denominator");
        skip_ws();
        if (peek() != ')') return std::nullopt;
        ++pos_;
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    NodePtr finish_scalar(const Rational& coeff) {
        skip_ws();
        long q_exp = 0;
        if (peek() == 'q') {
            ++pos_;
            expect('^', "'^' after q");
            q_exp = parse_int();
        }
        return ast::make_scalar(coeff, q_exp);
    }

    NodePtr maybe_power(NodePtr base) {
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            return ast::make_power(std::move(base), parse_uint());
        }
        return base;
    }

    const std::string& text_;
    Signature sig_;
    size_t pos_ = 0;
    size_t z_pos_ = npos;
    size_t u_pos_ = npos;
};

ExprMode combine(ExprMode a, ExprMode b) {
    if (a == ExprMode::scalar_only) return b;
    if (b == ExprMode::scalar_only) return a;
    if (a != b) throw std::invalid_argument("mixed sphere/matrix expression");
    return a;
}

}  // namespace

ast::NodePtr parse(const std::string& text, Signature sig) { return Parser(text, sig).run(); }

ExprMode mode_of(const ast::NodePtr& node) {
    switch (node->kind) {
        case Kind::scalar:
            return ExprMode::scalar_only;
        case Kind::z_atom:
        case Kind::a_atom:
            return ExprMode::sphere;
        case Kind::u_atom:
            return ExprMode::matrix;
        default: {
            ExprMode m = ExprMode::scalar_only;
            for (const auto& ch : node->children) m = combine(m, mode_of(ch));
            return m;
        }
    }
}

std::string pretty(const ast::NodePtr& node) {
    std::ostringstream os;
    switch (node->kind) {
        case Kind::scalar: {
            const Rational& c = node->coeff;
            if (c.get_den() == 1)
                os << c.get_num();
            else
                os << "(" << c.get_num() << "/" << c.get_den() << ")";
            if (node->q_exp != 0) os << "q^" << node->q_exp;
            break;
        }
        case Kind::z_atom:
            os << "z" << node->index << (node->starred ? "'" : "");
            break;
        case Kind::a_atom:
            os << "A" << node->index;
            break;
        case Kind::u_atom:
            os << "u[" << node->row << "," << node->col << "]";
            break;
        case Kind::power: {
            const auto& base = node->children.front();
            const bool atom = base->kind == Kind::z_atom || base->kind == Kind::a_atom ||
                              base->kind == Kind::u_atom;
            if (atom)
                os << pretty(base);
            else
                os << "(" << pretty(base) << ")";
            os << "^" << node->exponent;
            break;
        }
        case Kind::product:
            for (size_t i = 0; i < node->children.size(); ++i) {
                if (i) os << "*";
                const auto& ch = node->children[i];
                if (ch->kind == Kind::sum)
                    os << "(" << pretty(ch) << ")";
                else
                    os << pretty(ch);
            }
            break;
        case Kind::sum:
            for (size_t i = 0; i < node->children.size(); ++i) {
                if (i)
                    os << (node->signs[i] > 0 ? " + " : " - ");
                else if (node->signs[i] < 0)
                    os << "0 - ";  // the grammar has no unary minus
                os << pretty(node->children[i]);
            }
            break;
    }
    return os.str();
}

NCPoly eval_sphere(const ast::NodePtr& node, Signature sig) {
    switch (node->kind) {
        case Kind::scalar:
            return NCPoly::scalar(sig, QScalar::q_power(node->q_exp, node->coeff));
        case Kind::z_atom:
            return NCPoly::generator(sig, Letter(node->index, node->starred));
        case Kind::a_atom:
            return build_A(node->index, sig);
        case Kind::u_atom:
            throw std::invalid_argument("matrix atom in sphere expression");
        case Kind::power:
            return pow(eval_sphere(node->children.front(), sig), node->exponent);
        case Kind::product: {
            NCPoly r = NCPoly::one(sig);
            for (const auto& ch : node->children) r = mul(r, eval_sphere(ch, sig));
            return r;
        }
        case Kind::sum: {
            NCPoly r = NCPoly::zero(sig);
            for (size_t i = 0; i < node->children.size(); ++i) {
                NCPoly t = eval_sphere(node->children[i], sig);
                if (node->signs[i] > 0)
                    r += t;
                else
                    r -= t;
            }
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

UPoly eval_matrix(const ast::NodePtr& node, int N) {
    switch (node->kind) {
        case Kind::scalar:
            return UPoly::scalar(N, QScalar::q_power(node->q_exp, node->coeff));
        case Kind::u_atom:
            return UPoly::generator(N, UIndex(node->row, node->col));
        case Kind::z_atom:
        case Kind::a_atom:
            throw std::invalid_argument("sphere atom in matrix expression");
        case Kind::power: {
            UPoly base = eval_matrix(node->children.front(), N);
            UPoly r = UPoly::one(N);
            for (unsigned i = 0; i < node->exponent; ++i) r = u_mul(r, base);
            return r;
        }
        case Kind::product: {
            UPoly r = UPoly::one(N);
            for (const auto& ch : node->children) r = u_mul(r, eval_matrix(ch, N));
            return r;
        }
        case Kind::sum: {
            UPoly r = UPoly::zero(N);
            for (size_t i = 0; i < node->children.size(); ++i) {
                UPoly t = eval_matrix(node->children[i], N);
                if (node->signs[i] > 0)
                    r += t;
                else
                    r -= t;
            }
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace qsphere
