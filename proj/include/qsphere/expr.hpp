#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qsphere/qmatrix.hpp"
#include "qsphere/scalarq.hpp"
#include "qsphere/sphere.hpp"

namespace qsphere {

/// Parse failure with a 0-based position into the input text.
struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t pos_, const std::string& what)
        : std::runtime_error(what + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

namespace ast {

enum class Kind { sum, product, power, scalar, z_atom, a_atom, u_atom };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Kind kind;

    // sum: children with signs; product: factors; power: single child
    std::vector<NodePtr> children;
    std::vector<int> signs;  // +1 / -1, sums only
    unsigned exponent = 0;   // powers only

    Rational coeff = 0;  // scalars
    long q_exp = 0;

    int index = 0;  // z/A atoms
    bool starred = false;
    int row = 0, col = 0;  // u atoms
};

NodePtr make_scalar(const Rational& coeff, long q_exp);
NodePtr make_z(int index, bool starred);
NodePtr make_a(int index);
NodePtr make_u(int row, int col);
NodePtr make_power(NodePtr base, unsigned exponent);
NodePtr make_product(std::vector<NodePtr> factors);
NodePtr make_sum(std::vector<NodePtr> terms, std::vector<int> signs);

}  // namespace ast

enum class ExprMode { scalar_only, sphere, matrix };

/// Parses the expression grammar, validating atom indices against the
/// signature and rejecting expressions mixing sphere and matrix atoms.
ast::NodePtr parse(const std::string& text, Signature sig);

ExprMode mode_of(const ast::NodePtr& node);

/// Grammar-conforming rendering; parse(pretty(x)) pretty-prints back to
/// pretty(x).
std::string pretty(const ast::NodePtr& node);

/// Evaluates in the sphere algebra; A-atoms expand through build_A.
NCPoly eval_sphere(const ast::NodePtr& node, Signature sig);

/// Evaluates in the quantum matrix algebra.
UPoly eval_matrix(const ast::NodePtr& node, int N);

}  // namespace qsphere
