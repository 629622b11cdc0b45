// Command-line front end for the quantum sphere engine.
//
// Exit codes: 0 success, 2 parse error, 3 invalid parameter,
// 4 internal check failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qsphere/expr.hpp"
#include "qsphere/haar.hpp"
#include "qsphere/io.hpp"
#include "qsphere/qmatrix.hpp"
#include "qsphere/rep.hpp"
#include "qsphere/scalarq.hpp"
#include "qsphere/sphere.hpp"

namespace {

using namespace qsphere;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitParam = 3;
constexpr int kExitCheck = 4;

struct Options {
    int ell = 0;
    int N = 0;
    bool json_out = false;
    std::string expr_text;
};

Signature signature_of(const Options& o) {
    if (o.ell > 0 && o.N > 0 && o.N != o.ell + 1)
        throw std::invalid_argument("--ell and --N disagree");
    if (o.N > 0) {
        if (o.N < 2) throw std::invalid_argument("--N must be >= 2");
        return Signature(o.N - 1);
    }
    return Signature(o.ell > 0 ? o.ell : 1);
}

std::string read_expression(const Options& o) {
    if (!o.expr_text.empty()) return o.expr_text;
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    std::string text = buf.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

Rational in_unit_interval(const std::string& text, bool allow_one) {
    Rational q = parse_rational(text);
    if (q <= 0 || q > 1 || (!allow_one && q == 1))
        throw std::invalid_argument("q must lie in (0,1" + std::string(allow_one ? "]" : ")"));
    return q;
}

void emit(const Options& o, const std::string& input, const json& result,
          const std::string& text) {
    if (o.json_out) {
        json out{{"signature", to_json(signature_of(o))}, {"input", input}, {"result", result}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << text << "\n";
    }
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty index in list");
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::invalid_argument("empty index list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Haar state engine for the odd quantum spheres"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--ell", o.ell, "sphere rank (generators z1..z(ell+1))");
    app.add_option("--N", o.N, "number of generators, N = ell + 1");
    app.add_flag("--json", o.json_out, "emit JSON on stdout");

    std::string at_q, prec_digits, grid_spec, rows, cols, rep_q;
    bool exact = false, include_one = false;
    int rep_dim = 8, rep_torus = 2, laplace_N = 2, central_N = 2;

    auto add_expr = [&](CLI::App* sub) {
        sub->add_option("expr", o.expr_text, "expression (reads stdin when omitted)");
    };

    CLI::App* normalize = app.add_subcommand("normalize", "rewrite to the canonical basis");
    add_expr(normalize);

    CLI::App* haar_cmd = app.add_subcommand("haar", "Haar state of a sphere expression");
    add_expr(haar_cmd);
    haar_cmd->add_flag("--exact", exact, "print the exact rational function of q");
    haar_cmd->add_option("--at-q", at_q, "evaluate at rational q in (0,1]");
    haar_cmd->add_option("--prec", prec_digits, "decimal digits for evaluated output");

    CLI::App* expect_cmd = app.add_subcommand("expect", "conditional expectation");
    add_expr(expect_cmd);

    CLI::App* theta_cmd = app.add_subcommand("theta", "modular automorphism");
    add_expr(theta_cmd);

    CLI::App* simplex_cmd =
        app.add_subcommand("simplex", "rewrite a matched expression in A1..Aell");
    add_expr(simplex_cmd);

    CLI::App* qminor = app.add_subcommand("qminor", "quantum minor determinant");
    qminor->add_option("--rows", rows, "row set, e.g. 1,2")->required();
    qminor->add_option("--cols", cols, "column set, e.g. 1,2")->required();

    CLI::App* central = app.add_subcommand("central-check", "quantum determinant centrality");
    central->add_option("--size", central_N, "matrix size N");

    CLI::App* laplace = app.add_subcommand("laplace-check", "row Laplace expansion identity");
    laplace->add_option("--size", laplace_N, "matrix size N");

    CLI::App* repcheck = app.add_subcommand("repcheck", "truncated representation residuals");
    repcheck->add_option("--q", rep_q, "deformation parameter in (0,1)")->required();
    repcheck->add_option("--dim", rep_dim, "truncation size per shift factor");
    repcheck->add_option("--torus", rep_torus, "half-size of the cyclic torus factor");

    CLI::App* curve = app.add_subcommand("curve", "Haar values along a grid of q");
    add_expr(curve);
    curve->add_option("--grid", grid_spec, "a:b:steps with rational endpoints")->required();
    curve->add_flag("--include-1", include_one, "append the q = 1 limit");

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        const Signature sig = signature_of(o);

        if (sub == normalize || sub == expect_cmd || sub == theta_cmd || sub == simplex_cmd) {
            const std::string input = read_expression(o);
            const auto tree = parse(input, sig);
            if (mode_of(tree) == ExprMode::matrix) {
                if (sub != normalize)
                    throw std::invalid_argument("matrix expressions support only 'normalize'");
                UPoly x = eval_matrix(tree, sig.N);
                emit(o, input, to_json(x), x.str());
                return kExitOk;
            }
            NCPoly x = eval_sphere(tree, sig);
            if (sub == expect_cmd) x = expectation(x);
            if (sub == theta_cmd) x = theta(x);
            if (sub == simplex_cmd) {
                if (expectation(x) != x)
                    throw std::invalid_argument("simplex: expression is not in the matched span");
                APoly a = simplex_reduce(x);
                emit(o, input, to_json(a), a.str());
                return kExitOk;
            }
            emit(o, input, to_json(x), x.str());
            return kExitOk;
        }

        if (sub == haar_cmd) {
            const std::string input = read_expression(o);
            const auto tree = parse(input, sig);
            const NCPoly x = eval_sphere(tree, sig);
            const QRat h = haar(x);
            if (!at_q.empty()) {
                const Rational q0 = in_unit_interval(at_q, true);
                const Rational v = q0 == 1 ? h.limit_q1() : h.eval(q0);
                std::ostringstream os;
                if (prec_digits.empty())
                    os << v;
                else
                    os << to_decimal(v, std::stoi(prec_digits));
                emit(o, input, to_json(QRat(QScalar(v))), os.str());
            } else {
                emit(o, input, to_json(h), h.str());
            }
            return kExitOk;
        }

        if (sub == qminor) {
            const UPoly m = quantum_minor(parse_index_list(rows), parse_index_list(cols), sig.N);
            emit(o, "D[" + rows + ";" + cols + "]", to_json(m), m.str());
            return kExitOk;
        }

        if (sub == central || sub == laplace) {
            int N = sub == central ? central_N : laplace_N;
            if (o.N > 0 || o.ell > 0) N = sig.N;
            const CommutationWitness w =
                sub == central ? check_central(N) : check_laplace(N);
            std::ostringstream os;
            if (w.ok)
                os << "ok: N = " << N;
            else
                os << "FAILED at (" << w.row << "," << w.col << "): " << w.residual;
            emit(o, sub->get_name(),
                 json{{"ok", w.ok}, {"row", w.row}, {"col", w.col}, {"residual", w.residual}},
                 os.str());
            return w.ok ? kExitOk : kExitCheck;
        }

        if (sub == repcheck) {
            const Rational q0 = in_unit_interval(rep_q, false);
            const TruncParams params(sig, q0.get_d(), rep_dim, rep_torus);
            const auto reports = relation_residual(params, 2);
            bool ok = true;
            std::ostringstream os;
            json jr = json::array();
            for (const auto& r : reports) {
                ok = ok && r.interior <= 1e-9;
                os << r.family << ": interior " << r.interior << ", full " << r.full << "\n";
                jr.push_back(json{{"family", r.family},
                                  {"interior", r.interior},
                                  {"full", r.full}});
            }
            std::string text = os.str();
            if (!text.empty()) text.pop_back();
            emit(o, "repcheck", jr, text);
            return ok ? kExitOk : kExitCheck;
        }

        if (sub == curve) {
            const std::string input = read_expression(o);
            const auto tree = parse(input, sig);
            const NCPoly x = eval_sphere(tree, sig);
            // grid a:b:steps -> `steps` evenly spaced rational points from a to b
            std::vector<Rational> grid;
            {
                auto c1 = grid_spec.find(':'), c2 = grid_spec.rfind(':');
                if (c1 == std::string::npos || c1 == c2)
                    throw std::invalid_argument("grid must be a:b:steps");
                const Rational a = parse_rational(grid_spec.substr(0, c1));
                const Rational b = parse_rational(grid_spec.substr(c1 + 1, c2 - c1 - 1));
                const long steps = std::stol(grid_spec.substr(c2 + 1));
                if (steps < 1) throw std::invalid_argument("grid needs at least one step");
                for (long k = 0; k < steps; ++k)
                    grid.push_back(steps == 1 ? a : a + (b - a) * Rational(k) / Rational(steps - 1));
                if (include_one) grid.push_back(1);
            }
            const auto points = haar_curve(x, grid);
            std::ostringstream os;
            json jr = json::array();
            for (const auto& pt : points) {
                os << pt.q << "\t" << pt.value << "\n";
                std::ostringstream vq, vv;
                vq << pt.q;
                vv << pt.value;
                jr.push_back(json{{"q", vq.str()}, {"value", vv.str()}});
            }
            std::string text = os.str();
            if (!text.empty()) text.pop_back();
            emit(o, input, jr, text);
            return kExitOk;
        }

        throw std::logic_error("unhandled subcommand");
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCheck;
    }
}
