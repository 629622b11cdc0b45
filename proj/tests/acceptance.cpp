// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are fixed constants here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qsphere/expr.hpp"
#include "qsphere/haar.hpp"
#include "qsphere/qmatrix.hpp"
#include "qsphere/rep.hpp"
#include "qsphere/scalarq.hpp"
#include "qsphere/sphere.hpp"
#include "support.hpp"

using namespace qsphere;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && elapsed > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] %2d. %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::vector<std::vector<uint32_t>> exponents_up_to(int ell, unsigned total) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur(ell, 0);
    auto rec = [&](auto&& self, int pos, unsigned left) -> void {
        if (pos == ell) {
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

NCPoly pair_poly(Signature sig, int j) {
    return mul(NCPoly::generator(sig, Letter(j, false)),
               NCPoly::generator(sig, Letter(j, true)));
}

// A^m expansions for all |m| <= total, built incrementally.
std::map<std::vector<uint32_t>, NCPoly> a_power_table(Signature sig, unsigned total) {
    std::map<std::vector<uint32_t>, NCPoly> table;
    table.emplace(std::vector<uint32_t>(sig.ell, 0), NCPoly::one(sig));
    std::vector<NCPoly> gens;
    for (int j = 1; j <= sig.ell; ++j) gens.push_back(build_A(j, sig));
    for (const auto& m : exponents_up_to(sig.ell, total)) {
        if (table.count(m)) continue;
        int j = 0;
        while (m[j] == 0) ++j;
        std::vector<uint32_t> prev = m;
        --prev[j];
        table.emplace(m, mul(gens[j], table.at(prev)));
    }
    return table;
}

}  // namespace

int main() {
    criterion(1, "closed-form pipeline equality h(A^m) for ell <= 3, |m| <= 5", 60.0,
              [](std::string& detail) {
                  for (int ell = 1; ell <= 3; ++ell) {
                      const Signature sig(ell);
                      auto table = a_power_table(sig, 5);
                      for (const auto& [m, x] : table) {
                          if (haar(x) != haar_A(m, sig)) {
                              detail = "mismatch at ell=" + std::to_string(ell);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(2, "multiplication-by-A_j recurrence for j <= ell <= 3, |m| <= 5", 0.0,
              [](std::string& detail) {
                  for (int ell = 1; ell <= 3; ++ell) {
                      const Signature sig(ell);
                      for (int j = 1; j <= ell; ++j)
                          for (const auto& mj : exponents_up_to(j, 5)) {
                              std::vector<uint32_t> m(ell, 0);
                              std::copy(mj.begin(), mj.end(), m.begin());
                              unsigned total = 0;
                              for (uint32_t v : m) total += v;
                              std::vector<uint32_t> next = m;
                              ++next[j - 1];
                              if (haar_A(next, sig) !=
                                  QRat::qint_ratio(j + total, sig.N + total) * haar_A(m, sig)) {
                                  detail = "ell=" + std::to_string(ell) +
                                           " j=" + std::to_string(j);
                                  return false;
                              }
                          }
                  }
                  return true;
              });

    criterion(3, "h(z1 z1*) = (1-q^2)/(1-q^2N), value 4/5 at N=2, q=1/2", 0.0,
              [](std::string& detail) {
                  for (int N = 2; N <= 4; ++N) {
                      const Signature sig(N - 1);
                      if (haar(pair_poly(sig, 1)) !=
                          QRat(one_minus_q2(1), one_minus_q2(static_cast<unsigned>(N)))) {
                          detail = "exact form at N=" + std::to_string(N);
                          return false;
                      }
                  }
                  const Signature sig(1);
                  const QRat h = haar(pair_poly(sig, 1));
                  if (rat_eval(h, Rational(1, 2)) != Rational(4, 5)) {
                      detail = "value at q=1/2";
                      return false;
                  }
                  const Rational cert(1, 1000000000000L);  // 1e-12
                  auto numeric = haar_numeric(pair_poly(sig, 1), Rational(1, 2), cert);
                  if (numeric.tail_bound > cert) {
                      detail = "tail bound not certified at 1e-12";
                      return false;
                  }
                  if (abs(numeric.value - Rational(4, 5)) > Rational(1, 10000000000L)) {
                      detail = "numeric value off by more than 1e-10";
                      return false;
                  }
                  return true;
              });

    criterion(4, "measure-oracle equivalence on 50 random monomials, q in {1/2, 4/5}", 120.0,
              [](std::string& detail) {
                  testgen::Rng rng(4001);
                  const Rational tol(1, 10000000000L);  // 1e-10
                  for (int i = 0; i < 50; ++i) {
                      const Signature sig(1 + i % 2);
                      NCPoly x(sig);
                      x.add_term(testgen::random_monomial(rng, sig, 8, i % 4 != 0), QScalar(1));
                      const QRat h = haar(x);
                      for (const Rational& q0 : {Rational(1, 2), Rational(4, 5)}) {
                          auto numeric = haar_numeric(x, q0, tol);
                          if (abs(numeric.value - rat_eval(h, q0)) > tol) {
                              detail = "monomial " + std::to_string(i);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(5, "modular property h(xy) = h(y theta(x)) on 200 random pairs", 0.0,
              [](std::string& detail) {
                  testgen::Rng rng(5001);
                  for (int i = 0; i < 200; ++i) {
                      const Signature sig(1 + i % 2);
                      NCPoly x = testgen::random_ncpoly(rng, sig, 2, 4);
                      NCPoly y = testgen::random_ncpoly(rng, sig, 2, 4);
                      if (haar(mul(x, y)) != haar(mul(y, theta(x)))) {
                          detail = "pair " + std::to_string(i);
                          return false;
                      }
                  }
                  const Signature sig(1);
                  NCPoly z2 = NCPoly::generator(sig, Letter(2, false));
                  NCPoly z2s = NCPoly::generator(sig, Letter(2, true));
                  QScalar den(1);
                  den.add_term(2, 1);
                  const QRat expected(QScalar::q_power(2), den);  // q^2/(1+q^2)
                  if (haar(mul(z2, z2s)) != expected ||
                      haar(mul(z2s, theta(z2))) != expected) {
                      detail = "worked case h(z2 z2*)";
                      return false;
                  }
                  return true;
              });

    criterion(6, "h(E(x)) = h(x) on 200 random polynomials", 0.0, [](std::string& detail) {
        testgen::Rng rng(6001);
        for (int i = 0; i < 200; ++i) {
            const Signature sig(1 + i % 3);
            NCPoly x = testgen::random_ncpoly(rng, sig, 3, 6);
            if (haar(expectation(x)) != haar(x)) {
                detail = "polynomial " + std::to_string(i);
                return false;
            }
        }
        return true;
    });

    criterion(7, "measure normalization: atom masses sum to 1, ell <= 4", 0.0,
              [](std::string& detail) {
                  for (int ell = 1; ell <= 4; ++ell) {
                      const Signature sig(ell);
                      QRat total(1);
                      for (int k = 1; k <= ell; ++k)
                          total *= QRat(one_minus_q2(static_cast<unsigned>(k)),
                                        one_minus_q2(static_cast<unsigned>(sig.N - k)));
                      if (total != QRat(1)) {
                          detail = "ell=" + std::to_string(ell);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(8, "classical limit: q->1 of h(A^m) and the curve at q = 0.999", 0.0,
              [](std::string& detail) {
                  for (int ell = 1; ell <= 3; ++ell) {
                      const Signature sig(ell);
                      for (const auto& m : exponents_up_to(ell, 5))
                          if (limit_q1(haar_A(m, sig)) != haar_classical(m)) {
                              detail = "ell=" + std::to_string(ell);
                              return false;
                          }
                  }
                  const Signature sig(1);
                  auto pts = haar_curve(pair_poly(sig, 1), {Rational(999, 1000)});
                  if (abs(pts.front().value - Rational(1, 2)) >= Rational(1, 1000)) {
                      detail = "curve value at 0.999";
                      return false;
                  }
                  return true;
              });

    criterion(9, "faithfulness spot check: h(x* x) > 0 at q = 1/2, 100 random x", 0.0,
              [](std::string& detail) {
                  testgen::Rng rng(9001);
                  int checked = 0;
                  while (checked < 100) {
                      const Signature sig(1 + checked % 2);
                      NCPoly x = testgen::random_ncpoly(rng, sig, 2, 4);
                      if (x.is_zero()) continue;
                      ++checked;
                      if (rat_eval(haar(mul(star(x), x)), Rational(1, 2)) <= 0) {
                          detail = "nonpositive value";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(10, "rewriting soundness: 1000 random instances per law, both algebras", 0.0,
              [](std::string& detail) {
                  testgen::Rng rng(10001);
                  std::uniform_int_distribution<int> ell_dist(1, 3);
                  std::uniform_int_distribution<int> n_dist(2, 3);
                  for (int i = 0; i < 1000; ++i) {
                      const Signature sig(ell_dist(rng));
                      NCPoly nf = normal_form(testgen::random_word(rng, sig, 10), sig);
                      if (normal_form(nf) != nf) {
                          detail = "sphere idempotence";
                          return false;
                      }
                      const int N = n_dist(rng);
                      UPoly unf = u_normal_form(testgen::random_uword(rng, N, 6), N);
                      if (u_normal_form(unf) != unf) {
                          detail = "matrix idempotence";
                          return false;
                      }
                  }
                  for (int i = 0; i < 1000; ++i) {
                      const Signature sig(ell_dist(rng));
                      NCPoly a = testgen::random_ncpoly(rng, sig, 2, 3);
                      NCPoly b = testgen::random_ncpoly(rng, sig, 2, 3);
                      NCPoly c = testgen::random_ncpoly(rng, sig, 2, 3);
                      if (mul(a, mul(b, c)) != mul(mul(a, b), c)) {
                          detail = "sphere associativity";
                          return false;
                      }
                      if (star(mul(a, b)) != mul(star(b), star(a))) {
                          detail = "sphere star anti-homomorphism";
                          return false;
                      }
                      const int N = n_dist(rng);
                      UPoly ua = testgen::random_upoly(rng, N, 2, 3);
                      UPoly ub = testgen::random_upoly(rng, N, 2, 3);
                      UPoly uc = testgen::random_upoly(rng, N, 2, 3);
                      if (u_mul(ua, u_mul(ub, uc)) != u_mul(u_mul(ua, ub), uc)) {
                          detail = "matrix associativity";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(11, "quantum determinant centrality and Laplace expansion, N = 2 and 3", 300.0,
              [](std::string& detail) {
                  const auto t0 = std::chrono::steady_clock::now();
                  if (!check_central(2).ok || !check_laplace(2).ok) {
                      detail = "N=2";
                      return false;
                  }
                  const double n2 = std::chrono::duration<double>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                  if (n2 > 1.0) {
                      detail = "N=2 over 1 s";
                      return false;
                  }
                  if (!check_central(3).ok || !check_laplace(3).ok) {
                      detail = "N=3";
                      return false;
                  }
                  return true;
              });

    criterion(12, "representation oracle at q=0.7, ell=2, d=16, M=4", 0.0,
              [](std::string& detail) {
                  const TruncParams params(Signature(2), 0.7, 16, 4);
                  for (const auto& r : relation_residual(params, 2)) {
                      const bool q_comm =
                          r.family == "zz-commutation" || r.family == "star-z-commutation";
                      if (q_comm && r.full > 1e-13) {
                          detail = r.family + " full residual";
                          return false;
                      }
                      if (!q_comm && r.interior > 1e-12) {
                          detail = r.family + " interior residual";
                          return false;
                      }
                  }
                  testgen::Rng rng(12001);
                  const Signature sig(2);
                  for (int i = 0; i < 20; ++i) {
                      NCPoly x(sig);
                      x.add_term(testgen::random_monomial(rng, sig, 8, true), QScalar(1));
                      if (diagonal_consistency(x, params).max() > 1e-12) {
                          detail = "diagonal consistency, monomial " + std::to_string(i);
                          return false;
                      }
                  }
                  return true;
              });

    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
