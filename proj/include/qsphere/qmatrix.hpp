#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsphere/scalarq.hpp"

namespace qsphere {

/// One quantum-matrix generator u_{row,col}, indices in 1..N.
struct UIndex {
    int row = 1;
    int col = 1;

    UIndex() = default;
    UIndex(int r, int c) : row(r), col(c) {}

    int rank(int N) const { return (row - 1) * N + (col - 1); }

    bool operator==(const UIndex& o) const { return row == o.row && col == o.col; }
    bool operator<(const UIndex& o) const {
        return row != o.row ? row < o.row : col < o.col;
    }
    std::string str() const {
        return "u[" + std::to_string(row) + "," + std::to_string(col) + "]";
    }
};

using UWord = std::vector<UIndex>;

/// Which oriented rules the rewriting engine applies. The degraded set drops
/// the (q - q^{-1}) cross term and serves as a negative control in tests.
enum class URuleSet { full, no_cross_correction };

/// Element of the quantum matrix algebra in canonical form: a QScalar
/// combination of words that are nondecreasing in row-major generator order.
class UPoly {
public:
    explicit UPoly(int N) : N_(N) {
        if (N < 1) throw std::invalid_argument("UPoly: N must be >= 1");
    }

    static UPoly zero(int N) { return UPoly(N); }
    static UPoly one(int N) { return scalar(N, QScalar(1)); }
    static UPoly scalar(int N, const QScalar& c);
    static UPoly generator(int N, UIndex u);

    int N() const { return N_; }
    const std::map<UWord, QScalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add_term(const UWord& w, const QScalar& c);

    UPoly operator-() const;
    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }

    UPoly scaled(const QScalar& c) const;

    bool operator==(const UPoly& o) const { return N_ == o.N_ && coeffs_ == o.coeffs_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    std::string str() const;

private:
    int N_;
    std::map<UWord, QScalar> coeffs_;
};

UPoly u_normal_form(const UWord& word, int N, URuleSet rules = URuleSet::full);
UPoly u_normal_form(const UPoly& x, URuleSet rules = URuleSet::full);
UPoly u_mul(const UPoly& a, const UPoly& b, URuleSet rules = URuleSet::full);

/// Number of pairs a < b with sigma(a) > sigma(b); sigma is 1-based.
int inversions(const std::vector<int>& sigma);

/// Quantum minor over rows I and columns J (1-based subsets of equal size):
/// sum over permutations of (-q)^{inversions} times the column-ordered word.
UPoly quantum_minor(std::vector<int> I, std::vector<int> J, int N);

/// Full quantum determinant.
UPoly quantum_determinant(int N);

struct CommutationWitness {
    bool ok = true;
    int row = 0;  // offending generator when !ok
    int col = 0;
    std::string residual;
};

/// Verifies that the quantum determinant commutes with every generator.
CommutationWitness check_central(int N, URuleSet rules = URuleSet::full);

/// Verifies the row expansion sum_k u_{ik} (-q)^{k-j} M_{jk} = delta_{ij} D
/// where M_{jk} is the complementary minor.
CommutationWitness check_laplace(int N, URuleSet rules = URuleSet::full);

}  // namespace qsphere
