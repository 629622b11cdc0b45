#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsphere/haar.hpp"
#include "qsphere/sphere.hpp"

namespace qsphere {

/// Truncation data for the shift-operator representation: each N_0 tensor
/// factor is cut to dimension d, the Z factor to 2M+1 with cyclic wraparound.
struct TruncParams {
    Signature sig;
    double q0;
    int d;
    int M;

    TruncParams(Signature sig_, double q0_, int d_, int M_)
        : sig(sig_), q0(q0_), d(d_), M(M_) {
        if (!(q0 > 0.0 && q0 < 1.0)) throw std::invalid_argument("TruncParams: q0 not in (0,1)");
        if (d < 2) throw std::invalid_argument("TruncParams: d must be >= 2");
        if (M < 1) throw std::invalid_argument("TruncParams: M must be >= 1");
    }

    long dim() const;
};

/// Flat indexing of the basis e_{n_1} x .. x e_{n_ell} x e_m with
/// n_i in 0..d-1 and m in -M..M.
struct BasisIndexer {
    int ell, d, M;

    long dim() const;
    long flat(const std::vector<int>& n, int m) const;
    void unflat(long idx, std::vector<int>& n, int& m) const;
};

/// Weighted partial permutation matrix: every column has at most one nonzero
/// entry. Generator images and their word products all have this shape.
class RepOp {
public:
    explicit RepOp(long dim) : row_(dim, -1), val_(dim, 0.0) {}

    static RepOp identity(long dim);

    long dim() const { return static_cast<long>(row_.size()); }

    void set(long col, long row, double value) {
        row_[col] = row;
        val_[col] = value;
    }

    /// Image of the basis vector e_col, or nullopt when it is annihilated.
    std::optional<std::pair<long, double>> apply(long col) const {
        if (row_[col] < 0 || val_[col] == 0.0) return std::nullopt;
        return std::make_pair(row_[col], val_[col]);
    }

    RepOp adjoint() const;
    friend RepOp compose(const RepOp& a, const RepOp& b);  // a after b

private:
    std::vector<long> row_;
    std::vector<double> val_;
};

/// Truncated images of z_1..z_N; index 0 unused so rep[j] is the j-th one.
std::vector<RepOp> build_rep(const TruncParams& p, long dim_cap = 4'000'000);

struct ResidualReport {
    std::string family;
    double interior = 0.0;  // columns with every n_i <= d-1-margin
    double full = 0.0;      // all columns, edge defects included
};

/// Max Euclidean-norm residual of each defining relation applied to basis
/// vectors, split into interior columns and the full truncation.
std::vector<ResidualReport> relation_residual(const TruncParams& p, int interior_margin);

struct DiagonalReport {
    double diag_dev = 0.0;  // vs the polynomial in the A_j eigenvalues
    double offdiag = 0.0;
    double max() const { return diag_dev > offdiag ? diag_dev : offdiag; }
};

/// For a matched polynomial x, checks that the truncated image is diagonal
/// and that its diagonal agrees with simplex_reduce(x) evaluated at the
/// A_j-eigenvalues of each grid point.
DiagonalReport diagonal_consistency(const NCPoly& x, const TruncParams& p);

}  // namespace qsphere
