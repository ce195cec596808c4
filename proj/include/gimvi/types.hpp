#pragma once

#include <Eigen/Core>

#include <cmath>

#include "gimvi/errors.hpp"
#include "gimvi/rng.hpp"

namespace gimvi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Throws Error when v contains NaN or Inf.
void require_finite(const Vec& v, const char* what);
void require_finite(const Mat& m, const char* what);

/// Vector of i.i.d. standard normals, filled in index order.
Vec gaussian_vec(Rng& rng, int dim);

/// n x n matrix of i.i.d. standard normals, filled row by row.
Mat gaussian_mat(Rng& rng, int dim);

/// Element of H^3: a state together with its first and second derivative.
/// The norm is the product norm sqrt(|v1|^2 + |v2|^2 + |v3|^2).
struct TripleVec {
    Vec v1, v2, v3;

    int dim() const { return static_cast<int>(v1.size()); }

    double squared_norm() const {
        return v1.squaredNorm() + v2.squaredNorm() + v3.squaredNorm();
    }
    double norm() const { return std::sqrt(squared_norm()); }

    static TripleVec zero(int dim) {
        return {Vec::Zero(dim), Vec::Zero(dim), Vec::Zero(dim)};
    }

    TripleVec& operator+=(const TripleVec& o) {
        v1 += o.v1;
        v2 += o.v2;
        v3 += o.v3;
        return *this;
    }
};

inline TripleVec operator+(TripleVec a, const TripleVec& b) {
    a += b;
    return a;
}

inline TripleVec operator-(const TripleVec& a, const TripleVec& b) {
    return {a.v1 - b.v1, a.v2 - b.v2, a.v3 - b.v3};
}

inline TripleVec operator*(double s, const TripleVec& a) {
    return {s * a.v1, s * a.v2, s * a.v3};
}

/// Affine map w -> M w + b.
struct AffineOp {
    Mat M;
    Vec b;

    Vec operator()(const Vec& w) const { return M * w + b; }
    int dim() const { return static_cast<int>(M.rows()); }

    static AffineOp identity(int dim) {
        return {Mat::Identity(dim, dim), Vec::Zero(dim)};
    }
    static AffineOp zero(int dim) {
        return {Mat::Zero(dim, dim), Vec::Zero(dim)};
    }
};

/// Certified operator constants.
///   eta    Lipschitz constant of F             (>= 0)
///   beta   Lipschitz constant of g             (>= 0)
///   lambda strong-monotonicity modulus of F    (> 0)
///   zeta   coupled-monotonicity modulus (F, g) (> 0)
/// Necessarily zeta <= eta*beta and lambda <= eta.
struct InstanceConstants {
    double eta = 0.0;
    double beta = 0.0;
    double lambda = 0.0;
    double zeta = 0.0;
};

} // namespace gimvi
