#include "rabiberry/numerics.hpp"

#include "rabiberry/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace rabiberry {

SymmetricMatrix::SymmetricMatrix(std::size_t dimension)
    : dim_(dimension), packed_(dimension * (dimension + 1) / 2, 0.0) {}

SymmetricMatrix SymmetricMatrix::from_lower(const Eigen::MatrixXd& dense) {
    if (dense.rows() != dense.cols()) {
        throw ValidationError("SymmetricMatrix: input must be square");
    }
    SymmetricMatrix m(static_cast<std::size_t>(dense.rows()));
    for (Eigen::Index i = 0; i < dense.rows(); ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), dense(i, j));
        }
    }
    return m;
}

Eigen::MatrixXd SymmetricMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd dense(n, n);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = (*this)(i, j);
            dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            dense(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return dense;
}

double SymmetricMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : packed_) m = std::max(m, std::abs(v));
    return m;
}

bool SymmetricMatrix::all_finite() const noexcept {
    for (double v : packed_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) noexcept {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (v.size() > 0 && v[best] < 0.0) v = -v;
}

EigenDecomposition eigh(const SymmetricMatrix& a) {
    if (a.dimension() == 0) {
        throw ValidationError("eigh: matrix dimension must be >= 1");
    }
    if (!a.all_finite()) {
        throw ValidationError("eigh: matrix has non-finite entries");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.to_dense());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigh: symmetric eigensolver did not converge");
    }
    EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
        canonicalize_sign(out.eigenvectors.col(c));
    }
    return out;
}

double log_factorial(std::size_t n) {
    if (n < 2) return 0.0;
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace rabiberry
