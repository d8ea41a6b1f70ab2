// numerics.hpp: dense real-symmetric eigenproblems and combinatorial helpers.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace rabiberry {

// Real symmetric matrix stored as its packed lower triangle, so symmetry holds by construction.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dimension);

    // Takes the lower triangle of a square matrix; throws ValidationError if it is not square.
    static SymmetricMatrix from_lower(const Eigen::MatrixXd& dense);

    std::size_t dimension() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[offset(i, j)]; }
    // Writes both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value) noexcept { packed_[offset(i, j)] = value; }
    void add(std::size_t i, std::size_t j, double value) noexcept { packed_[offset(i, j)] += value; }

    Eigen::MatrixXd to_dense() const;

    // Largest absolute entry.
    double max_abs() const noexcept;
    bool all_finite() const noexcept;

private:
    static std::size_t offset(std::size_t i, std::size_t j) noexcept {
        if (i < j) {
            const std::size_t t = i;
            i = j;
            j = t;
        }
        return i * (i + 1) / 2 + j;
    }

    std::size_t dim_{0};
    std::vector<double> packed_;
};

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

// Ascending eigenvalues with orthonormal eigenvectors. Each eigenvector is signed so that its
// largest-magnitude component is positive (first such index wins ties).
// Throws ValidationError for an empty or non-finite matrix.
EigenDecomposition eigh(const SymmetricMatrix& a);

// Flips `v` in place so its largest-magnitude component is positive.
void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) noexcept;

// ln(n!).
double log_factorial(std::size_t n);

} // namespace rabiberry
