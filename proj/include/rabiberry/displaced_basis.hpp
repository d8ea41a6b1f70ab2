// displaced_basis.hpp: overlaps between oppositely displaced number states.
//
// The displaced number states are
//   |n>_alpha = (1/sqrt(n!)) (a^dag + alpha)^n exp(-alpha a^dag - alpha^2/2) |0>,
// i.e. the number states of the oscillator shifted to -alpha. The overlap matrix
//   D_mn = exp(-2 alpha^2) sum_k (-1)^k sqrt(m! n!) (2 alpha)^(m+n-2k) / ((m-k)! (n-k)! k!)
// equals _alpha<m| (-1)^n |n>_-alpha. At alpha = 0 it reduces to (-1)^m delta_mn.

#pragma once

#include "rabiberry/numerics.hpp"

#include <cstddef>
#include <vector>

namespace rabiberry {

// Largest index accepted by dmn / dmn_matrix.
inline constexpr std::size_t kMaxDisplacedIndex = 1000;
// Largest index accepted by the alternating reference sum.
inline constexpr std::size_t kMaxReferenceIndex = 60;

// Direct evaluation of the finite alternating sum (magnitudes in log space).
// Throws PrecisionError when the estimated rounding error exceeds 1e-8,
// ValidationError when m or n exceeds kMaxReferenceIndex.
double dmn_reference(double alpha, std::size_t m, std::size_t n);

// Stable evaluator:
//   D_mn = (-1)^min(m,n) sqrt(min!/max!) (2 alpha)^|m-n| exp(-2 alpha^2) L_min^(|m-n|)(4 alpha^2).
double dmn(double alpha, std::size_t m, std::size_t n);

class DMatrix {
public:
    DMatrix(double alpha, std::size_t max_index);

    double alpha() const noexcept { return alpha_; }
    std::size_t size() const noexcept { return entries_.dimension(); }
    double operator()(std::size_t m, std::size_t n) const noexcept { return entries_(m, n); }
    const SymmetricMatrix& entries() const noexcept { return entries_; }

private:
    double alpha_;
    SymmetricMatrix entries_;
};

// D_mn for 0 <= m, n <= max_index.
DMatrix dmn_matrix(double alpha, std::size_t max_index);

struct DisplacedFockExpansion {
    std::vector<double> coeffs;  // <k|n>_alpha for k = 0..n_cut
    double tail_weight{0.0};     // 1 - sum coeffs^2, clamped at 0
    bool truncated{false};       // tail_weight > 1e-10
};

// Expands |n>_alpha in the bare Fock basis |0>..|n_cut>. Seeds with the coherent-state
// amplitudes of exp(-alpha a^dag - alpha^2/2)|0> and applies (a^dag + alpha)/sqrt(j)
// for j = 1..n. a^dag only raises k, so truncating at n_cut loses nothing below it.
DisplacedFockExpansion displaced_fock_coeffs(double alpha, std::size_t n, std::size_t n_cut);

} // namespace rabiberry
