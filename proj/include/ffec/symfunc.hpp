#ifndef FFEC_SYMFUNC_HPP
#define FFEC_SYMFUNC_HPP

// Partitions, symmetric group characters, and symmetric function
// evaluation at unit-circle eigenvalue multisets. Character values are
// exact 64-bit integers (Murnaghan-Nakayama recursion with memoization);
// only the evaluations use floating point.

#include <complex>
#include <cstdint>
#include <vector>

namespace ffec {

// Weakly decreasing positive parts; the empty partition is {}.
using Partition = std::vector<int>;

// All partitions of K in reverse-lexicographic order: (K) first, 1^K last.
std::vector<Partition> partitions(int K);
// Euler pentagonal-number recurrence; exact through K = 200 and beyond.
std::int64_t partition_count(int K);

// Character of S_K at class mu for the irreducible indexed by lambda.
// Throws std::invalid_argument when |lambda| != |mu| or parts are invalid.
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

// |C_mu| = K! / z_mu for the conjugacy class of cycle type mu.
std::int64_t class_size(const Partition& mu);

// Dimension of the two-row irreducible (i, j), i >= j >= 0, i + j >= 1:
// equals binom(i+j, j) - binom(i+j, j-1).
std::int64_t dim_two_row(int i, int j);

// K! / product of hook lengths.
std::int64_t hook_length_dim(const Partition& lambda);

// P_lambda(z) = prod_k sum_t z_t^{lambda_k}.
std::complex<double> power_sum_eval(const Partition& lambda,
                                    const std::vector<std::complex<double>>& z);
// Schur polynomial via Jacobi-Trudi on complete homogeneous functions
// generated from the power sums.
std::complex<double> schur_eval(const Partition& lambda,
                                const std::vector<std::complex<double>>& z);

}  // namespace ffec

#endif
