#ifndef FFEC_ERDOS_HPP
#define FFEC_ERDOS_HPP

// Pair sums of von Mangoldt mass on B^x and everything downstream of them:
//   S(a; d) = sum over monic g1, g2 of degree <= d with g1 g2 = a mod f of
//             Lambda(g1) Lambda(g2),
// computed both as an exact integer convolution and through the character
// group (forward transform, pointwise square, inverse transform). S splits
// as M + R with the flat main term M = T^2 / |B^x|, T the total mass; the
// exceptional set { a : S(a) <= 0 } obeys a Markov inequality that is
// checked in exact integer arithmetic after clearing denominators.
//
// Alongside: brute-force coverage of B^x by products of two monic
// irreducibles under three degree regimes, the trace-weighted character
// sums over the totally ramified spectrum with their partition-dimension
// bound, the closed-form remainder bound, and the constants C(n), Q(n)
// kept in log space.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ffec/lfunc.hpp"
#include "ffec/symfunc.hpp"

namespace ffec {

// Total von Mangoldt weight of monic g with 1 <= deg g <= d, coprime to
// the modulus, per unit index. Throws std::length_error when q^d exceeds
// the algebra cap (the exact Markov arithmetic is sized for that cap).
std::vector<std::int64_t> lambda_mass(const ResidueAlgebra& B, unsigned d,
                                      const IrreducibleTable& irr);

struct SumReport {
    unsigned d = 0;
    std::int64_t total_mass = 0;  // T
    double main_term = 0.0;       // M = T^2 / |B^x|, independent of a

    // q >= n makes T >= q^d - dn, hence N (q^d - dn)^2 <= T^2 q^n.
    bool main_lower_bound_applies = false;
    bool main_lower_bound_ok = false;

    std::vector<std::int64_t> s_direct;        // by unit index, exact
    std::vector<std::complex<double>> s_char;  // by unit index, Fourier path
    double max_char_err = 0.0;  // max |s_char - s_direct| / max(1, s_direct)

    std::vector<double> remainder;           // R(a) = S(a) - M
    std::vector<std::uint32_t> exceptional;  // unit indices with S(a) <= 0
    // |E| T^4 <= sum_{a in E} (S N - T^2)^2 <= sum_a (S N - T^2)^2,
    // both steps exact in 128-bit integers.
    bool markov_ok = false;
    bool sum_rule_ok = false;  // sum_a S(a) = T^2 exactly
    double mean_r_sq = 0.0;    // (1/|B^x|) sum_a R(a)^2
    double mean_r_sq_ref = 0.0;  // n^4 q^{2d - n}, reported only
};

SumReport erdos_sums(const CharacterGroup& G, unsigned d, const IrreducibleTable& irr);

enum class CoverageVariant {
    kDegreeAtMost,  // deg f_i <= n
    kDegreeSum,     // deg f_1 + deg f_2 = 2n
    kDegreeExact,   // deg f_i = n
};

struct CoverageReport {
    CoverageVariant variant = CoverageVariant::kDegreeAtMost;
    std::uint64_t covered_count = 0;
    bool is_full = false;
    std::vector<char> covered;                    // by unit index
    std::vector<std::pair<Poly, Poly>> witness;   // valid where covered != 0
    bool witnesses_ok = false;                    // re-verification result
};

// Double loop over irreducible pairs in canonical order (degree pairs
// ascending, table order within a degree, unordered pairs visited once);
// the first pair landing on a unit is its witness. Throws
// std::invalid_argument when the table is too shallow for the variant.
CoverageReport coverage_scan(const ResidueAlgebra& B, CoverageVariant v,
                             const IrreducibleTable& irr);

// Traces tr(theta^m), m = 0..m_top, of the unitarized classes of every
// totally ramified character, with the measured sign applied (tr(theta^0)
// is the dimension n - 1). The trace-sum modulus below is invariant under
// the sign, which scales each summand by a global unimodular factor.
struct TotRamTraces {
    unsigned m_top = 0;
    std::vector<std::uint32_t> chis;
    std::vector<std::vector<std::complex<double>>> tr;  // [pos][m]
};

TotRamTraces totram_traces(const LfuncContext& ctx, unsigned m_top, int sign);

struct TraceBoundRecord {
    int i = 0;
    int j = 0;
    bool hypothesis = false;  // sqrt q >= 2n + 1
    std::uint64_t totram = 0;
    double max_lhs = 0.0;      // max_a |sum_{chi TotRam} chi(a^{-1}) tr_i tr_j|
    std::uint32_t argmax = 0;  // unit index attaining max_lhs
    double rhs = 0.0;  // p(i+j) chi_{i,j}(1) |TotRam| 2(i+j+1) n^{i+j} / sqrt q
    bool pass = false;
};

// i = j = 0 pairs against the trivial representation, where the sum has no
// cancellation and the bound fails at a = 1; callers assert only i + j >= 1.
TraceBoundRecord verify_trace_bound(const LfuncContext& ctx, const TotRamTraces& tt,
                                    int i, int j);

struct RBoundRecord {
    bool hypothesis = false;  // sqrt q >= 2n + 1
    double max_abs_r = 0.0;
    double bound = 0.0;  // C(n) q^{n - 1/2} + 2 (n + 1) n^4 q^{n - 1}
    double ratio = 0.0;  // max_abs_r / (C(n) q^{n - 1/2})
    bool pass = false;   // asserted only under the hypothesis
};

// Pre: rep was computed at d = n.
RBoundRecord final_r_bound(const ResidueAlgebra& B, const SumReport& rep);

// log C(n) = (2n + 3) log(2n) + pi sqrt(4n / 3)
double log_c_n(int n);

struct ConstantsRecord {
    int n = 0;
    double log_c = 0.0;
    double log_q = 0.0;    // log Q(n) = 2 (log 2 + log C(n))
    double log_cap = 0.0;  // 23 n log n
    bool q_ok = false;
};

struct ConstantsReport {
    std::vector<ConstantsRecord> rows;  // n = 2..n_max
    bool q_bound_ok = false;            // every row
    bool partition_bound_ok = false;    // p(m) <= e^{pi sqrt(2m/3)}, m <= 200
    // (i+j+1) chi_{i,j}(1) = binom(i+j+1, j) (i+1-j) <= 2^{i+j+1} 2 max(i,1)
    // for 0 <= j <= i <= 20, i + j >= 1.
    bool binomial_identity_ok = false;
};

ConstantsReport constants_report(int n_max);

// Monic squarefree polynomials of degree n in canonical order.
std::vector<Poly> squarefree_monic(const FieldPtr& k, unsigned n);

}  // namespace ffec

#endif
