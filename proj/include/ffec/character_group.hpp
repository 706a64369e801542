#ifndef FFEC_CHARACTER_GROUP_HPP
#define FFEC_CHARACTER_GROUP_HPP

// Characters of B^x for B = F_q[X]/(f). A character is an exponent tuple
// (e_1, ..., e_r), e_i mod q^{d_i} - 1, paired against the unit dlog tuple:
//   chi(u) = exp(2 pi i * sum_i e_i t_i (N/m_i) / N),  N = lcm_i m_i.
// Character indices use the same mixed-radix encoding as unit indices, so
// index 0 is the principal character.
//
// Classification flags:
//   primitive         every component exponent is nonzero
//   odd               nontrivial on the scalar subgroup k^x
//   totally_ramified  primitive and odd
//   totally_ramified_generic
//     totally_ramified plus three genericity conditions evaluated on the
//     pullbacks psi_{i,j} = chi_i o Frob^j o Norm from F_{q^M}^x, M = lcm d_i:
//     the n pullbacks are pairwise distinct, their product is nontrivial,
//     and some psi_{i,j}^n differs from the product. When f splits into
//     linear factors this is literal comparison of characters of k^x.
//     Computing the pullbacks needs a model of F_{q^M}; when q^M exceeds
//     the field cap the flag is reported as undetermined.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "ffec/residue_algebra.hpp"

namespace ffec {

struct CharClassification {
    bool principal = false;
    bool primitive = false;
    bool odd = false;
    bool totally_ramified = false;
    bool trg_determined = true;
    bool totally_ramified_generic = false;
};

struct CharClassCounts {
    std::uint64_t all = 0;
    std::uint64_t principal = 0;
    std::uint64_t primitive = 0;
    std::uint64_t odd = 0;
    std::uint64_t totally_ramified = 0;
    std::uint64_t totally_ramified_generic = 0;
    bool trg_determined = true;
};

class CharacterGroup {
public:
    static std::shared_ptr<const CharacterGroup> make(AlgebraPtr A,
                                                      std::uint64_t field_cap = kDefaultFieldCap);

    const AlgebraPtr& algebra() const { return A_; }
    std::uint64_t size() const { return A_->unit_order(); }
    std::uint64_t value_modulus() const { return N_; }
    size_t r() const { return A_->r(); }
    std::uint32_t principal_index() const { return 0; }

    void exponents(std::uint32_t chi, std::uint32_t* out) const { A_->unit_tuple(chi, out); }
    std::uint32_t from_exponents(const std::uint32_t* e) const { return A_->unit_from_tuple(e); }

    // exp(2 pi i (idx mod N) / N)
    std::complex<double> root(std::uint64_t idx) const { return root_[idx % N_]; }
    // Angle numerator of chi(unit) as an exact residue mod N.
    std::uint64_t pairing(std::uint32_t chi, std::uint32_t unit) const;
    std::complex<double> evaluate(std::uint32_t chi, std::uint32_t unit) const {
        return root_[pairing(chi, unit)];
    }
    // Extension to all residues: 0 off the unit group.
    std::complex<double> evaluate_at(std::uint32_t chi, const Residue& a) const;
    std::complex<double> evaluate_scalar(std::uint32_t chi, fe_t c) const;

    CharClassification classify(std::uint32_t chi) const;
    CharClassCounts count_classes() const;

    // chi * (rho o Norm_{B/k}) for rho of exponent rho_exp mod q - 1.
    std::uint32_t twist_by_norm(std::uint32_t chi, std::uint64_t rho_exp) const;

private:
    CharacterGroup() = default;

    AlgebraPtr A_;
    std::uint64_t N_ = 1;
    std::vector<std::complex<double>> root_;
    std::vector<std::uint64_t> weight_;       // N / m_i
    std::vector<std::uint64_t> scalar_dlog_;  // dlog_i of the base generator
    std::vector<std::uint64_t> norm_dlog_;    // dlog_k of Norm(g_i)
    std::vector<std::uint32_t> unit_tuples_;  // r values per unit, flattened
    bool trg_ok_ = true;
    std::uint64_t qm1_ = 0;                   // q^M - 1, M = lcm d_i
    std::vector<std::uint64_t> pull_base_;    // c_i q^j nu_i mod q^M - 1, flattened over (i, j)
};

using CharGroupPtr = std::shared_ptr<const CharacterGroup>;

// Fourier analysis on B^x. Vectors are indexed by unit index (mass side)
// or character index (transform side).
//   forward   m_hat(chi) = sum_a m(a) chi(a)
//   inverse   m(a) = 1/|B^x| sum_chi m_hat(chi) conj(chi(a))
//   dual      w_vee(a) = sum_chi w(chi) conj(chi(a))
// fourier_naive is the direct O(|B^x|^2) sum with compensated accumulation;
// fourier_forward runs one DFT per cyclic factor and must agree with it.
std::vector<std::complex<double>> fourier_naive(const CharacterGroup& G,
                                                const std::vector<std::complex<double>>& mass);
std::vector<std::complex<double>> fourier_forward(const CharacterGroup& G,
                                                  const std::vector<std::complex<double>>& mass);
std::vector<std::complex<double>> fourier_inverse(const CharacterGroup& G,
                                                  const std::vector<std::complex<double>>& what);
std::vector<std::complex<double>> dual_transform(const CharacterGroup& G,
                                                 const std::vector<std::complex<double>>& w);

}  // namespace ffec

#endif
