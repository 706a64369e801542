#ifndef FFEC_LFUNC_HPP
#define FFEC_LFUNC_HPP

// Dirichlet L-polynomials over F_q[X] for characters mod f:
//   L(chi, T) = sum_{g monic} chi(g) T^{deg g} = prod_i (1 - beta_i T),
// a polynomial of degree n - 1 for nonprincipal chi. Three computation
// paths are exposed and cross-checked by the verifiers:
//   coefficients  c_m = sum over monic residues by degree (bucket + Fourier)
//   psi           Psi(m, chi) = sum_{deg g = m} Lambda(g) chi(g) (mass + Fourier)
//   s_r           S_r = sum over t in F_{q^r}, f(t) != 0, of chi(Norm(X - t))
// tied together by L = exp(sum_r S_r T^r / r) and the Newton identities
// Psi(m) = -(sum_i beta_i^m).
//
// The unitarized class theta has eigenvalues beta_i / sqrt(q). The sign s in
// Psi(m, chi) = s q^{m/2} tr(theta^m) is measured, not assumed.

#include <complex>
#include <cstdint>
#include <vector>

#include "ffec/character_group.hpp"

namespace ffec {

struct LPolynomial {
    std::uint32_t chi = 0;
    std::vector<std::complex<double>> c;  // c[0] = 1 .. c[n-1]
};

struct UnitaryClass {
    std::vector<std::complex<double>> beta;  // reciprocal roots, sorted by angle
    std::vector<double> angles;              // arg(beta_i / sqrt q) in [0, 2 pi)
    std::vector<double> magnitudes;          // |beta_i| / sqrt q
    bool on_circle = false;                  // all magnitudes within 1e-6 of 1
};

// Roots of a monic complex polynomial given by low-first coefficients
// (trailing coefficient must be 1): Durand-Kerner with Newton polish,
// deterministic initial configuration.
std::vector<std::complex<double>> poly_roots_monic(std::vector<std::complex<double>> coeffs);

// Precomputes all character transforms for one modulus. Not thread-safe to
// share across workers while constructing; all methods on a built context
// are const and read-only.
class LfuncContext {
public:
    // psi transforms for m = 1..m_max, monic buckets for m = 0..n, S_r unit
    // caches for r = 1..max(1, n-1) (each requiring q^r within the field cap).
    explicit LfuncContext(CharGroupPtr G, unsigned m_max = 4,
                          const std::string& cache_dir = "");

    const CharGroupPtr& group() const { return G_; }
    const AlgebraPtr& algebra() const { return G_->algebra(); }
    unsigned m_max() const { return m_max_; }
    unsigned r_max() const { return unsigned(sr_units_.size()); }

    // Transform rows over all characters.
    const std::vector<std::complex<double>>& monic_transform(unsigned m) const;
    const std::vector<std::complex<double>>& psi_transform(unsigned m) const;

    std::complex<double> psi(std::uint32_t chi, unsigned m) const {
        return psi_transform(m)[chi];
    }
    // Enumeration path over F_{q^r}.
    std::complex<double> s_r(std::uint32_t chi, unsigned r) const;

    // Throws std::invalid_argument for the principal character.
    LPolynomial l_polynomial(std::uint32_t chi) const;
    // Truncation of exp(sum_r S_r T^r / r) to degree n - 1.
    std::vector<std::complex<double>> lpoly_from_s(std::uint32_t chi) const;

    UnitaryClass unitarize(const LPolynomial& L) const;

private:
    CharGroupPtr G_;
    unsigned m_max_ = 0;
    std::vector<std::vector<std::complex<double>>> monic_hat_;  // index m = 0..n
    std::vector<std::vector<std::complex<double>>> psi_hat_;    // index m - 1
    std::vector<std::vector<std::uint32_t>> sr_units_;          // index r - 1
};

// Power sums p_m = sum_i beta_i^m from L by Newton's identities;
// Psi(m, chi) = -p_m. Returns p_1..p_m_max.
std::vector<std::complex<double>> newton_power_sums(const LPolynomial& L, unsigned m_max);

// tr(theta^m) = sum_i (beta_i / sqrt q)^m.
std::complex<double> trace_power(const UnitaryClass& u, unsigned m);

// The global sign s in Psi(m, chi) = s q^{m/2} tr(theta^m), measured over
// all nonprincipal characters and 1 <= m <= m_max. Returns 0 when every
// sample is indecisive at rel_tol; throws std::logic_error when neither
// sign fits some sample or two samples demand opposite signs.
int measure_trace_sign(const LfuncContext& ctx, unsigned m_max, double rel_tol = 1e-6);

}  // namespace ffec

#endif
