#ifndef FFEC_FIELD_HPP
#define FFEC_FIELD_HPP

// Finite field F_{p^e} with full exp/log tables.
//
// Elements are stored as packed indices: the element with coefficient
// vector (c_0, ..., c_{e-1}) over F_p (low power first, relative to the
// modulus basis) has index c_0 + c_1*p + ... + c_{e-1}*p^{e-1}.
// Index 0 is the zero element, index 1 is the unit.
//
// Multiplicative structure is handled through a fixed generator of the
// cyclic group F_q^*; mul/inv/pow are table lookups. Construction cost is
// O(q) after the modulus search, so field sizes are capped (default 2^24).

#include <cstdint>
#include <memory>
#include <vector>

namespace ffec {

using fe_t = std::uint32_t;

constexpr std::uint64_t kDefaultFieldCap = std::uint64_t(1) << 24;

class FieldCtx {
public:
    // Builds F_{p^e}. For e > 1 the modulus is the first monic irreducible
    // of degree e produced by an rng seeded with (p, e, seed); for e == 1
    // there is no modulus and elements are residues mod p.
    // Throws std::invalid_argument for p not prime or e < 1, and
    // std::length_error when p^e exceeds cap.
    static std::shared_ptr<const FieldCtx> make(std::uint32_t p, std::uint32_t e,
                                                std::uint64_t seed = 0,
                                                std::uint64_t cap = kDefaultFieldCap);

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t seed() const { return seed_; }
    // Coefficients of the modulus, low first, length e+1, leading 1.
    // Empty for e == 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    fe_t generator() const { return gen_; }

    fe_t zero() const { return 0; }
    fe_t one() const { return 1; }

    fe_t add(fe_t a, fe_t b) const;
    fe_t sub(fe_t a, fe_t b) const;
    fe_t neg(fe_t a) const;
    fe_t mul(fe_t a, fe_t b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
        if (s >= qm1_) s -= qm1_;
        return exp_[s];
    }
    // Throws std::domain_error on zero.
    fe_t inv(fe_t a) const;
    fe_t div(fe_t a, fe_t b) const { return mul(a, inv(b)); }
    // a^n with n possibly negative; 0^0 = 1, 0^negative throws.
    fe_t pow(fe_t a, std::int64_t n) const;

    // Discrete log base generator(); domain F_q^*, range [0, q-2].
    std::uint64_t dlog(fe_t a) const;
    fe_t exp(std::uint64_t k) const { return exp_[k % qm1_]; }

    // Packed index <-> coefficient vector (length e, entries in [0,p)).
    std::vector<std::uint32_t> coeffs(fe_t a) const;
    fe_t from_coeffs(const std::vector<std::uint32_t>& c) const;

    // Scalar embedding of F_p: c in [0,p) maps to index c.
    fe_t from_prime(std::uint32_t c) const { return c % p_; }

    fe_t frobenius(fe_t a) const { return pow(a, p_); }

private:
    FieldCtx() = default;

    std::uint32_t p_ = 0, e_ = 0;
    std::uint64_t q_ = 0, qm1_ = 0, seed_ = 0;
    std::vector<std::uint32_t> modulus_;
    fe_t gen_ = 0;
    std::vector<fe_t> exp_;            // exp_[k] = g^k, k in [0, q-1)
    std::vector<std::uint32_t> log_;   // log_[x] for x != 0
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

// Process-wide cache keyed by (p, e, seed); make_field is deterministic so
// cached contexts are interchangeable with fresh ones.
FieldPtr make_field(std::uint32_t p, std::uint32_t e, std::uint64_t seed = 0,
                    std::uint64_t cap = kDefaultFieldCap);

// Field homomorphism F_{p^a} -> F_{p^ab} fixing F_p, determined by the
// canonical (smallest-index) root of src's modulus in dst. The image is the
// unique subfield of dst with src->q() elements, so embed(x) is fixed by the
// relative Frobenius y -> y^{q_src}.
class Embedding {
public:
    // Throws std::invalid_argument unless src->p() == dst->p() and
    // src->e() divides dst->e().
    Embedding(FieldPtr src, FieldPtr dst);

    const FieldPtr& src() const { return src_; }
    const FieldPtr& dst() const { return dst_; }

    fe_t map(fe_t x) const;
    // Preimage of y if y lies in the embedded subfield.
    bool invert(fe_t y, fe_t& out) const;

private:
    FieldPtr src_, dst_;
    std::uint64_t log_image_gen_ = 0;  // dlog in dst of map(src generator)
    std::uint64_t ratio_ = 1;          // (q_dst - 1) / (q_src - 1)
    std::uint64_t unit_ = 1;           // log_image_gen_ / ratio_, coprime to q_src - 1
    std::uint64_t unit_inv_ = 1;
};

bool is_prime_u64(std::uint64_t n);

// Prime factors of n, ascending, no multiplicity.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
// Inverse of a mod m for gcd(a, m) = 1; throws std::domain_error otherwise.
std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m);

}  // namespace ffec

#endif
