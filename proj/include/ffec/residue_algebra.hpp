#ifndef FFEC_RESIDUE_ALGEBRA_HPP
#define FFEC_RESIDUE_ALGEBRA_HPP

// B = F_q[X]/(f) for monic squarefree f of degree n, with the CRT
// decomposition B = B_1 x ... x B_r along the irreducible factors f_i.
// Each component B_i = F_q[X]/(f_i) is identified with a FieldCtx model of
// F_{q^{d_i}} through the canonical root of f_i (the smallest-index root in
// that field); all canonical choices are deterministic given (f, seed).
//
// Units carry a dense index in [0, unit_order): the mixed-radix encoding of
// the tuple of component discrete logs (t_1, ..., t_r), t_i in
// [0, q^{d_i} - 1), with t_1 the fastest-varying digit. Multiplying units
// adds tuples componentwise.

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ffec/poly.hpp"

namespace ffec {

struct Residue {
    Poly rep;  // reduced mod f
};

constexpr std::uint64_t kDefaultAlgebraCap = std::uint64_t(1) << 20;

class ResidueAlgebra {
public:
    // Pre: f nonzero, squarefree, of degree >= 1 (the leading coefficient
    // is normalized away). Throws std::invalid_argument on violations and
    // std::length_error when q^deg(f) exceeds cap.
    static std::shared_ptr<const ResidueAlgebra> make(FieldPtr k, const Poly& f,
                                                      std::uint64_t cap = kDefaultAlgebraCap);

    const FieldPtr& field() const { return k_; }
    const Poly& modulus() const { return f_; }
    int n() const { return f_.degree(); }
    size_t r() const { return factors_.size(); }
    const Poly& factor(size_t i) const { return factors_[i]; }
    int factor_degree(size_t i) const { return factors_[i].degree(); }
    const FieldPtr& component_field(size_t i) const { return comp_[i]; }
    const Embedding& component_embedding(size_t i) const { return emb_[i]; }
    fe_t component_root(size_t i) const { return theta_[i]; }
    // q^{d_i} - 1
    std::uint64_t component_order(size_t i) const { return comp_[i]->q() - 1; }
    std::uint64_t unit_order() const { return unit_order_; }

    Residue reduce(const Poly& a) const;
    Residue zero() const { return {poly_zero(k_)}; }
    Residue one() const { return {poly_rem(poly_one(k_), f_)}; }
    Residue scalar(fe_t c) const { return {poly_rem(poly_const(k_, c), f_)}; }

    Residue add(const Residue& a, const Residue& b) const;
    Residue sub(const Residue& a, const Residue& b) const;
    Residue mul(const Residue& a, const Residue& b) const;
    Residue pow(const Residue& a, std::uint64_t m) const;
    bool is_unit(const Residue& a) const;
    // Throws std::domain_error when a is not a unit.
    Residue inv(const Residue& a) const;

    // Component values under the fixed isomorphisms B_i ~ F_{q^{d_i}}.
    std::vector<fe_t> crt_split(const Residue& a) const;
    Residue crt_combine(const std::vector<fe_t>& comps) const;

    // X - t mod f; throws std::invalid_argument when f(t) = 0.
    Residue embed_linear(fe_t t) const;

    // Norm B -> k: product of the component field norms down to F_q.
    // Satisfies norm(embed_linear(t)) = (-1)^n f(t); cross-checkable
    // against poly_resultant(f, a.rep).
    fe_t norm(const Residue& a) const;

    // prod_{j<r} (X - t^{q^j}) mod f for t in F_{q^r}, presented through an
    // embedding of the base field into that extension. The product has
    // coefficients in the base field by Galois invariance. Throws
    // std::invalid_argument when f(t) = 0.
    Residue norm_relative(const Embedding& base_to_ext, fe_t t) const;
    Residue norm_relative(unsigned r, fe_t t) const;

    // Unit indexing.
    const Poly& unit_rep(std::uint32_t idx) const { return units_[idx]; }
    std::optional<std::uint32_t> unit_index(const Residue& a) const;
    void unit_tuple(std::uint32_t idx, std::uint32_t* out) const;
    std::uint32_t unit_from_tuple(const std::uint32_t* t) const;
    std::uint32_t unit_mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t unit_inv(std::uint32_t a) const;

private:
    ResidueAlgebra() = default;

    FieldPtr k_;
    Poly f_;
    std::vector<Poly> factors_;
    std::vector<FieldPtr> comp_;
    std::vector<Embedding> emb_;     // base -> component
    std::vector<fe_t> theta_;        // canonical root of f_i in comp_[i]
    std::vector<Poly> idempotent_;   // eps_i = 1 mod f_i, 0 mod f_j
    // psi_[i] maps a component field element (by packed index) to the
    // coefficient vector of its preimage mod f_i.
    std::vector<std::vector<std::vector<fe_t>>> psi_;
    std::uint64_t unit_order_ = 0;
    std::vector<Poly> units_;
    std::unordered_map<std::uint64_t, std::uint32_t> unit_map_;  // poly_key -> index

    fe_t component_value(const Residue& a, size_t i) const;
    Residue combine_polys(const std::vector<Poly>& comps) const;
};

using AlgebraPtr = std::shared_ptr<const ResidueAlgebra>;

}  // namespace ffec

#endif
