#ifndef FFEC_POLY_HPP
#define FFEC_POLY_HPP

// Dense univariate polynomials over a FieldCtx, plus the prime-side
// machinery built on them: irreducibility testing, canonical enumeration
// of monic polynomials, cached irreducible tables, the von Mangoldt
// weight, squarefree factorization, and von Mangoldt mass buckets mod f.
//
// Coefficients are stored low power first with no trailing zeros; the zero
// polynomial has an empty vector and degree() == -1.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffec/field.hpp"

namespace ffec {

struct Poly {
    FieldPtr k;
    std::vector<fe_t> c;

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    fe_t lc() const { return c.empty() ? 0 : c.back(); }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }
};

Poly poly_zero(FieldPtr k);
Poly poly_one(FieldPtr k);
Poly poly_x(FieldPtr k);
Poly poly_const(FieldPtr k, fe_t a);
// Trims trailing zeros; entries must be valid element indices.
Poly poly_from_coeffs(FieldPtr k, std::vector<fe_t> c);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, fe_t s);
// Throws std::domain_error when b is zero.
void poly_divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem);
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_quo(const Poly& a, const Poly& b);
// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);
Poly poly_make_monic(const Poly& a);
Poly poly_derivative(const Poly& a);
fe_t poly_eval(const Poly& a, fe_t t);
Poly poly_pow_mod(Poly base, std::uint64_t n, const Poly& mod);

// Res(f, g); for monic f this is the product of g over the roots of f.
fe_t poly_resultant(const Poly& f, const Poly& g);

// Canonical order: by degree, then by coefficient indices compared from the
// highest power down. For monic polynomials of equal degree this is the
// numeric order of the base-q encoding used by monic_at.
bool poly_canonical_less(const Poly& a, const Poly& b);
struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly_canonical_less(a, b); }
};

// Base-q encoding sum c_i q^i of a polynomial; requires q^(deg+1) < 2^63.
std::uint64_t poly_key(const Poly& a);

std::string poly_to_string(const Poly& a, const std::string& var = "x");

// Monic polynomials of degree d in canonical order, indexed by [0, q^d).
std::uint64_t monic_count(const FieldPtr& k, unsigned d);
Poly monic_at(const FieldPtr& k, unsigned d, std::uint64_t idx);

// Frobenius-based test; pre: g nonzero. Units and constants are not
// irreducible. The leading coefficient is ignored.
bool is_irreducible(const Poly& g);

struct Factorization {
    fe_t unit = 1;              // leading coefficient of the input
    std::vector<Poly> factors;  // monic irreducible, canonically sorted
};

// Distinct-degree splitting followed by trial division inside each degree
// block. Pre: f nonzero and squarefree (gcd(f, f') constant); throws
// std::invalid_argument otherwise.
Factorization factor_squarefree(const Poly& f);

// deg p when the monic normalization of h is p^k for an irreducible p,
// else 0. Pre: h nonzero.
int von_mangoldt(const Poly& h);

// Monic irreducibles of degrees 1..d_max in canonical order, optionally
// persisted. Cache files are keyed by (p, e, seed, d_max) and carry a
// checksum; a stale or corrupt file is rebuilt and rewritten.
class IrreducibleTable {
public:
    // cache_dir resolution: explicit argument, else FFEC_CACHE_DIR, else
    // in-memory only. Use "auto" for the resolved default even without the
    // environment variable ($XDG_CACHE_HOME/ffec or $HOME/.cache/ffec).
    IrreducibleTable(FieldPtr k, unsigned d_max, const std::string& cache_dir = "");

    const FieldPtr& field() const { return k_; }
    unsigned d_max() const { return d_max_; }
    const std::vector<Poly>& degree(unsigned d) const;
    std::uint64_t count(unsigned d) const { return degree(d).size(); }

    bool loaded_from_cache() const { return loaded_; }
    const std::string& cache_path() const { return path_; }
    std::uint64_t checksum() const { return checksum_; }

private:
    void build();
    std::vector<std::uint8_t> serialize() const;
    bool deserialize(const std::vector<std::uint8_t>& bytes);

    FieldPtr k_;
    unsigned d_max_;
    std::vector<std::vector<Poly>> by_degree_;  // index 0 unused
    bool loaded_ = false;
    std::string path_;
    std::uint64_t checksum_ = 0;
};

std::string default_cache_dir();

// Total von Mangoldt mass of monic degree-m polynomials per residue class
// mod f, restricted to classes coprime to f. Keys are reduced canonical
// representatives. Sum of all masses is q^m minus the mass of degree-m
// prime powers sharing a factor with f.
std::map<Poly, std::int64_t, PolyLess> psi_mass(const Poly& f, unsigned m,
                                                const IrreducibleTable& irr);
std::map<Poly, std::int64_t, PolyLess> psi_mass(const Poly& f, unsigned m);

}  // namespace ffec

#endif
