#include "ffec/residue_algebra.hpp"

#include <stdexcept>
#include <unordered_map>

namespace ffec {

namespace {

std::uint64_t checked_pow(std::uint64_t q, unsigned n, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (v > cap / q) throw std::length_error("ResidueAlgebra: q^n exceeds cap");
        v *= q;
    }
    if (v > cap) throw std::length_error("ResidueAlgebra: q^n exceeds cap");
    return v;
}

}  // namespace

std::shared_ptr<const ResidueAlgebra> ResidueAlgebra::make(FieldPtr k, const Poly& f0,
                                                           std::uint64_t cap) {
    if (f0.k.get() != k.get()) throw std::invalid_argument("ResidueAlgebra: field mismatch");
    if (f0.is_zero() || f0.degree() < 1)
        throw std::invalid_argument("ResidueAlgebra: modulus must have degree >= 1");
    auto A = std::shared_ptr<ResidueAlgebra>(new ResidueAlgebra());
    A->k_ = k;
    A->f_ = poly_make_monic(f0);
    if (poly_gcd(A->f_, poly_derivative(A->f_)).degree() != 0)
        throw std::invalid_argument("ResidueAlgebra: modulus must be squarefree");
    checked_pow(k->q(), unsigned(A->f_.degree()), cap);

    auto fac = factor_squarefree(A->f_);
    A->factors_ = std::move(fac.factors);
    size_t r = A->factors_.size();

    for (size_t i = 0; i < r; ++i) {
        unsigned d = unsigned(A->factors_[i].degree());
        FieldPtr comp = make_field(k->p(), k->e() * d, k->seed());
        Embedding emb(k, comp);

        std::vector<fe_t> fc(d + 1);
        for (unsigned j = 0; j <= d; ++j)
            fc[j] = emb.map(j < A->factors_[i].c.size() ? A->factors_[i].c[j] : 0);
        bool found = false;
        fe_t root = 0;
        for (std::uint64_t x = 0; x < comp->q(); ++x) {
            fe_t v = 0;
            for (size_t j = fc.size(); j-- > 0;) v = comp->add(comp->mul(v, fe_t(x)), fc[j]);
            if (v == 0) {
                root = fe_t(x);
                found = true;
                break;  // ascending scan, so the first root is canonical
            }
        }
        if (!found) throw std::logic_error("ResidueAlgebra: factor has no root in component");

        // Inverse of b -> b(theta) over all q^d residues mod f_i.
        std::vector<std::vector<fe_t>> psi(comp->q());
        std::vector<bool> seen(comp->q(), false);
        std::uint64_t count = comp->q();
        for (std::uint64_t ridx = 0; ridx < count; ++ridx) {
            std::vector<fe_t> b(d);
            std::uint64_t tmp = ridx;
            for (unsigned j = 0; j < d; ++j) {
                b[j] = fe_t(tmp % k->q());
                tmp /= k->q();
            }
            fe_t v = 0;
            fe_t tp = 1;
            for (unsigned j = 0; j < d; ++j) {
                v = comp->add(v, comp->mul(emb.map(b[j]), tp));
                tp = comp->mul(tp, root);
            }
            if (seen[v]) throw std::logic_error("ResidueAlgebra: component map not injective");
            seen[v] = true;
            psi[v] = std::move(b);
        }

        A->comp_.push_back(std::move(comp));
        A->emb_.push_back(std::move(emb));
        A->theta_.push_back(root);
        A->psi_.push_back(std::move(psi));
    }

    // CRT idempotents eps_i = M_i * (M_i^{-1} mod f_i); the inverse is
    // computed inside the component field.
    Poly esum = poly_zero(k);
    for (size_t i = 0; i < r; ++i) {
        Poly Mi = poly_quo(A->f_, A->factors_[i]);
        Residue tmp{poly_rem(Mi, A->f_)};
        fe_t v = A->component_value(tmp, i);
        fe_t vinv = A->comp_[i]->inv(v);
        Poly ui = poly_from_coeffs(k, A->psi_[i][vinv]);
        A->idempotent_.push_back(poly_rem(poly_mul(Mi, ui), A->f_));
        esum = poly_add(esum, A->idempotent_[i]);
    }
    if (!(esum == poly_rem(poly_one(k), A->f_)))
        throw std::logic_error("ResidueAlgebra: idempotents do not sum to 1");

    A->unit_order_ = 1;
    for (size_t i = 0; i < r; ++i) A->unit_order_ *= A->component_order(i);
    A->units_.reserve(A->unit_order_);
    std::vector<std::uint32_t> t(r);
    std::vector<Poly> comps(r);
    for (std::uint64_t idx = 0; idx < A->unit_order_; ++idx) {
        A->unit_tuple(std::uint32_t(idx), t.data());
        for (size_t i = 0; i < r; ++i)
            comps[i] = poly_from_coeffs(k, A->psi_[i][A->comp_[i]->exp(t[i])]);
        A->units_.push_back(A->combine_polys(comps).rep);
    }
    A->unit_map_.reserve(A->unit_order_ * 2);
    for (std::uint32_t i = 0; i < A->unit_order_; ++i) {
        auto [it, fresh] = A->unit_map_.emplace(poly_key(A->units_[i]), i);
        (void)it;
        if (!fresh) throw std::logic_error("ResidueAlgebra: duplicate unit");
    }
    return A;
}

Residue ResidueAlgebra::reduce(const Poly& a) const {
    if (a.k.get() != k_.get()) throw std::invalid_argument("ResidueAlgebra: field mismatch");
    return {poly_rem(a, f_)};
}

Residue ResidueAlgebra::add(const Residue& a, const Residue& b) const {
    return {poly_add(a.rep, b.rep)};
}

Residue ResidueAlgebra::sub(const Residue& a, const Residue& b) const {
    return {poly_sub(a.rep, b.rep)};
}

Residue ResidueAlgebra::mul(const Residue& a, const Residue& b) const {
    return {poly_rem(poly_mul(a.rep, b.rep), f_)};
}

Residue ResidueAlgebra::pow(const Residue& a, std::uint64_t m) const {
    return {poly_pow_mod(a.rep, m, f_)};
}

fe_t ResidueAlgebra::component_value(const Residue& a, size_t i) const {
    Poly b = poly_rem(a.rep, factors_[i]);
    fe_t v = 0;
    fe_t tp = 1;
    for (size_t j = 0; j < b.c.size(); ++j) {
        v = comp_[i]->add(v, comp_[i]->mul(emb_[i].map(b.c[j]), tp));
        tp = comp_[i]->mul(tp, theta_[i]);
    }
    return v;
}

bool ResidueAlgebra::is_unit(const Residue& a) const {
    for (size_t i = 0; i < r(); ++i)
        if (component_value(a, i) == 0) return false;
    return true;
}

std::vector<fe_t> ResidueAlgebra::crt_split(const Residue& a) const {
    std::vector<fe_t> out(r());
    for (size_t i = 0; i < r(); ++i) out[i] = component_value(a, i);
    return out;
}

Residue ResidueAlgebra::combine_polys(const std::vector<Poly>& comps) const {
    Poly acc = poly_zero(k_);
    for (size_t i = 0; i < r(); ++i)
        acc = poly_add(acc, poly_mul(comps[i], idempotent_[i]));
    return {poly_rem(acc, f_)};
}

Residue ResidueAlgebra::crt_combine(const std::vector<fe_t>& comps) const {
    if (comps.size() != r()) throw std::invalid_argument("crt_combine: wrong arity");
    std::vector<Poly> polys(r());
    for (size_t i = 0; i < r(); ++i) {
        if (comps[i] >= comp_[i]->q()) throw std::invalid_argument("crt_combine: bad component");
        polys[i] = poly_from_coeffs(k_, psi_[i][comps[i]]);
    }
    return combine_polys(polys);
}

Residue ResidueAlgebra::inv(const Residue& a) const {
    auto comps = crt_split(a);
    for (auto& v : comps) {
        if (v == 0) throw std::domain_error("ResidueAlgebra::inv: not a unit");
    }
    for (size_t i = 0; i < r(); ++i) comps[i] = comp_[i]->inv(comps[i]);
    return crt_combine(comps);
}

Residue ResidueAlgebra::embed_linear(fe_t t) const {
    if (poly_eval(f_, t) == 0)
        throw std::invalid_argument("embed_linear: t is a root of the modulus");
    Poly lin = poly_from_coeffs(k_, {k_->neg(t), 1});
    return {poly_rem(lin, f_)};
}

fe_t ResidueAlgebra::norm(const Residue& a) const {
    fe_t acc = 1;
    for (size_t i = 0; i < r(); ++i) {
        fe_t v = component_value(a, i);
        if (v == 0) return 0;
        std::uint64_t mi = component_order(i);
        std::uint64_t nu = mi / (k_->q() - 1);
        fe_t nv = comp_[i]->exp(comp_[i]->dlog(v) % mi * nu % mi);
        fe_t down;
        if (!emb_[i].invert(nv, down))
            throw std::logic_error("ResidueAlgebra::norm: norm not in base field");
        acc = k_->mul(acc, down);
    }
    return acc;
}

Residue ResidueAlgebra::norm_relative(const Embedding& base_to_ext, fe_t t) const {
    if (base_to_ext.src().get() != k_.get())
        throw std::invalid_argument("norm_relative: embedding source mismatch");
    const FieldPtr& kr = base_to_ext.dst();
    unsigned rel = kr->e() / k_->e();

    fe_t fval = 0;
    for (size_t j = f_.c.size(); j-- > 0;)
        fval = kr->add(kr->mul(fval, t), base_to_ext.map(f_.c[j]));
    if (fval == 0) throw std::invalid_argument("norm_relative: t is a root of the modulus");

    // prod_j (X - t^{q^j}) over the extension, then descend coefficients.
    std::vector<fe_t> prod{1};
    fe_t conj = t;
    for (unsigned j = 0; j < rel; ++j) {
        std::vector<fe_t> next(prod.size() + 1, 0);
        fe_t mc = kr->neg(conj);
        for (size_t i = 0; i < prod.size(); ++i) {
            next[i + 1] = kr->add(next[i + 1], prod[i]);
            next[i] = kr->add(next[i], kr->mul(prod[i], mc));
        }
        prod = std::move(next);
        conj = kr->pow(conj, std::int64_t(k_->q()));
    }
    std::vector<fe_t> down(prod.size());
    for (size_t i = 0; i < prod.size(); ++i)
        if (!base_to_ext.invert(prod[i], down[i]))
            throw std::logic_error("norm_relative: coefficient not Galois invariant");
    return {poly_rem(poly_from_coeffs(k_, std::move(down)), f_)};
}

Residue ResidueAlgebra::norm_relative(unsigned rel, fe_t t) const {
    if (rel < 1) throw std::invalid_argument("norm_relative: r must be >= 1");
    FieldPtr kr = make_field(k_->p(), k_->e() * rel, k_->seed());
    Embedding emb(k_, kr);
    return norm_relative(emb, t);
}

std::optional<std::uint32_t> ResidueAlgebra::unit_index(const Residue& a) const {
    auto it = unit_map_.find(poly_key(a.rep));
    if (it == unit_map_.end()) return std::nullopt;
    return it->second;
}

void ResidueAlgebra::unit_tuple(std::uint32_t idx, std::uint32_t* out) const {
    std::uint64_t v = idx;
    for (size_t i = 0; i < r(); ++i) {
        out[i] = std::uint32_t(v % component_order(i));
        v /= component_order(i);
    }
}

std::uint32_t ResidueAlgebra::unit_from_tuple(const std::uint32_t* t) const {
    std::uint64_t v = 0;
    for (size_t i = r(); i-- > 0;) v = v * component_order(i) + t[i];
    return std::uint32_t(v);
}

std::uint32_t ResidueAlgebra::unit_mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t va = a, vb = b, v = 0, scale = 1;
    for (size_t i = 0; i < r(); ++i) {
        std::uint64_t mi = component_order(i);
        v += (va % mi + vb % mi) % mi * scale;
        va /= mi;
        vb /= mi;
        scale *= mi;
    }
    return std::uint32_t(v);
}

std::uint32_t ResidueAlgebra::unit_inv(std::uint32_t a) const {
    std::uint64_t va = a, v = 0, scale = 1;
    for (size_t i = 0; i < r(); ++i) {
        std::uint64_t mi = component_order(i);
        std::uint64_t t = va % mi;
        v += (t == 0 ? 0 : mi - t) * scale;
        va /= mi;
        scale *= mi;
    }
    return std::uint32_t(v);
}

}  // namespace ffec
