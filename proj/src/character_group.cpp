#include "ffec/character_group.hpp"

#include <cmath>
#include <stdexcept>

namespace ffec {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

struct Kahan {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// One DFT per mixed-radix axis; index layout has axis 0 fastest, matching
// the unit/character encodings. conjugate flips the twiddle sign.
std::vector<std::complex<double>> axis_dft(const CharacterGroup& G,
                                           std::vector<std::complex<double>> data,
                                           bool conjugate) {
    const auto& A = *G.algebra();
    size_t total = data.size();
    size_t stride = 1;
    std::vector<std::complex<double>> w, buf;
    for (size_t ax = 0; ax < A.r(); ++ax) {
        size_t m = size_t(A.component_order(ax));
        w.assign(m, {1.0, 0.0});
        for (size_t j = 1; j < m; ++j) {
            double ang = kTau * double(j) / double(m);
            w[j] = {std::cos(ang), conjugate ? -std::sin(ang) : std::sin(ang)};
        }
        buf.assign(m, {0.0, 0.0});
        size_t block = stride * m;
        for (size_t base = 0; base < total; base += block) {
            for (size_t off = 0; off < stride; ++off) {
                for (size_t t = 0; t < m; ++t) buf[t] = data[base + off + t * stride];
                for (size_t e = 0; e < m; ++e) {
                    std::complex<double> acc{0.0, 0.0};
                    for (size_t t = 0; t < m; ++t) acc += buf[t] * w[(e * t) % m];
                    data[base + off + e * stride] = acc;
                }
            }
        }
        stride = block;
    }
    return data;
}

}  // namespace

std::shared_ptr<const CharacterGroup> CharacterGroup::make(AlgebraPtr A,
                                                           std::uint64_t field_cap) {
    auto G = std::shared_ptr<CharacterGroup>(new CharacterGroup());
    G->A_ = A;
    const auto& k = A->field();

    G->N_ = 1;
    for (size_t i = 0; i < A->r(); ++i) G->N_ = lcm_u64(G->N_, A->component_order(i));
    G->root_.resize(G->N_);
    for (std::uint64_t j = 0; j < G->N_; ++j) {
        double ang = kTau * double(j) / double(G->N_);
        G->root_[j] = {std::cos(ang), std::sin(ang)};
    }

    for (size_t i = 0; i < A->r(); ++i) {
        const auto& Ki = A->component_field(i);
        const auto& emb = A->component_embedding(i);
        std::uint64_t mi = A->component_order(i);
        G->weight_.push_back(G->N_ / mi);
        G->scalar_dlog_.push_back(k->q() == 2 ? 0 : Ki->dlog(emb.map(k->generator())));
        std::uint64_t sub_index = mi / (k->q() - 1);
        fe_t norm_gi_up = Ki->exp(sub_index);  // Norm(g_i) inside the component
        fe_t norm_gi;
        if (!emb.invert(norm_gi_up, norm_gi))
            throw std::logic_error("CharacterGroup: component norm not in base field");
        G->norm_dlog_.push_back(norm_gi == 1 ? 0 : k->dlog(norm_gi));
    }

    G->unit_tuples_.resize(size_t(A->unit_order()) * A->r());
    for (std::uint64_t u = 0; u < A->unit_order(); ++u)
        A->unit_tuple(std::uint32_t(u), &G->unit_tuples_[size_t(u) * A->r()]);

    // Pullback exponents for the genericity conditions.
    std::uint64_t M = 1;
    for (size_t i = 0; i < A->r(); ++i) M = lcm_u64(M, std::uint64_t(A->factor_degree(i)));
    std::uint64_t qM = 1;
    for (std::uint64_t i = 0; i < M; ++i) {
        if (qM > field_cap / k->q()) {
            G->trg_ok_ = false;
            break;
        }
        qM *= k->q();
    }
    if (G->trg_ok_ && qM > field_cap) G->trg_ok_ = false;
    if (G->trg_ok_) {
        FieldPtr KM = make_field(k->p(), k->e() * unsigned(M), k->seed(), field_cap);
        G->qm1_ = qM - 1;
        for (size_t i = 0; i < A->r(); ++i) {
            const auto& Ki = A->component_field(i);
            std::uint64_t mi = A->component_order(i);
            std::uint64_t nu = G->qm1_ / mi;
            Embedding up(Ki, KM);
            std::uint64_t sigma;
            if (mi == 1) {
                sigma = 1;
            } else {
                std::uint64_t dl = KM->dlog(up.map(Ki->generator()));
                if (dl % nu != 0)
                    throw std::logic_error("CharacterGroup: generator image off subgroup");
                sigma = dl / nu;
            }
            std::uint64_t ci = (mi == 1) ? 0 : inv_mod_u64(sigma % mi, mi);
            std::uint64_t qj = 1 % G->qm1_;
            for (int j = 0; j < A->factor_degree(i); ++j) {
                G->pull_base_.push_back(ci % G->qm1_ * qj % G->qm1_ * (nu % G->qm1_) % G->qm1_);
                qj = qj * (k->q() % G->qm1_) % G->qm1_;
            }
        }
    }
    return G;
}

std::uint64_t CharacterGroup::pairing(std::uint32_t chi, std::uint32_t unit) const {
    std::uint64_t acc = 0, v = chi;
    const std::uint32_t* t = &unit_tuples_[size_t(unit) * r()];
    for (size_t i = 0; i < r(); ++i) {
        std::uint64_t mi = A_->component_order(i);
        acc += (v % mi) * t[i] % N_ * weight_[i] % N_;
        v /= mi;
    }
    return acc % N_;
}

std::complex<double> CharacterGroup::evaluate_at(std::uint32_t chi, const Residue& a) const {
    auto idx = A_->unit_index(a);
    if (!idx) return {0.0, 0.0};
    return evaluate(chi, *idx);
}

std::complex<double> CharacterGroup::evaluate_scalar(std::uint32_t chi, fe_t c) const {
    if (c == 0) return {0.0, 0.0};
    std::uint64_t dc = A_->field()->q() == 2 ? 0 : A_->field()->dlog(c);
    std::uint64_t acc = 0, v = chi;
    for (size_t i = 0; i < r(); ++i) {
        std::uint64_t mi = A_->component_order(i);
        acc += (v % mi) * (scalar_dlog_[i] * dc % mi) % N_ * weight_[i] % N_;
        v /= mi;
    }
    return root_[acc % N_];
}

CharClassification CharacterGroup::classify(std::uint32_t chi) const {
    CharClassification out;
    std::vector<std::uint64_t> e(r());
    std::uint64_t v = chi;
    for (size_t i = 0; i < r(); ++i) {
        e[i] = v % A_->component_order(i);
        v /= A_->component_order(i);
    }
    out.principal = true;
    out.primitive = true;
    std::uint64_t scal = 0;
    for (size_t i = 0; i < r(); ++i) {
        if (e[i] != 0) out.principal = false;
        if (e[i] == 0) out.primitive = false;
        scal = (scal + e[i] * scalar_dlog_[i] % N_ * weight_[i]) % N_;
    }
    out.odd = (scal != 0);
    out.totally_ramified = out.primitive && out.odd;
    if (!out.totally_ramified) return out;
    if (!trg_ok_) {
        out.trg_determined = false;
        return out;
    }

    std::vector<std::uint64_t> u;
    size_t pos = 0;
    for (size_t i = 0; i < r(); ++i)
        for (int j = 0; j < A_->factor_degree(i); ++j, ++pos)
            u.push_back(e[i] % qm1_ * pull_base_[pos] % qm1_);
    bool distinct = true;
    for (size_t a = 0; a < u.size() && distinct; ++a)
        for (size_t b = a + 1; b < u.size(); ++b)
            if (u[a] == u[b]) {
                distinct = false;
                break;
            }
    std::uint64_t S = 0;
    for (auto x : u) S = (S + x) % qm1_;
    bool skew = false;
    for (auto x : u)
        if (x * std::uint64_t(u.size()) % qm1_ != S) {
            skew = true;
            break;
        }
    out.totally_ramified_generic = distinct && S != 0 && skew;
    return out;
}

CharClassCounts CharacterGroup::count_classes() const {
    CharClassCounts c;
    c.all = size();
    for (std::uint64_t chi = 0; chi < size(); ++chi) {
        auto cl = classify(std::uint32_t(chi));
        if (cl.principal) ++c.principal;
        if (cl.primitive) ++c.primitive;
        if (cl.odd) ++c.odd;
        if (cl.totally_ramified) ++c.totally_ramified;
        if (!cl.trg_determined) c.trg_determined = false;
        if (cl.totally_ramified_generic) ++c.totally_ramified_generic;
    }
    return c;
}

std::uint32_t CharacterGroup::twist_by_norm(std::uint32_t chi, std::uint64_t rho_exp) const {
    const auto& k = A_->field();
    std::uint64_t rho = rho_exp % (k->q() - 1);
    std::vector<std::uint32_t> e(r());
    exponents(chi, e.data());
    for (size_t i = 0; i < r(); ++i) {
        std::uint64_t mi = A_->component_order(i);
        std::uint64_t delta = rho * norm_dlog_[i] % (k->q() - 1) * (mi / (k->q() - 1)) % mi;
        e[i] = std::uint32_t((e[i] + delta) % mi);
    }
    return from_exponents(e.data());
}

std::vector<std::complex<double>> fourier_naive(const CharacterGroup& G,
                                                const std::vector<std::complex<double>>& mass) {
    if (mass.size() != G.size()) throw std::invalid_argument("fourier: size mismatch");
    std::uint64_t n = G.size();
    std::vector<std::complex<double>> out(n);
    for (std::uint64_t chi = 0; chi < n; ++chi) {
        Kahan re, im;
        for (std::uint64_t a = 0; a < n; ++a) {
            auto v = mass[a] * G.evaluate(std::uint32_t(chi), std::uint32_t(a));
            re.add(v.real());
            im.add(v.imag());
        }
        out[chi] = {re.s, im.s};
    }
    return out;
}

std::vector<std::complex<double>> fourier_forward(const CharacterGroup& G,
                                                  const std::vector<std::complex<double>>& mass) {
    if (mass.size() != G.size()) throw std::invalid_argument("fourier: size mismatch");
    return axis_dft(G, mass, false);
}

std::vector<std::complex<double>> dual_transform(const CharacterGroup& G,
                                                 const std::vector<std::complex<double>>& w) {
    if (w.size() != G.size()) throw std::invalid_argument("fourier: size mismatch");
    return axis_dft(G, w, true);
}

std::vector<std::complex<double>> fourier_inverse(const CharacterGroup& G,
                                                  const std::vector<std::complex<double>>& what) {
    auto out = dual_transform(G, what);
    double scale = 1.0 / double(G.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace ffec
