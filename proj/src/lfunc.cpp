#include "ffec/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffec {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::complex<double> eval_poly(const std::vector<std::complex<double>>& a,
                               std::complex<double> x) {
    std::complex<double> v{0.0, 0.0};
    for (size_t i = a.size(); i-- > 0;) v = v * x + a[i];
    return v;
}

std::complex<double> eval_deriv(const std::vector<std::complex<double>>& a,
                                std::complex<double> x) {
    std::complex<double> v{0.0, 0.0};
    for (size_t i = a.size(); i-- > 1;) v = v * x + a[i] * double(i);
    return v;
}

}  // namespace

std::vector<std::complex<double>> poly_roots_monic(std::vector<std::complex<double>> a) {
    if (a.empty() || std::abs(a.back() - 1.0) > 1e-12)
        throw std::invalid_argument("poly_roots_monic: polynomial must be monic");
    size_t d = a.size() - 1;
    if (d == 0) return {};
    if (d == 1) return {-a[0]};

    double radius = 0.0;
    for (size_t i = 0; i < d; ++i) radius = std::max(radius, std::abs(a[i]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(d);
    std::complex<double> seed{0.4, 0.9};
    std::complex<double> cur{1.0, 0.0};
    for (size_t i = 0; i < d; ++i) {
        cur *= seed;
        z[i] = radius * cur;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (size_t i = 0; i < d; ++i) {
            std::complex<double> den{1.0, 0.0};
            for (size_t j = 0; j < d; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0.0) {
                z[i] += std::complex<double>(1e-8, 1e-8);
                moved = 1.0;
                continue;
            }
            std::complex<double> delta = eval_poly(a, z[i]) / den;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * radius) break;
    }
    for (size_t i = 0; i < d; ++i) {
        for (int step = 0; step < 3; ++step) {
            std::complex<double> dv = eval_deriv(a, z[i]);
            if (std::abs(dv) < 1e-12) break;
            std::complex<double> delta = eval_poly(a, z[i]) / dv;
            if (std::abs(delta) > 1e-3 * radius) break;  // multiple root, keep DK value
            z[i] -= delta;
        }
    }
    return z;
}

LfuncContext::LfuncContext(CharGroupPtr G, unsigned m_max, const std::string& cache_dir)
    : G_(std::move(G)), m_max_(m_max) {
    const auto& A = *G_->algebra();
    const auto& k = A.field();
    unsigned n = unsigned(A.n());
    std::uint64_t nu = A.unit_order();

    monic_hat_.resize(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        std::vector<std::complex<double>> bucket(nu, {0.0, 0.0});
        if (m == 0) {
            bucket[0] += 1.0;
        } else {
            for (std::uint64_t i = 0; i < monic_count(k, m); ++i) {
                auto idx = A.unit_index(A.reduce(monic_at(k, m, i)));
                if (idx) bucket[*idx] += 1.0;
            }
        }
        monic_hat_[m] = fourier_forward(*G_, bucket);
    }

    IrreducibleTable irr(k, std::max(1u, m_max_), cache_dir);
    psi_hat_.resize(m_max_);
    for (unsigned m = 1; m <= m_max_; ++m) {
        std::vector<std::complex<double>> mass(nu, {0.0, 0.0});
        for (const auto& [rep, wt] : psi_mass(A.modulus(), m, irr)) {
            auto idx = A.unit_index({rep});
            if (!idx) throw std::logic_error("LfuncContext: prime power mass off units");
            mass[*idx] += double(wt);
        }
        psi_hat_[m - 1] = fourier_forward(*G_, mass);
    }

    unsigned r_top = std::max(1u, n - 1);
    for (unsigned r = 1; r <= r_top; ++r) {
        std::uint64_t qr = 1;
        bool fits = true;
        for (unsigned i = 0; i < r; ++i) {
            if (qr > kDefaultFieldCap / k->q()) {
                fits = false;
                break;
            }
            qr *= k->q();
        }
        if (!fits) break;
        FieldPtr kr = make_field(k->p(), k->e() * r, k->seed());
        Embedding emb(k, kr);
        std::vector<std::uint32_t> us;
        us.reserve(qr);
        for (std::uint64_t t = 0; t < qr; ++t) {
            fe_t fval = 0;
            for (size_t j = A.modulus().c.size(); j-- > 0;)
                fval = kr->add(kr->mul(fval, fe_t(t)), emb.map(A.modulus().c[j]));
            if (fval == 0) continue;
            auto idx = A.unit_index(A.norm_relative(emb, fe_t(t)));
            if (!idx) throw std::logic_error("LfuncContext: relative norm off units");
            us.push_back(*idx);
        }
        sr_units_.push_back(std::move(us));
    }
}

const std::vector<std::complex<double>>& LfuncContext::monic_transform(unsigned m) const {
    if (m >= monic_hat_.size()) throw std::out_of_range("monic_transform: degree too large");
    return monic_hat_[m];
}

const std::vector<std::complex<double>>& LfuncContext::psi_transform(unsigned m) const {
    if (m < 1 || m > m_max_) throw std::out_of_range("psi_transform: m outside 1..m_max");
    return psi_hat_[m - 1];
}

std::complex<double> LfuncContext::s_r(std::uint32_t chi, unsigned r) const {
    if (r < 1 || r > sr_units_.size()) throw std::out_of_range("s_r: r outside cached range");
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    for (auto u : sr_units_[r - 1]) {
        auto v = G_->evaluate(chi, u);
        double y = v.real() - cre, t = re + y;
        cre = (t - re) - y;
        re = t;
        y = v.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
    }
    return {re, im};
}

LPolynomial LfuncContext::l_polynomial(std::uint32_t chi) const {
    if (chi == G_->principal_index())
        throw std::invalid_argument("l_polynomial: principal character has no L-polynomial");
    unsigned n = unsigned(algebra()->n());
    LPolynomial L;
    L.chi = chi;
    L.c.resize(n);
    for (unsigned m = 0; m < n; ++m) L.c[m] = monic_hat_[m][chi];
    return L;
}

std::vector<std::complex<double>> LfuncContext::lpoly_from_s(std::uint32_t chi) const {
    if (chi == G_->principal_index())
        throw std::invalid_argument("lpoly_from_s: principal character has no L-polynomial");
    unsigned n = unsigned(algebra()->n());
    if (n >= 2 && sr_units_.size() < n - 1)
        throw std::length_error("lpoly_from_s: S_r cache does not reach degree n-1");
    std::vector<std::complex<double>> S(n, {0.0, 0.0});
    for (unsigned r = 1; r + 1 <= n; ++r) S[r] = s_r(chi, r);
    std::vector<std::complex<double>> E(n, {0.0, 0.0});
    E[0] = {1.0, 0.0};
    for (unsigned m = 1; m < n; ++m) {
        std::complex<double> acc{0.0, 0.0};
        for (unsigned r = 1; r <= m; ++r) acc += S[r] * E[m - r];
        E[m] = acc / double(m);
    }
    return E;
}

UnitaryClass LfuncContext::unitarize(const LPolynomial& L) const {
    unsigned n = unsigned(algebra()->n());
    double sq = std::sqrt(double(algebra()->field()->q()));
    std::vector<std::complex<double>> rev(n);
    for (unsigned m = 0; m < n; ++m) rev[m] = L.c[n - 1 - m];
    // c_0 = 1 is the leading coefficient of the reversed polynomial.
    UnitaryClass out;
    out.beta = poly_roots_monic(std::move(rev));
    std::sort(out.beta.begin(), out.beta.end(), [&](const auto& x, const auto& y) {
        double ax = std::atan2(x.imag(), x.real());
        double ay = std::atan2(y.imag(), y.real());
        if (ax != ay) return ax < ay;
        return std::abs(x) < std::abs(y);
    });
    out.on_circle = true;
    for (const auto& b : out.beta) {
        double ang = std::atan2(b.imag(), b.real());
        if (ang < 0) ang += kTau;
        out.angles.push_back(ang);
        double mag = std::abs(b) / sq;
        out.magnitudes.push_back(mag);
        if (std::abs(mag - 1.0) > 1e-6) out.on_circle = false;
    }
    return out;
}

std::vector<std::complex<double>> newton_power_sums(const LPolynomial& L, unsigned m_max) {
    std::vector<std::complex<double>> p(m_max + 1, {0.0, 0.0});
    auto coeff = [&](unsigned i) -> std::complex<double> {
        return i < L.c.size() ? L.c[i] : std::complex<double>{0.0, 0.0};
    };
    for (unsigned m = 1; m <= m_max; ++m) {
        std::complex<double> acc = double(m) * coeff(m);
        for (unsigned k = 1; k < m; ++k) acc += coeff(k) * p[m - k];
        p[m] = -acc;
    }
    return std::vector<std::complex<double>>(p.begin() + 1, p.end());
}

std::complex<double> trace_power(const UnitaryClass& u, unsigned m) {
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < u.beta.size(); ++i)
        acc += std::polar(std::pow(u.magnitudes[i], double(m)), double(m) * u.angles[i]);
    return acc;
}

int measure_trace_sign(const LfuncContext& ctx, unsigned m_max, double rel_tol) {
    const auto& G = *ctx.group();
    double q = double(ctx.algebra()->field()->q());
    int sign = 0;
    for (std::uint64_t chi = 1; chi < G.size(); ++chi) {
        auto L = ctx.l_polynomial(std::uint32_t(chi));
        auto u = ctx.unitarize(L);
        for (unsigned m = 1; m <= m_max; ++m) {
            auto psi = ctx.psi(std::uint32_t(chi), m);
            auto tq = std::pow(q, 0.5 * double(m)) * trace_power(u, m);
            double scale = std::max({1.0, std::abs(psi), std::abs(tq)});
            double err_p = std::abs(psi - tq), err_m = std::abs(psi + tq);
            if (err_p <= rel_tol * scale && err_m <= rel_tol * scale) continue;
            int here;
            if (err_p <= rel_tol * scale)
                here = 1;
            else if (err_m <= rel_tol * scale)
                here = -1;
            else
                throw std::logic_error("measure_trace_sign: trace identity violated");
            if (sign == 0) sign = here;
            if (sign != here)
                throw std::logic_error("measure_trace_sign: inconsistent sign across characters");
        }
    }
    return sign;
}

}  // namespace ffec
