#include "ffec/erdos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffec {

namespace {

constexpr double kPi = 3.14159265358979323846;

using i128 = __int128;

// q^d with the algebra cap; keeps T <= 2 q^d <= 2^21 so every quantity in
// the exact Markov chain stays below 2^127.
std::uint64_t capped_pow(std::uint64_t q, unsigned d) {
    std::uint64_t v = 1;
    for (unsigned m = 0; m < d; ++m) {
        if (v > kDefaultAlgebraCap / q)
            throw std::length_error("lambda_mass: q^d exceeds cap");
        v *= q;
    }
    return v;
}

}  // namespace

std::vector<std::int64_t> lambda_mass(const ResidueAlgebra& B, unsigned d,
                                      const IrreducibleTable& irr) {
    capped_pow(B.field()->q(), d);
    std::vector<std::int64_t> mass(B.unit_order(), 0);
    for (unsigned m = 1; m <= d; ++m) {
        for (const auto& [rep, w] : psi_mass(B.modulus(), m, irr)) {
            auto idx = B.unit_index(Residue{rep});
            if (!idx) throw std::logic_error("lambda_mass: nonunit mass bucket");
            mass[*idx] += w;
        }
    }
    return mass;
}

SumReport erdos_sums(const CharacterGroup& G, unsigned d, const IrreducibleTable& irr) {
    const ResidueAlgebra& B = *G.algebra();
    const std::uint64_t N = B.unit_order();
    const std::uint64_t q = B.field()->q();
    const unsigned n = unsigned(B.n());

    SumReport rep;
    rep.d = d;
    auto mass = lambda_mass(B, d, irr);

    std::int64_t t = 0;
    for (auto v : mass) t += v;
    rep.total_mass = t;
    rep.main_term = double(t) * double(t) / double(N);

    rep.main_lower_bound_applies = q >= n;
    if (rep.main_lower_bound_applies) {
        i128 lo = i128(capped_pow(q, d)) - i128(d) * n;
        if (lo < 0) lo = 0;
        i128 lhs = i128(t) * t;
        for (unsigned m = 0; m < n; ++m) lhs *= i128(q);
        rep.main_lower_bound_ok = lhs >= i128(N) * lo * lo;
    }

    rep.s_direct.assign(N, 0);
    std::vector<std::uint32_t> support;
    for (std::uint32_t u = 0; u < N; ++u)
        if (mass[u] != 0) support.push_back(u);
    for (auto u : support)
        for (auto v : support) rep.s_direct[B.unit_mul(u, v)] += mass[u] * mass[v];

    std::vector<std::complex<double>> mc(N);
    for (std::uint32_t u = 0; u < N; ++u) mc[u] = double(mass[u]);
    auto hat = fourier_forward(G, mc);
    for (auto& z : hat) z *= z;
    rep.s_char = fourier_inverse(G, hat);

    const i128 t2 = i128(t) * t;
    i128 sum_s = 0, dev_excl = 0, dev_all = 0;
    rep.remainder.resize(N);
    for (std::uint32_t u = 0; u < N; ++u) {
        const std::int64_t s = rep.s_direct[u];
        sum_s += s;
        rep.remainder[u] = double(s) - rep.main_term;
        double err = std::abs(rep.s_char[u] - std::complex<double>(double(s))) /
                     std::max<double>(1.0, double(s));
        rep.max_char_err = std::max(rep.max_char_err, err);
        i128 dev = i128(s) * i128(N) - t2;
        dev_all += dev * dev;
        if (s <= 0) {
            rep.exceptional.push_back(u);
            dev_excl += dev * dev;
        }
    }
    rep.sum_rule_ok = sum_s == t2;
    rep.markov_ok =
        i128(rep.exceptional.size()) * t2 * t2 <= dev_excl && dev_excl <= dev_all;
    rep.mean_r_sq = double(dev_all) / (double(N) * double(N) * double(N));
    rep.mean_r_sq_ref =
        std::pow(double(n), 4.0) * std::pow(double(q), 2.0 * d - double(n));
    return rep;
}

CoverageReport coverage_scan(const ResidueAlgebra& B, CoverageVariant v,
                             const IrreducibleTable& irr) {
    const unsigned n = unsigned(B.n());
    const unsigned need = v == CoverageVariant::kDegreeSum ? 2 * n - 1 : n;
    if (irr.d_max() < need)
        throw std::invalid_argument("coverage_scan: irreducible table too shallow");

    const std::uint64_t N = B.unit_order();
    CoverageReport rep;
    rep.variant = v;
    rep.covered.assign(N, 0);
    rep.witness.assign(N, {});

    std::vector<std::pair<unsigned, unsigned>> degs;
    switch (v) {
        case CoverageVariant::kDegreeAtMost:
            for (unsigned d1 = 1; d1 <= n; ++d1)
                for (unsigned d2 = d1; d2 <= n; ++d2) degs.emplace_back(d1, d2);
            break;
        case CoverageVariant::kDegreeSum:
            for (unsigned d1 = 1; d1 <= n; ++d1) degs.emplace_back(d1, 2 * n - d1);
            break;
        case CoverageVariant::kDegreeExact:
            degs.emplace_back(n, n);
            break;
    }

    std::uint64_t covered = 0;
    for (auto [d1, d2] : degs) {
        const auto& lo = irr.degree(d1);
        const auto& hi = irr.degree(d2);
        for (size_t i1 = 0; i1 < lo.size() && covered < N; ++i1) {
            size_t start = d1 == d2 ? i1 : 0;
            for (size_t i2 = start; i2 < hi.size() && covered < N; ++i2) {
                auto idx = B.unit_index(B.reduce(poly_mul(lo[i1], hi[i2])));
                if (!idx || rep.covered[*idx]) continue;
                rep.covered[*idx] = 1;
                rep.witness[*idx] = {lo[i1], hi[i2]};
                ++covered;
            }
        }
    }
    rep.covered_count = covered;
    rep.is_full = covered == N;

    rep.witnesses_ok = true;
    for (std::uint32_t u = 0; u < N; ++u) {
        if (!rep.covered[u]) continue;
        const auto& [g1, g2] = rep.witness[u];
        unsigned e1 = unsigned(g1.degree());
        unsigned e2 = unsigned(g2.degree());
        bool deg_ok = false;
        switch (v) {
            case CoverageVariant::kDegreeAtMost: deg_ok = e1 <= n && e2 <= n; break;
            case CoverageVariant::kDegreeSum: deg_ok = e1 + e2 == 2 * n; break;
            case CoverageVariant::kDegreeExact: deg_ok = e1 == n && e2 == n; break;
        }
        bool ok = deg_ok && g1.is_monic() && g2.is_monic() && is_irreducible(g1) &&
                  is_irreducible(g2) &&
                  B.unit_index(B.reduce(poly_mul(g1, g2))) == u;
        if (!ok) rep.witnesses_ok = false;
    }
    return rep;
}

TotRamTraces totram_traces(const LfuncContext& ctx, unsigned m_top, int sign) {
    const CharacterGroup& G = *ctx.group();
    const double dim = double(G.algebra()->n() - 1);
    TotRamTraces tt;
    tt.m_top = m_top;
    for (std::uint32_t chi = 1; chi < G.size(); ++chi) {
        if (!G.classify(chi).totally_ramified) continue;
        auto u = ctx.unitarize(ctx.l_polynomial(chi));
        std::vector<std::complex<double>> row(m_top + 1);
        row[0] = dim;
        for (unsigned m = 1; m <= m_top; ++m)
            row[m] = double(sign) * trace_power(u, m);
        tt.chis.push_back(chi);
        tt.tr.push_back(std::move(row));
    }
    return tt;
}

TraceBoundRecord verify_trace_bound(const LfuncContext& ctx, const TotRamTraces& tt,
                                    int i, int j) {
    if (i < 0 || j < 0 || unsigned(i) > tt.m_top || unsigned(j) > tt.m_top)
        throw std::invalid_argument("verify_trace_bound: power out of range");
    const CharacterGroup& G = *ctx.group();
    const ResidueAlgebra& B = *G.algebra();
    const int n = B.n();
    const double q = double(B.field()->q());

    TraceBoundRecord rec;
    rec.i = i;
    rec.j = j;
    rec.hypothesis = std::sqrt(q) >= 2.0 * n + 1.0;
    rec.totram = tt.chis.size();

    std::vector<std::complex<double>> w(G.size(), {0.0, 0.0});
    for (size_t pos = 0; pos < tt.chis.size(); ++pos)
        w[tt.chis[pos]] = tt.tr[pos][unsigned(i)] * tt.tr[pos][unsigned(j)];
    auto vee = dual_transform(G, w);
    for (std::uint32_t a = 0; a < vee.size(); ++a) {
        double v = std::abs(vee[a]);
        if (v > rec.max_lhs) {
            rec.max_lhs = v;
            rec.argmax = a;
        }
    }

    const int hi = std::max(i, j), lo = std::min(i, j);
    const double chi_dim = i + j == 0 ? 1.0 : double(dim_two_row(hi, lo));
    rec.rhs = double(partition_count(i + j)) * chi_dim * double(rec.totram) * 2.0 *
              (i + j + 1) * std::pow(double(n), double(i + j)) / std::sqrt(q);
    rec.pass = rec.max_lhs <= rec.rhs * (1.0 + 1e-9) + 1e-9;
    return rec;
}

RBoundRecord final_r_bound(const ResidueAlgebra& B, const SumReport& rep) {
    const int n = B.n();
    const double q = double(B.field()->q());
    RBoundRecord rec;
    rec.hypothesis = std::sqrt(q) >= 2.0 * n + 1.0;
    for (double r : rep.remainder) rec.max_abs_r = std::max(rec.max_abs_r, std::abs(r));
    const double lead = std::exp(log_c_n(n)) * std::pow(q, n - 0.5);
    rec.bound = lead + 2.0 * (n + 1) * std::pow(double(n), 4.0) * std::pow(q, n - 1.0);
    rec.ratio = rec.max_abs_r / lead;
    rec.pass = !rec.hypothesis || rec.max_abs_r <= rec.bound;
    return rec;
}

double log_c_n(int n) {
    return (2.0 * n + 3.0) * std::log(2.0 * n) + kPi * std::sqrt(4.0 * n / 3.0);
}

ConstantsReport constants_report(int n_max) {
    if (n_max < 2) throw std::invalid_argument("constants_report: n_max < 2");
    ConstantsReport rep;
    rep.q_bound_ok = true;
    for (int n = 2; n <= n_max; ++n) {
        ConstantsRecord row;
        row.n = n;
        row.log_c = log_c_n(n);
        row.log_q = 2.0 * (std::log(2.0) + row.log_c);
        row.log_cap = 23.0 * n * std::log(double(n));
        row.q_ok = row.log_q <= row.log_cap;
        rep.q_bound_ok = rep.q_bound_ok && row.q_ok;
        rep.rows.push_back(row);
    }

    rep.partition_bound_ok = true;
    for (int m = 0; m <= 200; ++m)
        if (double(partition_count(m)) > std::exp(kPi * std::sqrt(2.0 * m / 3.0)))
            rep.partition_bound_ok = false;

    rep.binomial_identity_ok = true;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= i; ++j) {
            if (i + j == 0) continue;
            std::int64_t lhs = std::int64_t(i + j + 1) * dim_two_row(i, j);
            std::int64_t binom = 1;
            for (int t = 1; t <= j; ++t) binom = binom * (i + 1 + t) / t;
            std::int64_t cap = (std::int64_t(1) << (i + j + 1)) * 2 * std::max(i, 1);
            if (lhs != binom * (i + 1 - j) || lhs > cap) rep.binomial_identity_ok = false;
        }
    return rep;
}

std::vector<Poly> squarefree_monic(const FieldPtr& k, unsigned n) {
    std::vector<Poly> out;
    const std::uint64_t total = monic_count(k, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly f = monic_at(k, n, idx);
        if (poly_gcd(f, poly_derivative(f)).degree() == 0) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace ffec
