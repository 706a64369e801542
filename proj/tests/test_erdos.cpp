#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffec/erdos.hpp"

#include <cmath>
#include <set>

using namespace ffec;

namespace {

Poly from_coeffs(const FieldPtr& k, std::vector<fe_t> c) {
    return poly_from_coeffs(k, std::move(c));
}

// Pair sums straight from polynomial arithmetic: every ordered pair of
// monic prime powers of degree <= d, weighted by von Mangoldt, reduced
// mod f. Independent of the unit-index convolution path.
std::vector<std::int64_t> brute_pair_sums(const ResidueAlgebra& B, unsigned d) {
    std::vector<std::pair<Poly, std::int64_t>> weighted;
    for (unsigned m = 1; m <= d; ++m)
        for (std::uint64_t idx = 0; idx < monic_count(B.field(), m); ++idx) {
            Poly g = monic_at(B.field(), m, idx);
            int lam = von_mangoldt(g);
            if (lam > 0) weighted.emplace_back(std::move(g), lam);
        }
    std::vector<std::int64_t> s(B.unit_order(), 0);
    for (const auto& [g1, w1] : weighted)
        for (const auto& [g2, w2] : weighted) {
            auto idx = B.unit_index(B.reduce(poly_mul(g1, g2)));
            if (idx) s[*idx] += w1 * w2;
        }
    return s;
}

// Coverage by direct monic enumeration, no irreducible table involved.
std::set<std::uint32_t> brute_cover(const ResidueAlgebra& B, CoverageVariant v) {
    const unsigned n = unsigned(B.n());
    std::vector<Poly> primes;
    unsigned top = v == CoverageVariant::kDegreeSum ? 2 * n - 1 : n;
    for (unsigned m = 1; m <= top; ++m)
        for (std::uint64_t idx = 0; idx < monic_count(B.field(), m); ++idx) {
            Poly g = monic_at(B.field(), m, idx);
            if (is_irreducible(g)) primes.push_back(std::move(g));
        }
    std::set<std::uint32_t> out;
    for (const auto& g1 : primes)
        for (const auto& g2 : primes) {
            unsigned e1 = unsigned(g1.degree()), e2 = unsigned(g2.degree());
            bool ok = false;
            switch (v) {
                case CoverageVariant::kDegreeAtMost: ok = e1 <= n && e2 <= n; break;
                case CoverageVariant::kDegreeSum: ok = e1 + e2 == 2 * n; break;
                case CoverageVariant::kDegreeExact: ok = e1 == n && e2 == n; break;
            }
            if (!ok) continue;
            auto idx = B.unit_index(B.reduce(poly_mul(g1, g2)));
            if (idx) out.insert(*idx);
        }
    return out;
}

void check_sum_report(const CharacterGroup& G, const SumReport& rep) {
    const auto& B = *G.algebra();
    const std::uint64_t N = B.unit_order();
    REQUIRE(rep.s_direct.size() == N);

    auto brute = brute_pair_sums(B, rep.d);
    std::int64_t total = 0;
    for (std::uint32_t u = 0; u < N; ++u) {
        CHECK(rep.s_direct[u] == brute[u]);
        CHECK(rep.s_direct[u] >= 0);
        total += rep.s_direct[u];
    }
    CHECK(total == rep.total_mass * rep.total_mass);
    CHECK(rep.sum_rule_ok);
    CHECK(rep.markov_ok);
    CHECK(rep.max_char_err <= 1e-6);
    if (B.field()->q() >= std::uint64_t(B.n())) {
        CHECK(rep.main_lower_bound_applies);
        CHECK(rep.main_lower_bound_ok);
    }
    for (auto u : rep.exceptional) CHECK(rep.s_direct[u] == 0);

    // S = M + R by construction; mean |R|^2 via the parallel-axis form.
    double rsum = 0.0, rsq = 0.0;
    for (std::uint32_t u = 0; u < N; ++u) {
        CHECK(rep.remainder[u] == doctest::Approx(double(rep.s_direct[u]) - rep.main_term));
        rsum += rep.remainder[u];
        rsq += rep.remainder[u] * rep.remainder[u];
    }
    CHECK(std::abs(rsum) <= 1e-6 * std::max(1.0, double(rep.total_mass)));
    CHECK(rep.mean_r_sq == doctest::Approx(rsq / double(N)).epsilon(1e-9));
}

}  // namespace

TEST_CASE("lambda mass and main term against hand values") {
    auto k = make_field(5, 1);
    auto f = from_coeffs(k, {0, 1, 1});  // X(X+1)
    auto B = ResidueAlgebra::make(k, f);
    IrreducibleTable irr(k, 3);

    auto mass = lambda_mass(*B, 2, irr);
    std::int64_t total = 0;
    for (auto v : mass) total += v;
    CHECK(total == 26);

    auto G = CharacterGroup::make(B);
    auto rep = erdos_sums(*G, 2, irr);
    CHECK(rep.total_mass == 26);
    CHECK(rep.main_term == doctest::Approx(676.0 / 16.0));

    auto rep0 = erdos_sums(*G, 0, irr);
    CHECK(rep0.total_mass == 0);
    CHECK(rep0.main_term == 0.0);
    CHECK(rep0.markov_ok);
    CHECK(rep0.exceptional.size() == B->unit_order());

    CHECK_THROWS_AS(lambda_mass(*B, 9, irr), std::length_error);
}

TEST_CASE("pair sums match the polynomial brute force") {
    for (std::uint32_t p : {3u, 5u}) {
        auto k = make_field(p, 1);
        IrreducibleTable irr(k, 3);
        for (const auto& f : squarefree_monic(k, 2)) {
            auto B = ResidueAlgebra::make(k, f);
            auto G = CharacterGroup::make(B);
            for (unsigned d = 1; d <= 3; ++d) check_sum_report(*G, erdos_sums(*G, d, irr));
        }
    }
    // A degree-3 modulus exercises r = 3 and the q < n guard at q = 2.
    auto k2 = make_field(2, 1);
    IrreducibleTable irr2(k2, 3);
    auto f = from_coeffs(k2, {0, 1, 1, 1});  // X(X^2 + X + 1)
    auto B = ResidueAlgebra::make(k2, f);
    auto G = CharacterGroup::make(B);
    auto rep = erdos_sums(*G, 3, irr2);
    CHECK_FALSE(rep.main_lower_bound_applies);
    check_sum_report(*G, rep);
}

TEST_CASE("squarefree enumeration counts") {
    CHECK(squarefree_monic(make_field(5, 1), 2).size() == 20);
    CHECK(squarefree_monic(make_field(7, 1), 2).size() == 42);
    CHECK(squarefree_monic(make_field(3, 1), 3).size() == 18);
    CHECK(squarefree_monic(make_field(2, 1), 1).size() == 2);
}

TEST_CASE("coverage scans against direct enumeration") {
    auto check_instance = [](const FieldPtr& k, const Poly& f) {
        auto B = ResidueAlgebra::make(k, f);
        const unsigned n = unsigned(B->n());
        IrreducibleTable irr(k, std::max(2 * n - 1, 1u));

        auto at_most = coverage_scan(*B, CoverageVariant::kDegreeAtMost, irr);
        auto sum = coverage_scan(*B, CoverageVariant::kDegreeSum, irr);
        auto exact = coverage_scan(*B, CoverageVariant::kDegreeExact, irr);

        for (auto* rep : {&at_most, &sum, &exact}) {
            CHECK(rep->witnesses_ok);
            std::uint64_t c = 0;
            for (auto b : rep->covered) c += b;
            CHECK(c == rep->covered_count);
            CHECK(rep->is_full == (c == B->unit_order()));

            std::set<std::uint32_t> brute = brute_cover(*B, rep->variant);
            CHECK(brute.size() == rep->covered_count);
            for (std::uint32_t u = 0; u < B->unit_order(); ++u)
                CHECK(bool(rep->covered[u]) == bool(brute.count(u)));
        }

        // deg = n pairs are a subset of both other regimes.
        for (std::uint32_t u = 0; u < B->unit_order(); ++u) {
            if (!exact.covered[u]) continue;
            CHECK(at_most.covered[u]);
            CHECK(sum.covered[u]);
        }
    };

    auto k7 = make_field(7, 1);
    check_instance(k7, from_coeffs(k7, {1, 0, 1}));  // X^2 + 1, irreducible
    check_instance(k7, from_coeffs(k7, {0, 1, 1}));  // split
    auto k3 = make_field(3, 1);
    check_instance(k3, from_coeffs(k3, {0, 1}));     // n = 1 edge
    check_instance(k3, from_coeffs(k3, {1, 2, 0, 1}));

    auto B = ResidueAlgebra::make(k7, from_coeffs(k7, {1, 0, 1}));
    IrreducibleTable shallow(k7, 1);
    CHECK_THROWS_AS(coverage_scan(*B, CoverageVariant::kDegreeAtMost, shallow),
                    std::invalid_argument);
}

TEST_CASE("trace-weighted character sums against naive summation") {
    // sqrt(9) < 2n + 1: hypothesis off, values still cross-checked.
    auto k = make_field(3, 2);
    auto f = from_coeffs(k, {2, 1, 1});
    auto B = ResidueAlgebra::make(k, f);
    auto G = CharacterGroup::make(B);
    LfuncContext ctx(G, 2);
    int sign = measure_trace_sign(ctx, 2);
    auto tt = totram_traces(ctx, 2, sign == 0 ? -1 : sign);
    REQUIRE(tt.chis.size() >= 1);

    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= i; ++j) {
            auto rec = verify_trace_bound(ctx, tt, i, j);
            CHECK_FALSE(rec.hypothesis);
            CHECK(rec.totram == tt.chis.size());

            double naive_max = 0.0;
            for (std::uint32_t a = 0; a < B->unit_order(); ++a) {
                std::complex<double> acc{0.0, 0.0};
                for (size_t pos = 0; pos < tt.chis.size(); ++pos)
                    acc += G->evaluate(tt.chis[pos], B->unit_inv(a)) *
                           tt.tr[pos][unsigned(i)] * tt.tr[pos][unsigned(j)];
                naive_max = std::max(naive_max, std::abs(acc));
            }
            CHECK(rec.max_lhs == doctest::Approx(naive_max).epsilon(1e-9));
        }

    // The i = j = 0 weight is the constant (n-1)^2: no cancellation at a = 1.
    auto zero = verify_trace_bound(ctx, tt, 0, 0);
    CHECK(zero.argmax == 0);
    CHECK(zero.max_lhs == doctest::Approx(double(tt.chis.size())));
    CHECK(zero.rhs == doctest::Approx(2.0 * double(tt.chis.size()) / 3.0));
    CHECK_FALSE(zero.pass);

    CHECK_THROWS_AS(verify_trace_bound(ctx, tt, 3, 0), std::invalid_argument);
}

TEST_CASE("trace bound and remainder bound where the hypothesis holds") {
    auto k = make_field(29, 1);
    auto f = from_coeffs(k, {2, 0, 1});  // X^2 + 2, irreducible over F_29
    REQUIRE(is_irreducible(f));
    auto B = ResidueAlgebra::make(k, f);
    auto G = CharacterGroup::make(B);
    LfuncContext ctx(G, 2);
    int sign = measure_trace_sign(ctx, 2);
    REQUIRE(sign == -1);
    auto tt = totram_traces(ctx, 2, sign);

    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= i; ++j) {
            auto rec = verify_trace_bound(ctx, tt, i, j);
            CHECK(rec.hypothesis);
            if (i + j >= 1) CHECK(rec.pass);
        }
    CHECK_FALSE(verify_trace_bound(ctx, tt, 0, 0).pass);

    IrreducibleTable irr(k, 2);
    auto rep = erdos_sums(*G, 2, irr);
    CHECK(rep.markov_ok);
    CHECK(rep.max_char_err <= 1e-6);
    auto rb = final_r_bound(*B, rep);
    CHECK(rb.hypothesis);
    CHECK(rb.pass);
    CHECK(rb.ratio < 1.0);
    CHECK(rb.max_abs_r > 0.0);
}

TEST_CASE("constants in log space") {
    CHECK(log_c_n(2) ==
          doctest::Approx(7.0 * std::log(4.0) +
                          3.14159265358979323846 * std::sqrt(8.0 / 3.0)));
    CHECK(std::exp(log_c_n(2)) == doctest::Approx(2.77e6).epsilon(0.05));

    auto rep = constants_report(100);
    REQUIRE(rep.rows.size() == 99);
    CHECK(rep.q_bound_ok);
    CHECK(rep.partition_bound_ok);
    CHECK(rep.binomial_identity_ok);
    for (const auto& row : rep.rows) {
        CHECK(row.log_q == doctest::Approx(2.0 * (std::log(2.0) + row.log_c)));
        CHECK(row.q_ok);
    }
    CHECK_THROWS_AS(constants_report(1), std::invalid_argument);
}
