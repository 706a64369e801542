#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffec/symfunc.hpp"

#include <cmath>
#include <random>

using namespace ffec;

namespace {

double cabs(std::complex<double> z) { return std::abs(z); }

std::vector<std::complex<double>> random_unit_circle(std::mt19937_64& rng, int count) {
    std::vector<std::complex<double>> z(count);
    for (auto& v : z) {
        double ang = double(rng() % 1000000) / 1000000.0 * 6.283185307179586;
        v = {std::cos(ang), std::sin(ang)};
    }
    return z;
}

}  // namespace

TEST_CASE("partition enumeration and counting") {
    auto p4 = partitions(4);
    REQUIRE(p4.size() == 5);
    CHECK(p4[0] == Partition{4});
    CHECK(p4[1] == Partition{3, 1});
    CHECK(p4[2] == Partition{2, 2});
    CHECK(p4[3] == Partition{2, 1, 1});
    CHECK(p4[4] == Partition{1, 1, 1, 1});

    CHECK(partitions(0).size() == 1);
    CHECK(partitions(0)[0].empty());
    CHECK(partition_count(0) == 1);
    CHECK(partition_count(4) == 5);
    CHECK(partition_count(100) == 190569292);
    CHECK(partition_count(200) == 3972999029388LL);

    for (int K = 0; K <= 30; ++K)
        CHECK(std::int64_t(partitions(K).size()) == partition_count(K));

    // Classical upper bound with exact counts.
    for (int m = 1; m <= 200; ++m) {
        double bound = std::exp(3.14159265358979323846 * std::sqrt(2.0 * m / 3.0));
        CHECK(double(partition_count(m)) <= bound);
    }
}

TEST_CASE("Murnaghan-Nakayama values and orthogonality") {
    CHECK(mn_character({1, 1}, {2}) == -1);
    CHECK(mn_character({2}, {1, 1}) == 1);
    CHECK(mn_character({2, 1}, {1, 1, 1}) == 2);
    CHECK(mn_character({}, {}) == 1);

    // Full S_3 table.
    CHECK(mn_character({3}, {1, 1, 1}) == 1);
    CHECK(mn_character({3}, {2, 1}) == 1);
    CHECK(mn_character({3}, {3}) == 1);
    CHECK(mn_character({2, 1}, {2, 1}) == 0);
    CHECK(mn_character({2, 1}, {3}) == -1);
    CHECK(mn_character({1, 1, 1}, {1, 1, 1}) == 1);
    CHECK(mn_character({1, 1, 1}, {2, 1}) == -1);
    CHECK(mn_character({1, 1, 1}, {3}) == 1);

    CHECK_THROWS_AS(mn_character({2, 1}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(mn_character({1, 2}, {2, 1}), std::invalid_argument);

    for (int K = 1; K <= 8; ++K) {
        auto parts = partitions(K);
        std::int64_t kfact = 1;
        for (int i = 2; i <= K; ++i) kfact *= i;

        // Class sizes partition K!.
        std::int64_t total = 0;
        for (const auto& mu : parts) total += class_size(mu);
        CHECK(total == kfact);

        // Row orthogonality: sum_mu |C_mu| chi_l(mu) chi_l'(mu) = K! [l = l'].
        for (size_t a = 0; a < parts.size(); ++a)
            for (size_t b = a; b < parts.size(); ++b) {
                std::int64_t s = 0;
                for (const auto& mu : parts)
                    s += class_size(mu) * mn_character(parts[a], mu) * mn_character(parts[b], mu);
                CHECK(s == (a == b ? kfact : 0));
            }

        // Column orthogonality: sum_l chi_l(mu) chi_l(nu) = (K!/|C_mu|) [mu = nu].
        for (size_t a = 0; a < parts.size(); ++a)
            for (size_t b = a; b < parts.size(); ++b) {
                std::int64_t s = 0;
                for (const auto& lam : parts)
                    s += mn_character(lam, parts[a]) * mn_character(lam, parts[b]);
                CHECK(s == (a == b ? kfact / class_size(parts[a]) : 0));
            }
    }
}

TEST_CASE("two-row dimensions three ways") {
    CHECK(dim_two_row(1, 1) == 1);
    CHECK(dim_two_row(2, 1) == 2);
    CHECK(dim_two_row(2, 0) == 1);
    CHECK_THROWS_AS(dim_two_row(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(dim_two_row(0, 0), std::invalid_argument);

    for (int i = 1; i <= 12; ++i)
        for (int j = 0; j <= i && i + j <= 12; ++j) {
            std::int64_t d = dim_two_row(i, j);
            Partition lam = (j == 0) ? Partition{i} : Partition{i, j};
            Partition ones(size_t(i + j), 1);
            CHECK(d == mn_character(lam, ones));
            CHECK(d == hook_length_dim(lam));
        }

    // (i+j+1) chi_{i,j}(1) = binom(i+j+1, j) (i+1-j), and the 2^{i+j+1} 2n bound.
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= i; ++j) {
            if (i + j < 1) continue;
            std::int64_t lhs = std::int64_t(i + j + 1) * dim_two_row(i, j);
            std::int64_t binom = 1;
            for (int t = 1; t <= j; ++t) binom = binom * (i + j + 1 - j + t) / t;
            CHECK(lhs == binom * (i + 1 - j));
            int n = std::max(i, std::max(j, 1));
            long double cap = std::pow(2.0L, (long double)(i + j + 1)) * 2.0L * n;
            CHECK((long double)(lhs) <= cap);
        }
}

TEST_CASE("power sums, Schur values and the Frobenius expansion") {
    std::mt19937_64 rng(424242);
    auto z0 = random_unit_circle(rng, 4);
    CHECK(cabs(schur_eval({}, z0) - 1.0) < 1e-12);
    CHECK(cabs(schur_eval({1}, z0) - power_sum_eval({1}, z0)) < 1e-12);

    // s_(2) = (p_1^2 + p_2)/2 and s_(1,1) = (p_1^2 - p_2)/2.
    auto p1 = power_sum_eval({1}, z0), p2 = power_sum_eval({2}, z0);
    CHECK(cabs(schur_eval({2}, z0) - (p1 * p1 + p2) / 2.0) < 1e-10);
    CHECK(cabs(schur_eval({1, 1}, z0) - (p1 * p1 - p2) / 2.0) < 1e-10);

    // p_mu = sum_lambda chi_lambda(mu) s_lambda on random unit-circle points.
    for (int K = 1; K <= 6; ++K) {
        auto parts = partitions(K);
        for (int seed = 0; seed < 100; ++seed) {
            std::mt19937_64 r2(1000 * K + seed);
            auto z = random_unit_circle(r2, 1 + int(r2() % 6));
            for (const auto& mu : parts) {
                std::complex<double> rhs{0.0, 0.0};
                for (const auto& lam : parts)
                    rhs += double(mn_character(lam, mu)) * schur_eval(lam, z);
                auto lhs = power_sum_eval(mu, z);
                CHECK(cabs(lhs - rhs) <= 1e-8 * std::max(1.0, cabs(lhs)));
            }
        }
    }
}

TEST_CASE("class sizes") {
    CHECK(class_size({1, 1, 1}) == 1);
    CHECK(class_size({2, 1}) == 3);
    CHECK(class_size({3}) == 2);
    CHECK(class_size({2, 2}) == 3);
    CHECK(class_size({4}) == 6);
}
