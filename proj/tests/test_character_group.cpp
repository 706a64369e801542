#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffec/character_group.hpp"

#include <cmath>
#include <random>

using namespace ffec;

namespace {

Poly mk(const FieldPtr& k, std::initializer_list<fe_t> c) { return poly_from_coeffs(k, c); }

CharGroupPtr group_for(std::uint32_t p, std::uint32_t e, std::initializer_list<fe_t> f) {
    auto k = make_field(p, e);
    return CharacterGroup::make(ResidueAlgebra::make(k, mk(k, f)));
}

double cabs(std::complex<double> z) { return std::abs(z); }

void check_group_basics(const CharGroupPtr& G) {
    const auto& A = *G->algebra();
    std::uint64_t n = G->size();
    REQUIRE(n == A.unit_order());
    REQUIRE(*A.unit_index(A.one()) == 0);

    // Principal row, unit modulus, multiplicativity.
    std::mt19937_64 rng(99);
    for (std::uint64_t u = 0; u < n; ++u) {
        CHECK(cabs(G->evaluate(0, std::uint32_t(u)) - 1.0) < 1e-12);
        CHECK(std::abs(cabs(G->evaluate(std::uint32_t(rng() % n), std::uint32_t(u))) - 1.0) <
              1e-12);
    }
    for (int iter = 0; iter < 100; ++iter) {
        std::uint32_t chi = std::uint32_t(rng() % n);
        std::uint32_t x = std::uint32_t(rng() % n), y = std::uint32_t(rng() % n);
        auto lhs = G->evaluate(chi, A.unit_mul(x, y));
        auto rhs = G->evaluate(chi, x) * G->evaluate(chi, y);
        CHECK(cabs(lhs - rhs) < 1e-12);
    }

    // Full Gram matrix: character rows are orthogonal with norm |B^x|.
    for (std::uint64_t c1 = 0; c1 < n; ++c1)
        for (std::uint64_t c2 = 0; c2 < n; ++c2) {
            std::complex<double> s{0.0, 0.0};
            for (std::uint64_t u = 0; u < n; ++u)
                s += G->evaluate(std::uint32_t(c1), std::uint32_t(u)) *
                     std::conj(G->evaluate(std::uint32_t(c2), std::uint32_t(u)));
            double want = (c1 == c2) ? double(n) : 0.0;
            CHECK(cabs(s - want) <= 1e-9 * double(n));
        }

    // evaluate_at: 0 off units, consistent with scalars on units.
    CHECK(cabs(G->evaluate_at(std::uint32_t(1 % n), A.zero())) == 0.0);
    for (std::uint64_t c = 1; c < A.field()->q(); ++c) {
        Residue sc = A.scalar(fe_t(c));
        auto idx = A.unit_index(sc);
        REQUIRE(idx.has_value());
        for (std::uint64_t chi = 0; chi < n; ++chi)
            CHECK(cabs(G->evaluate_scalar(std::uint32_t(chi), fe_t(c)) -
                       G->evaluate(std::uint32_t(chi), *idx)) < 1e-12);
    }

    // Classification invariants and the scalar-trivial count.
    auto counts = G->count_classes();
    CHECK(counts.all == n);
    CHECK(counts.principal == 1);
    CHECK(counts.trg_determined);
    std::uint64_t even = 0;
    for (std::uint64_t chi = 0; chi < n; ++chi) {
        auto cl = G->classify(std::uint32_t(chi));
        CHECK(cl.totally_ramified == (cl.primitive && cl.odd));
        if (cl.totally_ramified_generic) CHECK(cl.totally_ramified);
        if (cl.principal) {
            CHECK(!cl.odd);
            CHECK(!cl.primitive);
        }
        if (!cl.odd) ++even;
    }
    CHECK(even == n / (A.field()->q() - 1));
}

void check_fourier(const CharGroupPtr& G) {
    std::uint64_t n = G->size();

    // Delta mass at the identity unit transforms to the all-ones vector.
    std::vector<std::complex<double>> delta(n, {0.0, 0.0});
    delta[0] = {1.0, 0.0};
    auto dn = fourier_naive(*G, delta);
    auto df = fourier_forward(*G, delta);
    for (std::uint64_t i = 0; i < n; ++i) {
        CHECK(cabs(dn[i] - 1.0) < 1e-12);
        CHECK(cabs(df[i] - 1.0) < 1e-12);
    }

    std::mt19937_64 rng(7);
    std::vector<std::complex<double>> mass(n);
    double scale = 0.0;
    for (auto& v : mass) {
        v = {double(rng() % 2001) / 1000.0 - 1.0, double(rng() % 2001) / 1000.0 - 1.0};
        scale = std::max(scale, cabs(v));
    }
    auto fn = fourier_naive(*G, mass);
    auto ff = fourier_forward(*G, mass);
    for (std::uint64_t i = 0; i < n; ++i) CHECK(cabs(fn[i] - ff[i]) <= 1e-9 * double(n) * scale);

    auto back = fourier_inverse(*G, ff);
    for (std::uint64_t i = 0; i < n; ++i) CHECK(cabs(back[i] - mass[i]) <= 1e-9 * scale);

    auto dual = dual_transform(*G, ff);
    for (std::uint64_t i = 0; i < n; ++i)
        CHECK(cabs(dual[i] - double(n) * back[i]) <= 1e-9 * double(n) * scale);

    double lhs = 0.0, rhs = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        lhs += std::norm(ff[i]);
        rhs += std::norm(mass[i]);
    }
    rhs *= double(n);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, rhs));
}

void check_twist(const CharGroupPtr& G) {
    const auto& A = *G->algebra();
    const auto& k = A.field();
    std::uint64_t n = G->size();
    std::uint64_t qm1 = k->q() - 1;

    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        std::uint32_t chi = std::uint32_t(rng() % n);
        std::uint64_t rho = rng() % qm1;
        std::uint32_t u = std::uint32_t(rng() % n);
        std::uint32_t tw = G->twist_by_norm(chi, rho);
        fe_t nv = A.norm({A.unit_rep(u)});
        REQUIRE(nv != 0);
        double ang = 0.0;
        if (qm1 > 1)
            ang = 2.0 * 3.14159265358979323846 * double(rho * k->dlog(nv) % qm1) / double(qm1);
        auto want = G->evaluate(chi, u) * std::complex<double>(std::cos(ang), std::sin(ang));
        CHECK(cabs(G->evaluate(tw, u) - want) < 1e-12);
    }

    // rho = 0 fixes every character; twisting by 1 generates free orbits.
    for (std::uint64_t chi = 0; chi < n; ++chi) {
        CHECK(G->twist_by_norm(std::uint32_t(chi), 0) == chi);
        std::uint32_t cur = std::uint32_t(chi);
        for (std::uint64_t step = 1; step < qm1; ++step) {
            cur = G->twist_by_norm(cur, 1);
            CHECK(cur != chi);
        }
        cur = G->twist_by_norm(cur, 1);
        CHECK(cur == chi);
    }
}

}  // namespace

TEST_CASE("frozen classification counts") {
    auto G1 = group_for(5, 1, {0, 1, 1});  // X(X+1) over F_5
    auto c1 = G1->count_classes();
    CHECK(c1.all == 16);
    CHECK(c1.primitive == 9);
    CHECK(c1.odd == 12);
    CHECK(c1.totally_ramified == 6);
    CHECK(c1.totally_ramified_generic == 4);

    auto G2 = group_for(3, 1, {1, 0, 1});  // X^2+1 over F_3, inert
    auto c2 = G2->count_classes();
    CHECK(c2.all == 8);
    CHECK(c2.primitive == 7);
    CHECK(c2.odd == 4);
    CHECK(c2.totally_ramified == 4);
    CHECK(c2.totally_ramified_generic == 4);

    auto G3 = group_for(5, 1, {0, 2, 3, 1});  // X(X+1)(X+2) over F_5
    auto c3 = G3->count_classes();
    CHECK(c3.all == 64);
    CHECK(c3.primitive == 27);
    CHECK(c3.odd == 48);
    CHECK(c3.totally_ramified == 21);
    CHECK(c3.totally_ramified_generic == 6);

    auto G4 = group_for(5, 1, {2, 0, 1});  // X^2+2 over F_5, inert
    auto c4 = G4->count_classes();
    CHECK(c4.all == 24);
    CHECK(c4.primitive == 23);
    CHECK(c4.odd == 18);
    CHECK(c4.totally_ramified == 18);
    CHECK(c4.totally_ramified_generic == 16);

    auto G5 = group_for(2, 1, {1, 1, 1});  // X^2+X+1 over F_2: no odd characters
    auto c5 = G5->count_classes();
    CHECK(c5.all == 3);
    CHECK(c5.odd == 0);
    CHECK(c5.totally_ramified == 0);
    CHECK(c5.totally_ramified_generic == 0);
}

TEST_CASE("split characters with equal nonzero exponents fail distinctness") {
    auto G = group_for(5, 1, {0, 1, 1});
    std::uint32_t e[2] = {1, 1};
    auto cl = G->classify(G->from_exponents(e));
    CHECK(cl.totally_ramified);
    CHECK(cl.trg_determined);
    CHECK(!cl.totally_ramified_generic);
}

TEST_CASE("counting inequalities on the frozen examples") {
    struct Item {
        CharGroupPtr G;
        bool split;
    };
    std::vector<Item> items = {{group_for(5, 1, {0, 1, 1}), true},
                               {group_for(5, 1, {0, 2, 3, 1}), true},
                               {group_for(3, 1, {1, 0, 1}), false},
                               {group_for(5, 1, {2, 0, 1}), false}};
    for (const auto& it : items) {
        const auto& A = *it.G->algebra();
        std::int64_t q = std::int64_t(A.field()->q());
        int n = A.n();
        if (q < n + 1) continue;
        auto c = it.G->count_classes();
        std::int64_t qn = 1, q2n = 1, geo = 0, qi = 1;
        for (int i = 0; i < n; ++i) {
            qn *= q;
            q2n *= q - 2;
            geo += qi;
            qi *= q;
        }
        std::int64_t bound = qn - 1 - q2n + geo;
        CHECK(std::int64_t(c.all - c.totally_ramified) <= bound);
        std::int64_t qnm1 = 1;
        for (int i = 0; i < n - 1; ++i) qnm1 *= q;
        CHECK(bound <= 2 * (n + 1) * qnm1);
        if (it.split) {
            std::int64_t qm1n = 1, trg_geo = 0;
            qi = 1;
            for (int i = 0; i < n; ++i) {
                qm1n *= q - 1 - n;
                trg_geo += qi;
                qi *= q;
            }
            std::int64_t ptrg = qm1n + q2n - qn + 1 - n * trg_geo;
            CHECK(std::int64_t(c.totally_ramified_generic) >= ptrg);
        }
    }
}

TEST_CASE("group basics, orthogonality and classification invariants") {
    check_group_basics(group_for(3, 1, {1, 0, 1}));
    check_group_basics(group_for(5, 1, {0, 1, 1}));
    check_group_basics(group_for(3, 1, {0, 1, 0, 1}));
    check_group_basics(group_for(2, 1, {1, 1, 0, 1}));
    check_group_basics(group_for(5, 1, {2, 0, 1}));
    check_group_basics(group_for(2, 2, {2, 1, 1}));
}

TEST_CASE("fourier transforms") {
    check_fourier(group_for(3, 1, {1, 0, 1}));
    check_fourier(group_for(5, 1, {0, 1, 1}));
    check_fourier(group_for(3, 1, {0, 1, 0, 1}));
    check_fourier(group_for(5, 1, {2, 0, 1}));
    check_fourier(group_for(5, 1, {0, 2, 3, 1}));
}

TEST_CASE("norm twisting") {
    check_twist(group_for(3, 1, {1, 0, 1}));
    check_twist(group_for(5, 1, {0, 1, 1}));
    check_twist(group_for(5, 1, {2, 0, 1}));
    check_twist(group_for(3, 1, {0, 1, 0, 1}));
}

TEST_CASE("norm twist of the principal character at scalars") {
    auto G = group_for(5, 1, {0, 1, 1});
    const auto& A = *G->algebra();
    const auto& k = A.field();
    for (std::uint64_t rho = 0; rho < 4; ++rho) {
        auto tw = G->twist_by_norm(0, rho);
        for (fe_t c = 1; c < 5; ++c) {
            double ang = 2.0 * 3.14159265358979323846 *
                         double(rho * (2 * k->dlog(c)) % 4) / 4.0;
            std::complex<double> want{std::cos(ang), std::sin(ang)};
            CHECK(cabs(G->evaluate_scalar(tw, c) - want) < 1e-12);
        }
    }
}
