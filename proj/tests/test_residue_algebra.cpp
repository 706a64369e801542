#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffec/residue_algebra.hpp"

#include <map>
#include <random>

using namespace ffec;

namespace {

Poly mk(const FieldPtr& k, std::initializer_list<fe_t> c) { return poly_from_coeffs(k, c); }

Residue residue_at(const AlgebraPtr& A, std::uint64_t idx) {
    unsigned n = unsigned(A->n());
    std::vector<fe_t> c(n);
    for (unsigned j = 0; j < n; ++j) {
        c[j] = fe_t(idx % A->field()->q());
        idx /= A->field()->q();
    }
    return {poly_from_coeffs(A->field(), c)};
}

std::uint64_t residue_count(const AlgebraPtr& A) {
    std::uint64_t v = 1;
    for (int i = 0; i < A->n(); ++i) v *= A->field()->q();
    return v;
}

void check_algebra(const AlgebraPtr& A) {
    const auto& k = A->field();
    std::uint64_t count = residue_count(A);

    // CRT split/combine are mutually inverse bijections.
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        Residue a = residue_at(A, i);
        auto s = A->crt_split(a);
        CHECK(A->crt_combine(s).rep == a.rep);
        bool u = true;
        for (auto v : s) u = u && (v != 0);
        CHECK(A->is_unit(a) == u);
        if (u) ++units;
    }
    CHECK(units == A->unit_order());

    // Split is a ring homomorphism; norm agrees with the resultant.
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        Residue a = residue_at(A, rng() % count);
        Residue b = residue_at(A, rng() % count);
        auto sa = A->crt_split(a), sb = A->crt_split(b);
        auto sm = A->crt_split(A->mul(a, b));
        auto sp = A->crt_split(A->add(a, b));
        for (size_t i = 0; i < A->r(); ++i) {
            CHECK(sm[i] == A->component_field(i)->mul(sa[i], sb[i]));
            CHECK(sp[i] == A->component_field(i)->add(sa[i], sb[i]));
        }
        CHECK(A->norm(A->mul(a, b)) == k->mul(A->norm(a), A->norm(b)));
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        Residue a = residue_at(A, i);
        CHECK(A->norm(a) == poly_resultant(A->modulus(), a.rep));
    }

    // Units: inverses, dense indexing, tuple arithmetic.
    for (std::uint32_t i = 0; i < A->unit_order(); ++i) {
        Residue u{A->unit_rep(i)};
        auto idx = A->unit_index(u);
        REQUIRE(idx.has_value());
        CHECK(*idx == i);
        Residue v = A->inv(u);
        CHECK(A->mul(u, v).rep == A->one().rep);
        CHECK(A->unit_rep(A->unit_inv(i)) == v.rep);
    }
    for (int iter = 0; iter < 200; ++iter) {
        std::uint32_t i = std::uint32_t(rng() % A->unit_order());
        std::uint32_t j = std::uint32_t(rng() % A->unit_order());
        Residue prod = A->mul({A->unit_rep(i)}, {A->unit_rep(j)});
        CHECK(A->unit_rep(A->unit_mul(i, j)) == prod.rep);
    }
    std::vector<std::uint32_t> t(A->r());
    for (std::uint32_t i = 0; i < A->unit_order(); ++i) {
        A->unit_tuple(i, t.data());
        for (size_t c = 0; c < A->r(); ++c) CHECK(t[c] < A->component_order(c));
        CHECK(A->unit_from_tuple(t.data()) == i);
    }

    // embed_linear and the norm of a linear polynomial.
    fe_t sign = (A->n() % 2 == 0) ? 1 : k->neg(1);
    for (std::uint64_t x = 0; x < k->q(); ++x) {
        fe_t ft = poly_eval(A->modulus(), fe_t(x));
        if (ft == 0) {
            CHECK_THROWS_AS(A->embed_linear(fe_t(x)), std::invalid_argument);
            continue;
        }
        Residue lin = A->embed_linear(fe_t(x));
        CHECK(A->is_unit(lin));
        CHECK(A->norm(lin) == k->mul(sign, ft));
        // Degree-1 relative norm is the linear embedding itself.
        CHECK(A->norm_relative(1, fe_t(x)).rep == lin.rep);
    }

    // Scalars have norm c^n.
    for (std::uint64_t c = 1; c < k->q(); ++c)
        CHECK(A->norm(A->scalar(fe_t(c))) == k->pow(fe_t(c), A->n()));

    CHECK_THROWS_AS(A->inv(A->zero()), std::domain_error);
}

// Histogram of norm_relative(r, t) over t in F_{q^r} with f(t) != 0 matches
// the prime-power mass: each monic prime p of degree d | r with p coprime to
// f contributes mass d at p^{r/d} mod f.
void check_norm_relative_mass(const AlgebraPtr& A, unsigned r) {
    const auto& k = A->field();
    FieldPtr kr = make_field(k->p(), k->e() * r, k->seed());
    Embedding emb(k, kr);
    std::map<Poly, std::int64_t, PolyLess> hist;
    for (std::uint64_t t = 0; t < kr->q(); ++t) {
        fe_t fval = 0;
        for (size_t j = A->modulus().c.size(); j-- > 0;)
            fval = kr->add(kr->mul(fval, fe_t(t)), emb.map(A->modulus().c[j]));
        if (fval == 0) {
            CHECK_THROWS_AS(A->norm_relative(emb, fe_t(t)), std::invalid_argument);
            continue;
        }
        Residue nr = A->norm_relative(emb, fe_t(t));
        CHECK(A->is_unit(nr));
        hist[nr.rep] += 1;
    }
    auto expected = psi_mass(A->modulus(), r);
    CHECK(hist == expected);
}

}  // namespace

TEST_CASE("unit group orders for frozen moduli") {
    auto k2 = make_field(2, 1);
    auto k3 = make_field(3, 1);
    auto k5 = make_field(5, 1);

    CHECK(ResidueAlgebra::make(k3, mk(k3, {1, 0, 1}))->unit_order() == 8);       // inert
    CHECK(ResidueAlgebra::make(k5, mk(k5, {0, 1, 1}))->unit_order() == 16);      // split
    CHECK(ResidueAlgebra::make(k5, mk(k5, {1, 0, 1}))->unit_order() == 16);      // split
    CHECK(ResidueAlgebra::make(k2, mk(k2, {1, 1, 1}))->unit_order() == 3);       // inert
    CHECK(ResidueAlgebra::make(k2, mk(k2, {1, 1, 0, 1}))->unit_order() == 7);    // inert
    CHECK(ResidueAlgebra::make(k3, mk(k3, {0, 1, 0, 1}))->unit_order() == 16);   // 2 * 8

    auto A = ResidueAlgebra::make(k5, mk(k5, {0, 1, 1}));
    CHECK(A->r() == 2);
    CHECK(A->n() == 2);
    CHECK(A->factor(0).degree() == 1);
    CHECK(A->factor(1).degree() == 1);
    CHECK(A->component_order(0) == 4);
    CHECK(A->component_order(1) == 4);
}

TEST_CASE("inverse of X+1 modulo X^2+1 over F_3") {
    auto k3 = make_field(3, 1);
    auto A = ResidueAlgebra::make(k3, mk(k3, {1, 0, 1}));
    Residue a = A->reduce(mk(k3, {1, 1}));
    Residue b = A->inv(a);
    CHECK(b.rep == mk(k3, {2, 1}));
    CHECK(A->mul(a, b).rep == A->one().rep);
}

TEST_CASE("full algebra checks across factorization shapes") {
    auto k2 = make_field(2, 1);
    auto k3 = make_field(3, 1);
    auto k5 = make_field(5, 1);
    auto k4 = make_field(2, 2);

    check_algebra(ResidueAlgebra::make(k3, mk(k3, {1, 0, 1})));           // inert quadratic
    check_algebra(ResidueAlgebra::make(k5, mk(k5, {0, 1, 1})));           // split quadratic
    check_algebra(ResidueAlgebra::make(k3, mk(k3, {0, 1, 0, 1})));        // linear * quadratic
    check_algebra(ResidueAlgebra::make(k5, mk(k5, {0, 2, 3, 1})));        // X(X+1)(X+2)
    check_algebra(ResidueAlgebra::make(k2, mk(k2, {1, 1, 0, 1})));        // inert cubic
    check_algebra(ResidueAlgebra::make(k2, mk(k2, {0, 1, 1, 1})));        // X * (X^2+X+1)
    check_algebra(ResidueAlgebra::make(k4, mk(k4, {2, 1, 1})));           // quadratic over F_4
    check_algebra(ResidueAlgebra::make(k3, mk(k3, {2, 1, 0, 0, 1})));     // quartic over F_3
}

TEST_CASE("relative norm histogram equals prime power mass") {
    auto k3 = make_field(3, 1);
    auto k5 = make_field(5, 1);
    auto A1 = ResidueAlgebra::make(k3, mk(k3, {1, 0, 1}));
    for (unsigned r = 1; r <= 4; ++r) check_norm_relative_mass(A1, r);
    auto A2 = ResidueAlgebra::make(k5, mk(k5, {0, 1, 1}));
    for (unsigned r = 1; r <= 2; ++r) check_norm_relative_mass(A2, r);
    auto A3 = ResidueAlgebra::make(k3, mk(k3, {0, 1, 0, 1}));
    for (unsigned r = 1; r <= 3; ++r) check_norm_relative_mass(A3, r);
}

TEST_CASE("relative norm of a base field point is a power of the linear embedding") {
    auto k3 = make_field(3, 1);
    auto A = ResidueAlgebra::make(k3, mk(k3, {0, 1, 0, 1}));
    for (unsigned r = 1; r <= 3; ++r) {
        FieldPtr kr = make_field(3, r);
        Embedding emb(k3, kr);
        for (fe_t s = 0; s < 3; ++s) {
            if (poly_eval(A->modulus(), s) == 0) continue;
            Residue got = A->norm_relative(emb, emb.map(s));
            Residue want = A->pow(A->embed_linear(s), r);
            CHECK(got.rep == want.rep);
        }
    }
}

TEST_CASE("construction rejects bad moduli") {
    auto k3 = make_field(3, 1);
    CHECK_THROWS_AS(ResidueAlgebra::make(k3, mk(k3, {0, 0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(ResidueAlgebra::make(k3, mk(k3, {1, 2, 1})), std::invalid_argument);
    CHECK_THROWS_AS(ResidueAlgebra::make(k3, poly_zero(k3)), std::invalid_argument);
    CHECK_THROWS_AS(ResidueAlgebra::make(k3, poly_one(k3)), std::invalid_argument);
    CHECK_THROWS_AS(ResidueAlgebra::make(k3, mk(k3, {1, 0, 1}), 8), std::length_error);

    // Non-monic squarefree input is normalized, not rejected.
    auto A = ResidueAlgebra::make(k3, mk(k3, {2, 0, 2}));
    CHECK(A->modulus() == mk(k3, {1, 0, 1}));
}
