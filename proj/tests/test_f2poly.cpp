#include "doctest.h"

#include <random>

#include "hitpoly/polynomial.hpp"

using namespace hitpoly;

namespace {

Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, std::uint64_t max_deg) {
    std::vector<Monomial> ms;
    std::size_t nterms = rng() % 5;
    for (std::size_t t = 0; t < nterms; ++t) {
        std::vector<Exp> e(nvars);
        std::uint64_t budget = rng() % (max_deg + 1);
        for (auto& x : e) {
            x = static_cast<Exp>(rng() % (budget + 1));
            budget -= x;
        }
        ms.emplace_back(std::move(e));
    }
    return Polynomial(nvars, std::move(ms));
}

} // namespace

TEST_CASE("addition is symmetric difference in characteristic 2") {
    auto x1 = Polynomial::var(2, 0);
    auto x2 = Polynomial::var(2, 1);
    CHECK((x1 + x1).is_zero());
    CHECK((x1 + x2) + x2 == x1);
    CHECK(x1 + Polynomial::zero(2) == x1);
    CHECK_THROWS_AS(x1 + Polynomial::var(3, 0), std::invalid_argument);
}

TEST_CASE("multiplication: Frobenius, identity, degree additivity") {
    auto x1 = Polynomial::var(2, 0);
    auto x2 = Polynomial::var(2, 1);
    auto s = x1 + x2;
    CHECK(s * s == Polynomial::var(2, 0, 2) + Polynomial::var(2, 1, 2));
    CHECK(s * s == s.squared());
    CHECK(Polynomial::one(2) * s == s);
    // x1*x2*(x1+x2) = x1^2 x2 + x1 x2^2
    auto q20 = Polynomial(2, {Monomial({2, 1}), Monomial({1, 2})});
    CHECK(x1 * x2 * s == q20);
    CHECK((x1 * x2 * s).degree() == 3);
}

TEST_CASE("mul distributes over add (random triples)") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng() % 3;
        auto p = random_poly(rng, n, 6);
        auto q = random_poly(rng, n, 6);
        auto r = random_poly(rng, n, 6);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
    }
}

TEST_CASE("graded basis enumeration and counts") {
    GradedBasis b(2, 2);
    REQUIRE(b.size() == 3);
    CHECK(b.monomials()[0] == Monomial({2, 0}));
    CHECK(b.monomials()[1] == Monomial({1, 1}));
    CHECK(b.monomials()[2] == Monomial({0, 2}));

    GradedBasis b1(1, 5);
    REQUIRE(b1.size() == 1);
    CHECK(b1.monomials()[0] == Monomial({5}));

    CHECK(GradedBasis(4, 8).size() == 165);

    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t d = 0; d <= 12; ++d)
            CHECK(GradedBasis(n, d).size() == binomial(d + n - 1, n - 1));
}

TEST_CASE("graded basis is strictly increasing in canonical order") {
    GradedBasis b(3, 5);
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        CHECK(b.monomials()[i] < b.monomials()[i + 1]);
}

TEST_CASE("to_vector / from_vector round trip and linearity") {
    GradedBasis b(2, 2);
    // Q_{2,1} = x1^2 + x1 x2 + x2^2
    Polynomial q21(2, {Monomial({2, 0}), Monomial({1, 1}), Monomial({0, 2})});
    BitVec v = b.to_vector(q21);
    CHECK(v.test(0));
    CHECK(v.test(1));
    CHECK(v.test(2));
    CHECK(b.from_vector(v) == q21);
    CHECK(b.to_vector(Polynomial::zero(2)).is_zero());

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        BitVec w(b.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            if (rng() & 1) w.set(i);
        CHECK(b.to_vector(b.from_vector(w)) == w);
    }

    CHECK_THROWS_AS(b.to_vector(Polynomial::var(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(b.to_vector(Polynomial::var(3, 0, 2)), std::invalid_argument);
}

TEST_CASE("monomial exponent overflow is detected") {
    Monomial big({0xffffffffu});
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(big.pow(3), std::overflow_error);
}
