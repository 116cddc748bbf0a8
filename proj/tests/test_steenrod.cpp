#include "doctest.h"

#include <random>

#include "hitpoly/dickson.hpp"
#include "hitpoly/steenrod.hpp"

using namespace hitpoly;

namespace {

Polynomial random_homog(std::mt19937_64& rng, std::size_t nvars, std::uint64_t deg) {
    GradedBasis b(nvars, deg);
    std::vector<Monomial> ms;
    for (const auto& m : b.monomials())
        if (rng() & 1) ms.push_back(m);
    return Polynomial(nvars, std::move(ms));
}

} // namespace

TEST_CASE("sq on one variable follows the Lucas closed form") {
    for (std::uint64_t d = 0; d <= 64; ++d) {
        Polynomial xd = d == 0 ? Polynomial::one(1) : Polynomial::var(1, 0, static_cast<Exp>(d));
        for (std::uint64_t k = 0; k <= 64; ++k) {
            Polynomial expect = binom_odd(d, k)
                                    ? Polynomial::var(1, 0, static_cast<Exp>(d + k))
                                    : Polynomial::zero(1);
            if (d == 0 && k == 0) expect = Polynomial::one(1);
            if (d == 0 && k > 0) expect = Polynomial::zero(1);
            CHECK(sq(k, xd) == expect);
        }
    }
}

TEST_CASE("sq basic examples") {
    auto x1 = Polynomial::var(2, 0);
    auto x2 = Polynomial::var(2, 1);
    CHECK(sq(1, x1) == x1 * x1);
    CHECK(sq(1, x1 * x2) == x1 * x1 * x2 + x1 * x2 * x2);
    // Sq^1 Q_{2,1} = Q_{2,0}, Sq^2 Q_{2,1} = Q_{2,1}^2
    auto q21 = dickson_q(2, 1);
    CHECK(sq(1, q21) == dickson_q(2, 0));
    CHECK(sq(2, q21) == q21.squared());
    CHECK(sq(0, q21) == q21);
}

TEST_CASE("instability and top square") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 1 + rng() % 3;
        std::uint64_t d = 1 + rng() % 6;
        auto p = random_homog(rng, n, d);
        CHECK(sq(d, p) == p.squared());
        for (std::uint64_t i = d + 1; i <= d + 3; ++i)
            CHECK(sq(i, p).is_zero());
    }
}

TEST_CASE("Cartan formula and Sq^1 derivation on random pairs") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 1 + rng() % 3;
        auto p = random_homog(rng, n, 1 + rng() % 6);
        auto q = random_homog(rng, n, 1 + rng() % 6);
        for (std::uint64_t k = 0; k <= 8; ++k) {
            Polynomial rhs = Polynomial::zero(n);
            for (std::uint64_t i = 0; i <= k; ++i) rhs = rhs + sq(i, p) * sq(k - i, q);
            CHECK(sq(k, p * q) == rhs);
        }
        CHECK(sq(1, p * q) == sq(1, p) * q + p * sq(1, q));
    }
}

TEST_CASE("sq is linear and splits mixed degrees") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng() % 3;
        auto p = random_homog(rng, n, 1 + rng() % 6);
        auto q = random_homog(rng, n, 1 + rng() % 6); // possibly different degree
        for (std::uint64_t i = 0; i <= 6; ++i)
            CHECK(sq(i, p + q) == sq(i, p) + sq(i, q));
    }
}

TEST_CASE("chi_sq small cases") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = 1 + rng() % 3;
        auto p = random_homog(rng, n, 1 + rng() % 5);
        CHECK(chi_sq(0, p) == p);
        CHECK(chi_sq(1, p) == sq(1, p));
        CHECK(chi_sq(2, p) == sq(2, p));
        CHECK(chi_sq(3, p) == sq(2, sq(1, p)));
    }
    auto x1sq = Polynomial::var(1, 0, 2);
    CHECK(chi_sq(3, x1sq) == sq(2, sq(1, x1sq)));
    CHECK(chi_sq(3, x1sq).is_zero());
}

TEST_CASE("antipode relation: sum Sq^i chi(Sq^j) = 0") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 1 + rng() % 3;
        auto p = random_homog(rng, n, 1 + rng() % 6);
        for (std::uint64_t k = 1; k <= 8; ++k) {
            Polynomial acc = Polynomial::zero(n);
            for (std::uint64_t i = 0; i <= k; ++i) acc = acc + sq(i, chi_sq(k - i, p));
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("operator words") {
    auto v4 = v_poly(4);
    CHECK(apply_word(OperatorWord{}, v4) == v4);
    CHECK(apply_word(OperatorWord{{{FactorKind::Sq, 8}}}, v4) == v4.squared());
    // V_4^4 = Sq^16 Sq^8 V_4 (iterated top squares)
    OperatorWord w{{{FactorKind::Sq, 16}, {FactorKind::Sq, 8}}};
    CHECK(apply_word(w, v4) == v4.pow(4));
    CHECK(w.degree_shift() == 24);
    // (Sq 0) and (ChiSq 0) act as the identity
    OperatorWord id{{{FactorKind::Sq, 0}, {FactorKind::ChiSq, 0}}};
    CHECK(apply_word(id, v4) == v4);
}

TEST_CASE("chi_trick_residue unit cases") {
    auto x1 = Polynomial::var(1, 0);
    CHECK(chi_trick_residue(x1, 1, x1).is_zero());
    // u = 1: residue = Sq^k(v) for k >= 1
    auto v = Polynomial::var(2, 0) * Polynomial::var(2, 1);
    CHECK(chi_trick_residue(Polynomial::one(2), 1, v) == sq(1, v));
    // (u=x1, k=1, v=x2) in 2 vars -> x1 x2^2 + x1^2 x2 = Sq^1(x1 x2)
    auto u = Polynomial::var(2, 0);
    auto x2 = Polynomial::var(2, 1);
    CHECK(chi_trick_residue(u, 1, x2) == sq(1, u * x2));
    CHECK_THROWS_AS(chi_trick_residue(x1, 1, x2), std::invalid_argument);
}
