#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "hitpoly/dickson.hpp"
#include "hitpoly/hitsolver.hpp"

using namespace hitpoly;

namespace {

/// Exhaustive oracle: the full hit subspace at (n,d) as a set of bit
/// vectors, built by closing {0} under every generator image. Independent
/// of the elimination path the solver takes.
std::set<std::vector<bool>> span_oracle(std::size_t n, std::uint64_t d) {
    GradedBasis cols(n, d);
    std::set<std::vector<bool>> span;
    span.insert(std::vector<bool>(cols.size(), false));
    for (std::uint64_t i = 1; i <= d / 2; ++i) {
        GradedBasis lower(n, d - i);
        for (const auto& m : lower.monomials()) {
            auto img = sq(i, Polynomial::monomial(m));
            if (img.is_zero()) continue;
            std::vector<bool> g(cols.size(), false);
            for (const auto& t : img.support()) g[cols.index_of(t)] = g[cols.index_of(t)] ^ 1;
            std::set<std::vector<bool>> next = span;
            for (auto v : span) {
                for (std::size_t c = 0; c < v.size(); ++c) v[c] = v[c] ^ g[c];
                next.insert(std::move(v));
            }
            span = std::move(next);
        }
    }
    return span;
}

} // namespace

TEST_CASE("hit_space_basis small ranks") {
    HitSolver solver;
    CHECK(solver.hit_space_basis(1, 2).rank() == 1);
    CHECK(solver.hit_space_basis(1, 3).rank() == 0);
    CHECK(solver.hit_space_basis(2, 2).rank() == 2);
    // degree-2 hit space in 2 vars is spanned by x1^2, x2^2
    auto& b = solver.hit_space_basis(2, 2);
    CHECK(b.query(Polynomial::var(2, 0, 2)).hit);
    CHECK(b.query(Polynomial::var(2, 1, 2)).hit);
    CHECK_FALSE(b.query(Polynomial(2, {Monomial({1, 1})})).hit);
}

TEST_CASE("is_hit basic answers with verified certificates") {
    HitSolver solver;
    auto r = solver.is_hit(Polynomial::var(1, 0, 2));
    REQUIRE(r.hit);
    REQUIRE(r.certificate.terms.size() == 1);
    CHECK(r.certificate.terms[0].i == 1);
    CHECK(r.certificate.terms[0].u == Polynomial::var(1, 0));
    CHECK(HitSolver::verify_certificate(Polynomial::var(1, 0, 2), r.certificate));

    CHECK_FALSE(solver.is_hit(dickson_q(1, 0)).hit);
    CHECK_FALSE(solver.is_hit(dickson_q(2, 1)).hit);
    CHECK(solver.is_hit(Polynomial::zero(2)).hit);

    // Q_{2,0} = Sq^1(Q_{2,1}); the solver's own deterministic witness is
    // the single generator Sq^1(x1*x2), which gives the same polynomial.
    CHECK(sq(1, dickson_q(2, 1)) == dickson_q(2, 0));
    auto r20 = solver.is_hit(dickson_q(2, 0));
    REQUIRE(r20.hit);
    REQUIRE(r20.certificate.terms.size() == 1);
    CHECK(r20.certificate.terms[0].i == 1);
    CHECK(r20.certificate.terms[0].u == Polynomial(2, {Monomial({1, 1})}));
    CHECK(HitSolver::verify_certificate(dickson_q(2, 0), r20.certificate));

    auto r32 = solver.is_hit(dickson_q(3, 2));
    REQUIRE(r32.hit);
    CHECK(HitSolver::verify_certificate(dickson_q(3, 2), r32.certificate));

    auto r43 = solver.is_hit(dickson_q(4, 3));
    REQUIRE(r43.hit);
    CHECK(HitSolver::verify_certificate(dickson_q(4, 3), r43.certificate));
}

TEST_CASE("verify_certificate rejects wrong certificates") {
    HitCertificate good{{{1, Polynomial::var(1, 0)}}};
    CHECK(HitSolver::verify_certificate(Polynomial::var(1, 0, 2), good));
    HitCertificate bad{{{1, Polynomial::var(2, 1)}}};
    CHECK_FALSE(HitSolver::verify_certificate(Polynomial::var(2, 0, 2), bad));
    HitCertificate zero_i{{{0, Polynomial::var(1, 0, 2)}}};
    CHECK_FALSE(HitSolver::verify_certificate(Polynomial::var(1, 0, 2), zero_i));
}

TEST_CASE("one-variable spike law, d <= 64") {
    HitSolver solver;
    for (std::uint64_t d = 1; d <= 64; ++d) {
        // independent oracle: x^d is hit iff C(d-i, i) is odd for some i <= d/2
        bool oracle_hit = false;
        for (std::uint64_t i = 1; 2 * i <= d; ++i)
            if (binom_odd(d - i, i)) oracle_hit = true;
        bool spike = (d & (d + 1)) == 0; // d = 2^t - 1
        CHECK(oracle_hit == !spike);
        auto r = solver.is_hit(Polynomial::var(1, 0, static_cast<Exp>(d)));
        CHECK(r.hit == oracle_hit);
        if (r.hit)
            CHECK(HitSolver::verify_certificate(
                Polynomial::var(1, 0, static_cast<Exp>(d)), r.certificate));
        else
            CHECK_FALSE(r.witness->residual.is_zero());
    }
}

TEST_CASE("exhaustive-oracle agreement for n <= 2, d <= 10") {
    HitSolver solver;
    for (std::size_t n = 1; n <= 2; ++n)
        for (std::uint64_t d = 1; d <= 10; ++d) {
            auto span = span_oracle(n, d);
            GradedBasis cols(n, d);
            CHECK(span.size() == (std::size_t(1) << solver.hit_space_basis(n, d).rank()));
            // every vector of the component, tested both ways
            const std::size_t ncols = cols.size();
            REQUIRE(ncols <= 16);
            for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << ncols); ++bits) {
                std::vector<bool> v(ncols);
                BitVec bv(ncols);
                for (std::size_t c = 0; c < ncols; ++c)
                    if ((bits >> c) & 1) { v[c] = true; bv.set(c); }
                auto f = cols.from_vector(bv);
                auto r = solver.is_hit(f);
                CHECK(r.hit == (span.count(v) > 0));
                if (r.hit) CHECK(HitSolver::verify_certificate(f, r.certificate));
            }
        }
}

TEST_CASE("witness residual is fully reduced") {
    HitSolver solver;
    auto r = solver.is_hit(dickson_q(2, 1));
    REQUIRE_FALSE(r.hit);
    const auto& b = solver.hit_space_basis(2, 2);
    BitVec v = r.witness->residual;
    b.reduce_full(v);
    CHECK(v == r.witness->residual);
}

TEST_CASE("monotone consistency: sums of hit polynomials are hit") {
    HitSolver solver;
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng() % 2;
        std::uint64_t d = 2 + rng() % 7;
        GradedBasis cols(n, d);
        auto& basis = solver.hit_space_basis(n, d);
        if (basis.rank() == 0) continue;
        auto pick_hit = [&]() {
            BitVec acc(cols.size());
            for (const auto& row : basis.rows())
                if (rng() & 1) acc ^= row.bits;
            return cols.from_vector(acc);
        };
        auto f = pick_hit(), g = pick_hit();
        CHECK(solver.is_hit(f).hit);
        CHECK(solver.is_hit(g).hit);
        CHECK(solver.is_hit(f + g).hit);
    }
}

TEST_CASE("determinism across solver instances") {
    HitSolver s1, s2;
    auto f = dickson_q(3, 2);
    auto r1 = s1.is_hit(f);
    auto r2 = s2.is_hit(f);
    REQUIRE(r1.hit);
    REQUIRE(r2.hit);
    REQUIRE(r1.certificate.terms.size() == r2.certificate.terms.size());
    for (std::size_t k = 0; k < r1.certificate.terms.size(); ++k) {
        CHECK(r1.certificate.terms[k].i == r2.certificate.terms[k].i);
        CHECK(r1.certificate.terms[k].u == r2.certificate.terms[k].u);
    }
}

TEST_CASE("restricted generator set (max_sq)") {
    HitSolver solver;
    // x1 x2^4 = Sq^2(x1 x2^2) but Sq^1(x1 x2^4) != 0, so it is not in the
    // Sq^1-image (im Sq^1 lies in ker Sq^1)
    auto f = Polynomial(2, {Monomial({1, 4})});
    CHECK(f == sq(2, Polynomial(2, {Monomial({1, 2})})));
    CHECK_FALSE(sq(1, f).is_zero());
    CHECK(solver.is_hit(f, 2).hit);
    CHECK_FALSE(solver.is_hit(f, 1).hit);
    auto r = solver.is_hit(f, 2);
    for (const auto& t : r.certificate.terms) CHECK(t.i <= 2);
    CHECK(HitSolver::verify_certificate(f, r.certificate));
}

TEST_CASE("non-homogeneous inputs split into parts") {
    HitSolver solver;
    auto hit_both = Polynomial::var(1, 0, 2) + Polynomial::var(1, 0, 4);
    auto r = solver.is_hit(hit_both);
    REQUIRE(r.hit);
    CHECK(HitSolver::verify_certificate(hit_both, r.certificate));
    auto mixed = Polynomial::var(1, 0, 2) + Polynomial::var(1, 0, 3); // x^3 is a spike
    CHECK_FALSE(solver.is_hit(mixed).hit);
    CHECK_FALSE(solver.is_hit(Polynomial::one(1)).hit);
}

TEST_CASE("resource ceilings are hard errors") {
    SolverLimits tight;
    tight.max_degree = 4;
    HitSolver solver(tight);
    CHECK_THROWS_AS(solver.is_hit(Polynomial::var(1, 0, 10)), ResourceLimitError);
    SolverLimits cols;
    cols.max_columns = 2;
    HitSolver solver2(cols);
    CHECK_THROWS_AS(solver2.is_hit(Polynomial::var(3, 0, 4)), ResourceLimitError);
}

TEST_CASE("cache: round trip, absence, corruption, version bump") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hitpoly-cache-test";
    fs::remove_all(dir);

    {
        HitSolver solver(SolverLimits{}, dir);
        CHECK_FALSE(ReducedBasis::load(solver.cache_file(3, 10, 0)).has_value());
        const auto& b = solver.hit_space_basis(3, 10);
        CHECK(fs::exists(solver.cache_file(3, 10, 0)));
        auto loaded = ReducedBasis::load(solver.cache_file(3, 10, 0));
        REQUIRE(loaded.has_value());
        REQUIRE(loaded->rank() == b.rank());
        for (std::size_t j = 0; j < b.rank(); ++j) {
            CHECK(loaded->rows()[j].bits == b.rows()[j].bits);
            CHECK(loaded->rows()[j].combo == b.rows()[j].combo);
            CHECK(loaded->rows()[j].gen_i == b.rows()[j].gen_i);
            CHECK(loaded->rows()[j].gen_m == b.rows()[j].gen_m);
        }
        // a fresh solver must answer identically from the cached basis
        HitSolver reader(SolverLimits{}, dir);
        auto f = dickson_q(3, 2) * dickson_q(3, 1);
        auto r1 = solver.is_hit(f);
        auto r2 = reader.is_hit(f);
        CHECK(r1.hit == r2.hit);
    }

    // flip one payload byte: checksum failure
    {
        HitSolver solver(SolverLimits{}, dir);
        auto file = solver.cache_file(3, 10, 0);
        auto bytes = [&] {
            std::ifstream in(file, std::ios::binary);
            return std::string((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
        }();
        bytes[bytes.size() / 2] ^= 0x40;
        std::ofstream(file, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_AS(ReducedBasis::load(file), CacheChecksumError);
    }

    // rewrite with a bumped version (checksum recomputed): version mismatch
    {
        HitSolver solver(SolverLimits{}, dir);
        const auto& b = solver.hit_space_basis(2, 6);
        (void)b;
        auto file = solver.cache_file(2, 6, 0);
        auto bytes = [&] {
            std::ifstream in(file, std::ios::binary);
            return std::string((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
        }();
        std::uint32_t bumped = ReducedBasis::kFormatVersion + 1;
        std::memcpy(bytes.data() + 4, &bumped, 4);
        std::uint64_t sum = fnv1a64(bytes.data(), bytes.size() - 8);
        std::memcpy(bytes.data() + bytes.size() - 8, &sum, 8);
        std::ofstream(file, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_AS(ReducedBasis::load(file), CacheVersionError);
    }

    fs::remove_all(dir);
}
