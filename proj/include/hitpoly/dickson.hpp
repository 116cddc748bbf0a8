#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "hitpoly/polynomial.hpp"
#include "hitpoly/steenrod.hpp"

namespace hitpoly {

/// V_n = prod over alpha in {0,1}^{n-1} of (alpha_1 x1 + ... + alpha_{n-1} x_{n-1} + xn).
/// Degree 2^{n-1}; V_1 = x1.
inline Polynomial v_poly(std::size_t n) {
    if (n == 0) throw std::invalid_argument("v_poly: n must be >= 1");
    Polynomial acc = Polynomial::one(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
        std::vector<Monomial> terms;
        terms.push_back(Monomial::var(n, n - 1));
        for (std::size_t j = 0; j + 1 < n; ++j)
            if ((mask >> j) & 1) terms.push_back(Monomial::var(n, j));
        acc = acc * Polynomial(n, std::move(terms));
    }
    return acc;
}

/// Dickson invariant Q_{n,s} in exactly n variables, degree 2^n - 2^s.
/// Built from Q_{1,0} = x1, Q_{n,n} = 1 and the recursion
/// Q_{n+1,k} = Q_{n,k-1}^2 + V_{n+1} Q_{n,k}, extended at k = 0 by
/// Q_{n+1,0} = V_{n+1} Q_{n,0}.
inline Polynomial dickson_q(std::size_t n, std::size_t s) {
    if (n == 0 || s > n) throw std::out_of_range("dickson_q: need 0 <= s <= n, n >= 1");
    if (s == n) return Polynomial::one(n);
    if (n == 1) return Polynomial::var(1, 0);
    static thread_local std::map<std::pair<std::size_t, std::size_t>, Polynomial> memo;
    auto key = std::make_pair(n, s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Polynomial v = v_poly(n);
    Polynomial r = v * dickson_q(n - 1, s).embedded(n);
    if (s > 0) r = r + dickson_q(n - 1, s - 1).embedded(n).squared();
    memo.emplace(key, r);
    return r;
}

/// Independent oracle: prod_{v in F2^n} (T + v.x) = sum_s Q_{n,s} T^{2^s};
/// T is an internal auxiliary variable (index n), never exposed.
inline Polynomial dickson_q_oracle(std::size_t n, std::size_t s) {
    if (n == 0 || s > n) throw std::out_of_range("dickson_q_oracle: need 0 <= s <= n, n >= 1");
    Polynomial acc = Polynomial::one(n + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<Monomial> terms;
        terms.push_back(Monomial::var(n + 1, n)); // T
        for (std::size_t j = 0; j < n; ++j)
            if ((mask >> j) & 1) terms.push_back(Monomial::var(n + 1, j));
        acc = acc * Polynomial(n + 1, std::move(terms));
    }
    const Exp tpow = static_cast<Exp>(std::uint64_t(1) << s);
    std::vector<Monomial> out;
    for (const auto& m : acc.support()) {
        if (m.exp(n) != tpow) continue;
        std::vector<Exp> e(m.exps().begin(), m.exps().begin() + n);
        out.emplace_back(std::move(e));
    }
    return Polynomial(n, std::move(out));
}

/// Exponent data for A = V_{n+1}^a Q_{n,0}^{e0} ... Q_{n,n-1}^{e_{n-1}},
/// or a plain D_n monomial when a = 0.
struct DicksonSpec {
    std::size_t nvars_base = 1;       // n
    std::uint64_t a = 0;              // exponent of V_{n+1}
    std::vector<std::uint64_t> exps;  // exponents of Q_{n,0..n-1}

    std::uint64_t degree() const {
        const std::uint64_t p2n = std::uint64_t(1) << nvars_base;
        std::uint64_t d = a * p2n;
        for (std::size_t s = 0; s < exps.size(); ++s)
            d += exps[s] * (p2n - (std::uint64_t(1) << s));
        return d;
    }
    std::size_t ambient_nvars() const { return a > 0 ? nvars_base + 1 : nvars_base; }
    bool operator==(const DicksonSpec&) const = default;

    std::string str() const {
        std::string s = "(n=" + std::to_string(nvars_base) + ", a=" + std::to_string(a) + ", exps=(";
        for (std::size_t i = 0; i < exps.size(); ++i)
            s += (i ? "," : "") + std::to_string(exps[i]);
        return s + "))";
    }
};

/// The product polynomial for a DicksonSpec, in n+1 variables when a > 0.
inline Polynomial a_form(const DicksonSpec& spec) {
    const std::size_t n = spec.nvars_base;
    if (spec.exps.size() != n)
        throw std::invalid_argument("a_form: need exactly n Q-exponents");
    const std::size_t amb = spec.ambient_nvars();
    Polynomial acc = Polynomial::one(amb);
    if (spec.a > 0) acc = acc * v_poly(n + 1).pow(spec.a);
    for (std::size_t s = 0; s < n; ++s)
        if (spec.exps[s]) acc = acc * dickson_q(n, s).embedded(amb).pow(spec.exps[s]);
    return acc;
}

/// True iff p is fixed by the three generators of GL(n,F2):
/// x1<->x2 swap, the cyclic shift, and the transvection x1 -> x1+x2.
inline bool gl_invariance_check(std::size_t n, const Polynomial& p) {
    if (p.nvars() != n)
        throw std::invalid_argument("gl_invariance_check: variable count mismatch");
    if (n == 1) return true;
    std::vector<Polynomial> id;
    for (std::size_t j = 0; j < n; ++j) id.push_back(Polynomial::var(n, j));

    auto swap01 = id;
    std::swap(swap01[0], swap01[1]);
    auto cyc = id;
    std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
    auto transvect = id;
    transvect[0] = id[0] + id[1];

    return p.substituted(swap01) == p && p.substituted(cyc) == p &&
           p.substituted(transvect) == p;
}

/// All D_n exponent tuples (e_0..e_{n-1}) of total degree d, a = 0,
/// in lexicographic order on the tuple.
inline std::vector<DicksonSpec> enumerate_dickson_monomials(std::size_t n, std::uint64_t d) {
    if (n == 0) throw std::invalid_argument("enumerate_dickson_monomials: n must be >= 1");
    std::vector<DicksonSpec> out;
    std::vector<std::uint64_t> cur(n, 0);
    const std::uint64_t p2n = std::uint64_t(1) << n;
    auto rec = [&](auto&& self, std::size_t s, std::uint64_t rem) -> void {
        if (s == n) {
            if (rem == 0) out.push_back(DicksonSpec{n, 0, cur});
            return;
        }
        const std::uint64_t w = p2n - (std::uint64_t(1) << s);
        for (std::uint64_t e = 0; e * w <= rem; ++e) {
            cur[s] = e;
            self(self, s + 1, rem - e * w);
        }
        cur[s] = 0;
    };
    rec(rec, 0, d);
    return out;
}

} // namespace hitpoly
