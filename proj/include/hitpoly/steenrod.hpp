#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hitpoly/polynomial.hpp"

namespace hitpoly {

namespace detail {

// Cartan convolution on a single monomial: distribute k over the variables,
// each variable contributing C(e_j, k_j) x_j^{e_j + k_j} mod 2.
inline void sq_monomial(const Monomial& m, std::uint64_t k,
                        std::vector<Exp>& cur, std::size_t j,
                        std::vector<Monomial>& out) {
    if (j + 1 == m.nvars()) {
        if (binom_odd(m.exp(j), k)) {
            cur[j] = static_cast<Exp>(m.exp(j) + k);
            out.emplace_back(cur);
        }
        return;
    }
    for (std::uint64_t kj = 0; kj <= k; ++kj) {
        if (!binom_odd(m.exp(j), kj)) continue;
        cur[j] = static_cast<Exp>(m.exp(j) + kj);
        sq_monomial(m, k - kj, cur, j + 1, out);
    }
}

} // namespace detail

/// Sq^i acting on F2[x1..xn]. Linear; on mixed-degree input it acts on
/// each homogeneous part (the closed form per monomial needs no split).
inline Polynomial sq(std::uint64_t i, const Polynomial& p) {
    if (i == 0) return p;
    std::vector<Monomial> terms;
    std::vector<Exp> cur(p.nvars(), 0);
    for (const auto& m : p.support()) {
        if (i > m.degree()) continue; // instability
        detail::sq_monomial(m, i, cur, 0, terms);
    }
    return Polynomial(p.nvars(), std::move(terms));
}

/// chi(Sq^i): the antipode, via chi(Sq^0) = id and
/// chi(Sq^k) = sum_{j=1..k} Sq^j chi(Sq^{k-j}) evaluated bottom-up on p.
inline Polynomial chi_sq(std::uint64_t i, const Polynomial& p) {
    std::vector<Polynomial> chi;
    chi.reserve(i + 1);
    chi.push_back(p);
    for (std::uint64_t m = 1; m <= i; ++m) {
        Polynomial acc = Polynomial::zero(p.nvars());
        for (std::uint64_t j = 1; j <= m; ++j) acc = acc + sq(j, chi[m - j]);
        chi.push_back(std::move(acc));
    }
    return chi[i];
}

enum class FactorKind { Sq, ChiSq };

struct OperatorFactor {
    FactorKind kind;
    std::uint64_t index;
    bool operator==(const OperatorFactor&) const = default;
};

/// A composite of Sq^i / chi(Sq^i) factors, leftmost outermost.
struct OperatorWord {
    std::vector<OperatorFactor> factors;

    std::uint64_t degree_shift() const {
        std::uint64_t s = 0;
        for (const auto& f : factors) s += f.index;
        return s;
    }
};

/// Evaluate a word on p: the last (innermost) factor applies first.
inline Polynomial apply_word(const OperatorWord& w, const Polynomial& p) {
    Polynomial cur = p;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
        cur = it->kind == FactorKind::Sq ? sq(it->index, cur) : chi_sq(it->index, cur);
    return cur;
}

/// u*Sq^k(v) + chi(Sq^k)(u)*v. The chi-trick says this is always hit.
inline Polynomial chi_trick_residue(const Polynomial& u, std::uint64_t k,
                                    const Polynomial& v) {
    if (u.nvars() != v.nvars())
        throw std::invalid_argument("chi_trick_residue: variable count mismatch");
    return u * sq(k, v) + chi_sq(k, u) * v;
}

} // namespace hitpoly
