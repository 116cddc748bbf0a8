#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "hitpoly/dickson.hpp"

namespace hitpoly {

/// Formal F2-algebra on the generators V_{n+1}, Q_{n,0}, ..., Q_{n,n-1},
/// which are algebraically independent, with the Steenrod action given by
/// the Sq^i tables on V and Q. Lets the C7 expansion be tracked exactly at
/// the level of exponent tuples (a; k_0..k_{n-1}) instead of raw
/// polynomials.
class VQAlgebra {
public:
    /// One product V^a Q_{n,0}^{k_0} ... Q_{n,n-1}^{k_{n-1}}.
    struct Term {
        std::uint64_t a = 0;
        std::vector<std::uint64_t> k;
        auto operator<=>(const Term&) const = default;
    };
    /// An F2-sum of terms, kept sorted and duplicate-free.
    using Elem = std::vector<Term>;

    explicit VQAlgebra(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("VQAlgebra: n must be >= 1");
    }

    std::size_t base_vars() const { return n_; }

    Term term(std::uint64_t a, std::vector<std::uint64_t> k) const {
        if (k.size() != n_) throw std::invalid_argument("VQAlgebra: need n Q-exponents");
        return Term{a, std::move(k)};
    }

    static Elem zero() { return {}; }
    Elem single(Term t) const { return {std::move(t)}; }

    std::uint64_t degree(const Term& t) const {
        const std::uint64_t p2n = std::uint64_t(1) << n_;
        std::uint64_t d = t.a * p2n;
        for (std::size_t s = 0; s < n_; ++s)
            d += t.k[s] * (p2n - (std::uint64_t(1) << s));
        return d;
    }

    static Elem add(Elem x, const Elem& y) {
        x.insert(x.end(), y.begin(), y.end());
        std::sort(x.begin(), x.end());
        Elem out;
        for (std::size_t i = 0; i < x.size();) {
            std::size_t j = i;
            while (j < x.size() && x[j] == x[i]) ++j;
            if ((j - i) % 2) out.push_back(x[i]);
            i = j;
        }
        return out;
    }

    static Term mul_term(const Term& s, const Term& t) {
        Term r = s;
        r.a += t.a;
        for (std::size_t j = 0; j < r.k.size(); ++j) r.k[j] += t.k[j];
        return r;
    }

    static Elem mul(const Elem& x, const Elem& y) {
        Elem out;
        for (const auto& s : x)
            for (const auto& t : y) out.push_back(mul_term(s, t));
        return add(std::move(out), {});
    }

    /// Sq^i on a whole element.
    Elem sq(std::uint64_t i, const Elem& e) const {
        Elem out;
        for (const auto& t : e) out = add(std::move(out), sq_term(i, t));
        return out;
    }

    /// chi(Sq^i) via the antipode recursion, evaluated bottom-up.
    Elem chi_sq(std::uint64_t i, const Elem& e) const {
        std::vector<Elem> chi{e};
        for (std::uint64_t m = 1; m <= i; ++m) {
            Elem acc;
            for (std::uint64_t j = 1; j <= m; ++j)
                acc = add(std::move(acc), sq(j, chi[m - j]));
            chi.push_back(std::move(acc));
        }
        return chi[i];
    }

    /// Expand into an honest polynomial in n+1 variables.
    Polynomial to_polynomial(const Elem& e) const {
        Polynomial acc = Polynomial::zero(n_ + 1);
        for (const auto& t : e) {
            Polynomial p = Polynomial::one(n_ + 1);
            if (t.a) p = p * v_poly(n_ + 1).pow(t.a);
            for (std::size_t s = 0; s < n_; ++s)
                if (t.k[s]) p = p * dickson_q(n_, s).embedded(n_ + 1).pow(t.k[s]);
            acc = acc + p;
        }
        return acc;
    }

    // Sq^i on the single generator V_{n+1} (i >= 1):
    // V^2 at i = 2^n, V*Q_{n,s} at i = 2^n - 2^s, else 0.
    Elem sq_on_v(std::uint64_t i) const {
        const std::uint64_t p2n = std::uint64_t(1) << n_;
        if (i == 0) return single(term(1, std::vector<std::uint64_t>(n_, 0)));
        if (i == p2n) return single(term(2, std::vector<std::uint64_t>(n_, 0)));
        if (i < p2n && std::has_single_bit(p2n - i)) {
            std::size_t s = static_cast<std::size_t>(std::countr_zero(p2n - i));
            if (s < n_) {
                std::vector<std::uint64_t> k(n_, 0);
                k[s] = 1;
                return single(term(1, std::move(k)));
            }
        }
        return {};
    }

    // Sq^i on the single generator Q_{n,s}.
    Elem sq_on_q(std::size_t s, std::uint64_t i) const {
        const std::uint64_t p2n = std::uint64_t(1) << n_;
        const std::uint64_t p2s = std::uint64_t(1) << s;
        std::vector<std::uint64_t> k(n_, 0);
        if (i == 0) {
            k[s] = 1;
            return single(term(0, std::move(k)));
        }
        if (i == p2n - p2s) {
            k[s] = 2;
            return single(term(0, std::move(k)));
        }
        if (i < p2s && std::has_single_bit(p2s - i)) {
            std::size_t r = static_cast<std::size_t>(std::countr_zero(p2s - i));
            k[r] = 1;
            return single(term(0, std::move(k)));
        }
        // product case: 2^t + 2^r = 2^n + 2^s - i with r <= s < t <= n-1
        const std::uint64_t m = p2n + p2s - i;
        if (i <= p2n + p2s && std::popcount(m) == 2) {
            std::size_t r = static_cast<std::size_t>(std::countr_zero(m));
            std::size_t t = static_cast<std::size_t>(63 - std::countl_zero(m));
            if (r <= s && s < t && t <= n_ - 1) {
                k[r] += 1;
                k[t] += 1;
                return single(term(0, std::move(k)));
            }
        }
        return {};
    }

private:
    // Cartan over the atom list of one term.
    Elem sq_term(std::uint64_t i, const Term& t) const {
        std::vector<int> atoms; // -1 for V, s >= 0 for Q_{n,s}
        for (std::uint64_t c = 0; c < t.a; ++c) atoms.push_back(-1);
        for (std::size_t s = 0; s < n_; ++s)
            for (std::uint64_t c = 0; c < t.k[s]; ++c) atoms.push_back(static_cast<int>(s));
        return sq_atoms(i, atoms, 0);
    }

    Elem sq_atoms(std::uint64_t i, const std::vector<int>& atoms, std::size_t pos) const {
        if (pos == atoms.size())
            return i == 0 ? single(term(0, std::vector<std::uint64_t>(n_, 0))) : zero();
        Elem out;
        const int atom = atoms[pos];
        const std::uint64_t atom_deg =
            atom < 0 ? (std::uint64_t(1) << n_)
                     : (std::uint64_t(1) << n_) - (std::uint64_t(1) << atom);
        for (std::uint64_t j = 0; j <= std::min(i, atom_deg); ++j) {
            Elem head = atom < 0 ? sq_on_v(j) : sq_on_q(static_cast<std::size_t>(atom), j);
            if (head.empty()) continue;
            Elem tail = sq_atoms(i - j, atoms, pos + 1);
            if (tail.empty()) continue;
            out = add(std::move(out), mul(head, tail));
        }
        return out;
    }

    std::size_t n_;
};

} // namespace hitpoly
