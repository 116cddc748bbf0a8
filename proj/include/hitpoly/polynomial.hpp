#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hitpoly/gf2.hpp"
#include "hitpoly/monomial.hpp"

namespace hitpoly {

/// A polynomial over F2: the (canonically sorted) set of monomials with
/// coefficient 1. Immutable value type; all operations return new values.
class Polynomial {
public:
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {
        if (nvars == 0) throw std::invalid_argument("Polynomial: nvars must be >= 1");
    }
    Polynomial(std::size_t nvars, std::vector<Monomial> support)
        : nvars_(nvars), support_(std::move(support)) {
        if (nvars == 0) throw std::invalid_argument("Polynomial: nvars must be >= 1");
        for (const auto& m : support_)
            if (m.nvars() != nvars_)
                throw std::invalid_argument("Polynomial: monomial nvars mismatch");
        normalize();
    }

    static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }
    static Polynomial one(std::size_t nvars) {
        return Polynomial(nvars, {Monomial::one(nvars)});
    }
    static Polynomial var(std::size_t nvars, std::size_t j, Exp e = 1) {
        return Polynomial(nvars, {Monomial::var(nvars, j, e)});
    }
    static Polynomial monomial(Monomial m) {
        std::size_t n = m.nvars();
        return Polynomial(n, {std::move(m)});
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<Monomial>& support() const { return support_; }
    bool is_zero() const { return support_.empty(); }

    bool is_homogeneous() const {
        for (const auto& m : support_)
            if (m.degree() != support_.front().degree()) return false;
        return true;
    }

    /// Degree of a homogeneous polynomial (0 for the zero polynomial).
    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& m : support_) d = std::max(d, m.degree());
        return d;
    }

    std::map<std::uint64_t, Polynomial> homogeneous_parts() const {
        std::map<std::uint64_t, std::vector<Monomial>> parts;
        for (const auto& m : support_) parts[m.degree()].push_back(m);
        std::map<std::uint64_t, Polynomial> out;
        for (auto& [d, ms] : parts) out.emplace(d, Polynomial(nvars_, std::move(ms)));
        return out;
    }

    Polynomial operator+(const Polynomial& o) const {
        check_nvars(o);
        std::vector<Monomial> merged;
        merged.reserve(support_.size() + o.support_.size());
        merged.insert(merged.end(), support_.begin(), support_.end());
        merged.insert(merged.end(), o.support_.begin(), o.support_.end());
        Polynomial r(nvars_);
        r.support_ = std::move(merged);
        r.normalize();
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        check_nvars(o);
        std::vector<Monomial> prods;
        prods.reserve(support_.size() * o.support_.size());
        for (const auto& a : support_)
            for (const auto& b : o.support_) prods.push_back(a * b);
        Polynomial r(nvars_);
        r.support_ = std::move(prods);
        r.normalize();
        return r;
    }

    Polynomial pow(std::uint64_t k) const {
        Polynomial acc = Polynomial::one(nvars_);
        Polynomial base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return acc;
    }

    /// Frobenius square: exponentwise doubling, no cross terms over F2.
    Polynomial squared() const {
        std::vector<Monomial> ms;
        ms.reserve(support_.size());
        for (const auto& m : support_) ms.push_back(m.pow(2));
        Polynomial r(nvars_);
        r.support_ = std::move(ms); // squaring preserves the canonical order
        return r;
    }

    Polynomial embedded(std::size_t nvars) const {
        std::vector<Monomial> ms;
        ms.reserve(support_.size());
        for (const auto& m : support_) ms.push_back(m.embedded(nvars));
        return Polynomial(nvars, std::move(ms));
    }

    /// Simultaneous substitution x_{j+1} -> images[j].
    Polynomial substituted(const std::vector<Polynomial>& images) const {
        if (images.size() != nvars_)
            throw std::invalid_argument("substituted: need one image per variable");
        std::size_t out_n = images.empty() ? nvars_ : images.front().nvars();
        Polynomial acc = Polynomial::zero(out_n);
        for (const auto& m : support_) {
            Polynomial term = Polynomial::one(out_n);
            for (std::size_t j = 0; j < nvars_; ++j)
                if (m.exp(j)) term = term * images[j].pow(m.exp(j));
            acc = acc + term;
        }
        return acc;
    }

    bool operator==(const Polynomial&) const = default;

    std::string str() const {
        if (support_.empty()) return "0";
        std::string s;
        for (const auto& m : support_) {
            if (!s.empty()) s += " + ";
            s += m.str();
        }
        return s;
    }

private:
    void check_nvars(const Polynomial& o) const {
        if (o.nvars_ != nvars_)
            throw std::invalid_argument("Polynomial: variable count mismatch");
    }
    // sort and drop pairs (coefficients live in F2)
    void normalize() {
        std::sort(support_.begin(), support_.end());
        std::vector<Monomial> out;
        out.reserve(support_.size());
        for (std::size_t i = 0; i < support_.size();) {
            std::size_t j = i;
            while (j < support_.size() && support_[j] == support_[i]) ++j;
            if ((j - i) % 2) out.push_back(support_[i]);
            i = j;
        }
        support_ = std::move(out);
    }

    std::size_t nvars_;
    std::vector<Monomial> support_;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All monomials of a fixed degree, in increasing canonical order
/// (x1^d first, xn^d last), with O(1) monomial-to-column lookup.
class GradedBasis {
public:
    GradedBasis(std::size_t nvars, std::uint64_t degree)
        : nvars_(nvars), degree_(degree) {
        if (nvars == 0) throw std::invalid_argument("GradedBasis: nvars must be >= 1");
        std::vector<Exp> cur(nvars, 0);
        enumerate(cur, 0, degree);
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            index_.emplace(monomials_[i].exps(), i);
    }

    std::size_t nvars() const { return nvars_; }
    std::uint64_t degree() const { return degree_; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::size_t size() const { return monomials_.size(); }

    std::size_t index_of(const Monomial& m) const {
        auto it = index_.find(m.exps());
        if (it == index_.end())
            throw std::invalid_argument("GradedBasis: monomial not in this component");
        return it->second;
    }

    BitVec to_vector(const Polynomial& p) const {
        if (p.nvars() != nvars_)
            throw std::invalid_argument("to_vector: variable count mismatch");
        BitVec v(monomials_.size());
        for (const auto& m : p.support()) {
            if (m.degree() != degree_)
                throw std::invalid_argument("to_vector: polynomial not homogeneous of basis degree");
            v.flip(index_of(m));
        }
        return v;
    }

    Polynomial from_vector(const BitVec& v) const {
        if (v.size() != monomials_.size())
            throw std::invalid_argument("from_vector: length mismatch");
        std::vector<Monomial> ms;
        for (std::size_t i = v.first_set(); i != BitVec::npos; i = v.first_set(i + 1))
            ms.push_back(monomials_[i]);
        return Polynomial(nvars_, std::move(ms));
    }

private:
    void enumerate(std::vector<Exp>& cur, std::size_t j, std::uint64_t rem) {
        if (j + 1 == nvars_) {
            cur[j] = static_cast<Exp>(rem);
            monomials_.emplace_back(cur);
            return;
        }
        for (std::uint64_t e = rem; e != static_cast<std::uint64_t>(-1); --e) {
            cur[j] = static_cast<Exp>(e);
            enumerate(cur, j + 1, rem - e);
        }
        cur[j] = 0;
    }

    std::size_t nvars_;
    std::uint64_t degree_;
    std::vector<Monomial> monomials_;
    std::unordered_map<std::vector<Exp>, std::size_t, MonomialHash> index_;
};

} // namespace hitpoly
