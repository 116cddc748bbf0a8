#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hitpoly {

using Exp = std::uint32_t;

/// A monomial in F2[x1..xn]: a fixed-length exponent vector.
///
/// Canonical order: graded, then within a degree the monomial with the
/// lexicographically larger exponent vector comes first (x1^d is the
/// minimum of its degree, xn^d the maximum).
class Monomial {
public:
    explicit Monomial(std::vector<Exp> exps) : exps_(std::move(exps)) {
        if (exps_.empty()) throw std::invalid_argument("Monomial: nvars must be >= 1");
    }

    static Monomial one(std::size_t nvars) {
        return Monomial(std::vector<Exp>(nvars, 0));
    }
    /// x_{j+1} (0-based index j).
    static Monomial var(std::size_t nvars, std::size_t j, Exp e = 1) {
        std::vector<Exp> v(nvars, 0);
        v.at(j) = e;
        return Monomial(std::move(v));
    }

    std::size_t nvars() const { return exps_.size(); }
    Exp exp(std::size_t j) const { return exps_[j]; }
    const std::vector<Exp>& exps() const { return exps_; }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (Exp e : exps_) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        if (o.nvars() != nvars())
            throw std::invalid_argument("Monomial: variable count mismatch");
        std::vector<Exp> v(exps_);
        for (std::size_t j = 0; j < v.size(); ++j) {
            std::uint64_t s = std::uint64_t(v[j]) + o.exps_[j];
            if (s > 0xffffffffull) throw std::overflow_error("Monomial exponent overflow");
            v[j] = static_cast<Exp>(s);
        }
        return Monomial(std::move(v));
    }

    Monomial pow(std::uint64_t k) const {
        std::vector<Exp> v(exps_);
        for (auto& e : v) {
            std::uint64_t s = std::uint64_t(e) * k;
            if (s > 0xffffffffull) throw std::overflow_error("Monomial exponent overflow");
            e = static_cast<Exp>(s);
        }
        return Monomial(std::move(v));
    }

    /// Pad with zero exponents up to nvars.
    Monomial embedded(std::size_t nvars) const {
        if (nvars < exps_.size())
            throw std::invalid_argument("Monomial: cannot embed into fewer variables");
        std::vector<Exp> v(exps_);
        v.resize(nvars, 0);
        return Monomial(std::move(v));
    }

    bool operator==(const Monomial&) const = default;

    std::strong_ordering operator<=>(const Monomial& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        // larger exponent vector (lex) sorts first
        for (std::size_t j = 0; j < exps_.size() && j < o.exps_.size(); ++j)
            if (auto c = o.exps_[j] <=> exps_[j]; c != 0) return c;
        return o.exps_.size() <=> exps_.size();
    }

    std::string str() const {
        if (degree() == 0) return "1";
        std::string s;
        for (std::size_t j = 0; j < exps_.size(); ++j) {
            if (exps_[j] == 0) continue;
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(j + 1);
            if (exps_[j] > 1) s += "^" + std::to_string(exps_[j]);
        }
        return s;
    }

private:
    std::vector<Exp> exps_;
};

struct MonomialHash {
    std::size_t operator()(const std::vector<Exp>& e) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (Exp x : e) {
            h ^= x;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace hitpoly
