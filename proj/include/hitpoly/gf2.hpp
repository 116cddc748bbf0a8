#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hitpoly {

/// C(n,k) mod 2 via Lucas: odd iff every bit of k is set in n.
inline bool binom_odd(std::uint64_t n, std::uint64_t k) {
    return (n & k) == k;
}

/// Packed bit vector over GF(2), word-aligned for fast XOR.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void operator^=(const BitVec& o) {
        const std::size_t n = words_.size();
        const std::uint64_t* src = o.words_.data();
        std::uint64_t* dst = words_.data();
        for (std::size_t w = 0; w < n; ++w) dst[w] ^= src[w];
    }

    bool is_zero() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// Index of the first set bit at position >= from, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first_set(std::size_t from = 0) const {
        if (from >= nbits_) return npos;
        std::size_t w = from >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (cur) {
                std::size_t bit = (w << 6) + std::countr_zero(cur);
                return bit < nbits_ ? bit : npos;
            }
            if (++w >= words_.size()) return npos;
            cur = words_[w];
        }
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool operator==(const BitVec&) const = default;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// FNV-1a 64-bit, used for cache-file checksums.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace hitpoly
