#pragma once

#include <cstdint>
#include <cstring>
#include <tuple>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitpoly/gf2.hpp"
#include "hitpoly/polynomial.hpp"
#include "hitpoly/steenrod.hpp"

namespace hitpoly {

/// Hard ceilings for basis construction; exceeding one raises
/// ResourceLimitError, which callers must report distinctly from
/// mathematical answers.
struct SolverLimits {
    std::uint64_t max_degree = 64;
    std::size_t max_columns = 20000;
    std::size_t max_generators = 2000000;
};

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CacheVersionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CacheChecksumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// f = sum sq(i, u_i) with every i >= 1.
struct HitCertificate {
    struct Term {
        std::uint64_t i;
        Polynomial u;
    };
    std::vector<Term> terms;
};

/// Nonzero residual of f after full reduction against the hit-space rows.
struct NonHitWitness {
    std::size_t nvars = 0;
    std::uint64_t degree = 0;
    BitVec residual;
    Polynomial residual_poly = Polynomial(1);
};

struct HitResult {
    bool hit = false;
    HitCertificate certificate;          // meaningful when hit
    std::optional<NonHitWitness> witness; // meaningful when not hit
};

/// Row-echelon basis of the degree-d hit subspace with preimage tracking.
///
/// Row j stores its originating generator sq(gen_i, gen_m) and the set of
/// earlier rows XORed into it during reduction, so any membership answer
/// expands to an explicit generator combination by back-substitution.
class ReducedBasis {
public:
    static constexpr std::uint32_t kFormatVersion = 1;
    static constexpr const char* kOrderTag = "gradedlex-x1first-v1";

    struct Row {
        BitVec bits;       // ncols wide, first set bit = pivot
        BitVec combo;      // refers to rows with smaller index
        std::size_t pivot = 0;
        std::uint64_t gen_i = 0;
        Monomial gen_m = Monomial::one(1);
    };

    /// Build the basis from generators sq(i, m), i ascending from 1 to
    /// min(max_sq, floor(d/2)) (max_sq = 0 means unrestricted), monomials
    /// in canonical order. The i <= d/2 cutoff is lossless by instability.
    ReducedBasis(std::size_t nvars, std::uint64_t degree, std::uint64_t max_sq,
                 const SolverLimits& limits)
        : nvars_(nvars), degree_(degree), max_sq_(max_sq),
          columns_(std::make_shared<GradedBasis>(nvars, degree)) {
        if (degree > limits.max_degree)
            throw ResourceLimitError("hit basis: degree " + std::to_string(degree) +
                                     " exceeds max_degree ceiling");
        if (columns_->size() > limits.max_columns)
            throw ResourceLimitError("hit basis: " + std::to_string(columns_->size()) +
                                     " columns exceed max_columns ceiling");
        pivot_of_col_.assign(columns_->size(), -1);
        std::uint64_t imax = degree / 2;
        if (max_sq > 0) imax = std::min(imax, max_sq);

        std::size_t gen_count = 0;
        std::vector<Exp> scratch(nvars, 0);
        for (std::uint64_t i = 1; i <= imax; ++i) {
            GradedBasis lower(nvars, degree - i);
            if (gen_count + lower.size() > limits.max_generators)
                throw ResourceLimitError("hit basis: generator count exceeds ceiling");
            gen_count += lower.size();
            for (const auto& m : lower.monomials()) {
                std::vector<Monomial> img_terms;
                detail::sq_monomial(m, i, scratch, 0, img_terms);
                if (img_terms.empty()) continue;
                Polynomial img(nvars_, std::move(img_terms));
                if (img.is_zero()) continue;
                BitVec r = columns_->to_vector(img);
                BitVec combo(rows_.size());
                reduce_full(r, &combo);
                if (r.is_zero()) continue;
                std::size_t piv = r.first_set();
                pivot_of_col_[piv] = static_cast<std::ptrdiff_t>(rows_.size());
                rows_.push_back(Row{std::move(r), std::move(combo), piv, i, m});
            }
        }
    }

    std::size_t nvars() const { return nvars_; }
    std::uint64_t degree() const { return degree_; }
    std::uint64_t max_sq() const { return max_sq_; }
    std::size_t rank() const { return rows_.size(); }
    const GradedBasis& columns() const { return *columns_; }
    const std::vector<Row>& rows() const { return rows_; }

    /// Fully reduce v in place against all pivot rows; each XORed row is
    /// recorded in *combo when given.
    void reduce_full(BitVec& v, BitVec* combo = nullptr) const {
        std::size_t c = v.first_set();
        while (c != BitVec::npos) {
            std::ptrdiff_t j = pivot_of_col_[c];
            if (j >= 0) {
                v ^= rows_[static_cast<std::size_t>(j)].bits;
                if (combo) combo->flip(static_cast<std::size_t>(j));
                c = v.first_set(c); // bit c is now clear
            } else {
                c = v.first_set(c + 1);
            }
        }
    }

    /// Membership with certificate / witness for a homogeneous f of this
    /// component.
    HitResult query(const Polynomial& f) const {
        BitVec v = columns_->to_vector(f);
        BitVec combo(rows_.size());
        reduce_full(v, &combo);
        HitResult res;
        if (!v.is_zero()) {
            res.hit = false;
            NonHitWitness w;
            w.nvars = nvars_;
            w.degree = degree_;
            w.residual_poly = columns_->from_vector(v);
            w.residual = std::move(v);
            res.witness = std::move(w);
            return res;
        }
        res.hit = true;
        // back-substitution: row combos only reference smaller indices
        std::map<std::uint64_t, Polynomial> by_i;
        for (std::size_t j = rows_.size(); j-- > 0;) {
            if (!combo.test(j)) continue;
            const Row& row = rows_[j];
            auto [it, fresh] =
                by_i.try_emplace(row.gen_i, Polynomial::monomial(row.gen_m));
            if (!fresh) it->second = it->second + Polynomial::monomial(row.gen_m);
            for (std::size_t l = row.combo.first_set(); l != BitVec::npos;
                 l = row.combo.first_set(l + 1))
                combo.flip(l);
        }
        for (auto& [i, u] : by_i)
            if (!u.is_zero()) res.certificate.terms.push_back({i, std::move(u)});
        return res;
    }

    // --- persistent cache -------------------------------------------------

    void save(const std::filesystem::path& file) const {
        std::string buf;
        auto put = [&buf](const void* p, std::size_t n) {
            buf.append(static_cast<const char*>(p), n);
        };
        auto put_u32 = [&](std::uint32_t x) { put(&x, 4); };
        auto put_u64 = [&](std::uint64_t x) { put(&x, 8); };
        buf.append("HPB\n");
        put_u32(kFormatVersion);
        std::string tag = kOrderTag;
        put_u32(static_cast<std::uint32_t>(tag.size()));
        buf.append(tag);
        put_u64(nvars_);
        put_u64(degree_);
        put_u64(max_sq_);
        put_u64(columns_->size());
        put_u64(rows_.size());
        for (const auto& row : rows_) {
            put_u64(row.gen_i);
            for (Exp e : row.gen_m.exps()) put_u32(e);
            put_u64(row.pivot);
            put_u64(row.bits.size());
            put(row.bits.words().data(), row.bits.words().size() * 8);
            put_u64(row.combo.size());
            put(row.combo.words().data(), row.combo.words().size() * 8);
        }
        std::uint64_t sum = fnv1a64(buf.data(), buf.size());
        put(&sum, 8);
        std::filesystem::create_directories(file.parent_path());
        std::filesystem::path tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            if (!out) throw std::runtime_error("cache save failed: " + file.string());
        }
        std::filesystem::rename(tmp, file);
    }

    static std::optional<ReducedBasis> load(const std::filesystem::path& file) {
        std::ifstream in(file, std::ios::binary);
        if (!in) return std::nullopt;
        std::string buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        if (buf.size() < 16 || buf.compare(0, 4, "HPB\n") != 0)
            throw CacheChecksumError("cache file corrupt (bad magic): " + file.string());
        std::uint64_t stored;
        std::memcpy(&stored, buf.data() + buf.size() - 8, 8);
        if (fnv1a64(buf.data(), buf.size() - 8) != stored)
            throw CacheChecksumError("cache file corrupt (checksum): " + file.string());
        std::size_t pos = 4;
        auto get = [&](void* p, std::size_t n) {
            if (pos + n > buf.size() - 8)
                throw CacheChecksumError("cache file truncated: " + file.string());
            std::memcpy(p, buf.data() + pos, n);
            pos += n;
        };
        auto get_u32 = [&] { std::uint32_t x; get(&x, 4); return x; };
        auto get_u64 = [&] { std::uint64_t x; get(&x, 8); return x; };
        std::uint32_t ver = get_u32();
        if (ver != kFormatVersion)
            throw CacheVersionError("cache format version " + std::to_string(ver) +
                                    " != " + std::to_string(kFormatVersion));
        std::uint32_t taglen = get_u32();
        std::string tag(taglen, '\0');
        get(tag.data(), taglen);
        if (tag != kOrderTag)
            throw CacheVersionError("cache column-order tag mismatch: " + tag);
        std::uint64_t nvars = get_u64();
        std::uint64_t degree = get_u64();
        std::uint64_t max_sq = get_u64();
        ReducedBasis b(Private{}, nvars, degree, max_sq);
        std::uint64_t ncols = get_u64();
        if (ncols != b.columns_->size())
            throw CacheChecksumError("cache column count mismatch");
        std::uint64_t rank = get_u64();
        b.pivot_of_col_.assign(b.columns_->size(), -1);
        for (std::uint64_t j = 0; j < rank; ++j) {
            std::uint64_t gi = get_u64();
            std::vector<Exp> exps(b.nvars_);
            for (auto& e : exps) e = get_u32();
            std::uint64_t piv = get_u64();
            BitVec bits(get_u64());
            get(bits.words().data(), bits.words().size() * 8);
            BitVec combo(get_u64());
            get(combo.words().data(), combo.words().size() * 8);
            b.pivot_of_col_[piv] = static_cast<std::ptrdiff_t>(j);
            b.rows_.push_back(Row{std::move(bits), std::move(combo),
                                  static_cast<std::size_t>(piv), gi,
                                  Monomial(std::move(exps))});
        }
        return b;
    }

private:
    struct Private {};
    ReducedBasis(Private, std::size_t nvars, std::uint64_t degree, std::uint64_t max_sq)
        : nvars_(nvars), degree_(degree), max_sq_(max_sq),
          columns_(std::make_shared<GradedBasis>(nvars, degree)) {}

    std::size_t nvars_;
    std::uint64_t degree_;
    std::uint64_t max_sq_;
    std::shared_ptr<GradedBasis> columns_;
    std::vector<Row> rows_;
    std::vector<std::ptrdiff_t> pivot_of_col_;
};

/// Front end: decides hitness, owns the in-memory and on-disk basis caches.
class HitSolver {
public:
    explicit HitSolver(SolverLimits limits = {}, std::filesystem::path cache_dir = {})
        : limits_(limits), cache_dir_(std::move(cache_dir)) {}

    const SolverLimits& limits() const { return limits_; }

    /// max_sq = 0 means unrestricted (all generators Sq^1..Sq^{d/2}).
    const ReducedBasis& hit_space_basis(std::size_t n, std::uint64_t d,
                                        std::uint64_t max_sq = 0) {
        auto key = std::make_tuple(n, d, max_sq);
        if (auto it = bases_.find(key); it != bases_.end()) return *it->second;
        if (!cache_dir_.empty()) {
            if (auto loaded = ReducedBasis::load(cache_file(n, d, max_sq))) {
                auto ptr = std::make_shared<ReducedBasis>(std::move(*loaded));
                return *bases_.emplace(key, std::move(ptr)).first->second;
            }
        }
        auto ptr = std::make_shared<ReducedBasis>(n, d, max_sq, limits_);
        if (!cache_dir_.empty()) ptr->save(cache_file(n, d, max_sq));
        return *bases_.emplace(key, std::move(ptr)).first->second;
    }

    /// Decide f in sum_{1<=i<=max_sq or d/2} Im(Sq^i). Non-homogeneous f is
    /// split; it is hit iff every homogeneous part is.
    HitResult is_hit(const Polynomial& f, std::uint64_t max_sq = 0) {
        if (f.is_zero()) return HitResult{true, {}, std::nullopt};
        HitResult total{true, {}, std::nullopt};
        for (const auto& [d, part] : f.homogeneous_parts()) {
            if (d == 0) {
                // constants other than 0 are never hit (no generators land in degree 0)
                NonHitWitness w;
                w.nvars = f.nvars();
                w.degree = 0;
                w.residual = BitVec(1);
                w.residual.set(0);
                w.residual_poly = part;
                return HitResult{false, {}, std::move(w)};
            }
            HitResult r = hit_space_basis(f.nvars(), d, max_sq).query(part);
            if (!r.hit) return r;
            for (auto& t : r.certificate.terms)
                total.certificate.terms.push_back(std::move(t));
        }
        return total;
    }

    /// Independent recomputation of sum sq(i, u_i) via the Steenrod action.
    static bool verify_certificate(const Polynomial& f, const HitCertificate& cert) {
        Polynomial acc = Polynomial::zero(f.nvars());
        for (const auto& t : cert.terms) {
            if (t.i == 0 || t.u.nvars() != f.nvars()) return false;
            acc = acc + sq(t.i, t.u);
        }
        return acc == f;
    }

    std::filesystem::path cache_file(std::size_t n, std::uint64_t d,
                                     std::uint64_t max_sq) const {
        std::string name = "basis_n" + std::to_string(n) + "_d" + std::to_string(d);
        if (max_sq) name += "_sq" + std::to_string(max_sq);
        return cache_dir_ / (name + ".hpb");
    }
    const std::filesystem::path& cache_dir() const { return cache_dir_; }

private:
    SolverLimits limits_;
    std::filesystem::path cache_dir_;
    std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>,
             std::shared_ptr<ReducedBasis>>
        bases_;
};

} // namespace hitpoly
