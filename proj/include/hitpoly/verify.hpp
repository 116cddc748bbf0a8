#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hitpoly/dickson.hpp"
#include "hitpoly/hitsolver.hpp"
#include "hitpoly/steenrod.hpp"
#include "hitpoly/vqalgebra.hpp"

namespace hitpoly {

enum class ReplayStatus { ExactEqual, EqualModuloHit, Failed, Ceiling };

inline const char* to_string(ReplayStatus s) {
    switch (s) {
        case ReplayStatus::ExactEqual: return "exact-equal";
        case ReplayStatus::EqualModuloHit: return "equal-modulo-hit";
        case ReplayStatus::Failed: return "failed";
        case ReplayStatus::Ceiling: return "ceiling";
    }
    return "?";
}

/// Outcome of one mechanically replayed identity or case split.
struct ReplayReport {
    std::string case_id;
    std::string params;
    ReplayStatus status = ReplayStatus::Failed;
    std::string detail;
    std::optional<Polynomial> difference; // set when status == Failed
    double timing_ms = 0.0;

    bool ok() const { return status != ReplayStatus::Failed; }
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline ReplayReport compare_exact(std::string case_id, std::string params,
                                  const Polynomial& got, const Polynomial& want,
                                  const Stopwatch& sw) {
    ReplayReport r;
    r.case_id = std::move(case_id);
    r.params = std::move(params);
    if (got == want) {
        r.status = ReplayStatus::ExactEqual;
    } else {
        r.status = ReplayStatus::Failed;
        r.difference = got + want;
        r.detail = "sides differ";
    }
    r.timing_ms = sw.ms();
    return r;
}

} // namespace detail

/// Predicted value of Sq^i V_n from the Sq^i table on V.
inline Polynomial predicted_sq_V(std::size_t n, std::uint64_t i) {
    const std::uint64_t top = std::uint64_t(1) << (n - 1);
    auto v = v_poly(n);
    if (i == 0) return v;
    if (i == top) return v.squared();
    if (i < top && std::has_single_bit(top - i)) {
        std::size_t s = static_cast<std::size_t>(std::countr_zero(top - i));
        if (n >= 2 && s <= n - 2) return v * dickson_q(n - 1, s).embedded(n);
        if (s == n - 1) return v; // i = 0 already handled; unreachable
    }
    return Polynomial::zero(n);
}

/// Predicted value of Sq^i Q_{n,s} from the Sq^i table on Q. The product
/// case resolves (t, r) by the binary decomposition of 2^n + 2^s - i,
/// reading t <= n-1; with no valid reading the prediction is 0.
inline Polynomial predicted_sq_Q(std::size_t n, std::size_t s, std::uint64_t i) {
    const std::uint64_t p2n = std::uint64_t(1) << n;
    const std::uint64_t p2s = std::uint64_t(1) << s;
    if (i == 0) return dickson_q(n, s);
    if (i == p2n - p2s) return dickson_q(n, s).squared();
    if (i < p2s && std::has_single_bit(p2s - i)) {
        std::size_t r = static_cast<std::size_t>(std::countr_zero(p2s - i));
        return dickson_q(n, r);
    }
    const std::uint64_t m = p2n + p2s - i;
    if (i <= p2n + p2s && std::popcount(m) == 2) {
        std::size_t r = static_cast<std::size_t>(std::countr_zero(m));
        std::size_t t = static_cast<std::size_t>(63 - std::countl_zero(m));
        if (r <= s && s < t && t <= n - 1)
            return dickson_q(n, r) * dickson_q(n, t);
    }
    return Polynomial::zero(n);
}

inline ReplayReport check_sq_on_V(std::size_t n, std::uint64_t i) {
    detail::Stopwatch sw;
    return detail::compare_exact("sq-on-V",
                                 "n=" + std::to_string(n) + ", i=" + std::to_string(i),
                                 sq(i, v_poly(n)), predicted_sq_V(n, i), sw);
}

inline ReplayReport check_sq_on_Q(std::size_t n, std::size_t s, std::uint64_t i) {
    detail::Stopwatch sw;
    return detail::compare_exact("sq-on-Q",
                                 "n=" + std::to_string(n) + ", s=" + std::to_string(s) +
                                     ", i=" + std::to_string(i),
                                 sq(i, dickson_q(n, s)), predicted_sq_Q(n, s, i), sw);
}

/// Eq. (V): V_{n+1} = sum_{s=1}^{n} Sq^1(Q_{n,s} x_{n+1}^{2^s-1}).
inline ReplayReport check_V_identity(std::size_t n) {
    detail::Stopwatch sw;
    Polynomial rhs = Polynomial::zero(n + 1);
    for (std::size_t s = 1; s <= n; ++s) {
        Exp e = static_cast<Exp>((std::uint64_t(1) << s) - 1);
        rhs = rhs + sq(1, dickson_q(n, s).embedded(n + 1) * Polynomial::var(n + 1, n, e));
    }
    return detail::compare_exact("v-identity", "n=" + std::to_string(n), rhs,
                                 v_poly(n + 1), sw);
}

/// Compare chi(Sq^{2^n-4}) f against Sq^{2^{n-1}} ... Sq^8 chi(Sq^4) f.
/// Exact equality is a pass; a hit difference is the level the proofs need.
inline ReplayReport check_davis_composite(std::size_t n, const Polynomial& f,
                                          HitSolver& solver) {
    detail::Stopwatch sw;
    ReplayReport r;
    r.case_id = "davis-composite";
    r.params = "n=" + std::to_string(n) + ", f=" + f.str();
    OperatorWord w;
    for (std::uint64_t i = std::uint64_t(1) << (n - 1); i >= 8; i >>= 1)
        w.factors.push_back({FactorKind::Sq, i});
    w.factors.push_back({FactorKind::ChiSq, 4});
    Polynomial lhs = chi_sq((std::uint64_t(1) << n) - 4, f);
    Polynomial rhs = apply_word(w, f);
    Polynomial diff = lhs + rhs;
    if (diff.is_zero()) {
        r.status = ReplayStatus::ExactEqual;
    } else {
        try {
            auto hit = solver.is_hit(diff);
            if (hit.hit && HitSolver::verify_certificate(diff, hit.certificate)) {
                r.status = ReplayStatus::EqualModuloHit;
                r.detail = "difference is hit (certificate verified)";
            } else {
                r.status = ReplayStatus::Failed;
                r.difference = diff;
                r.detail = "difference is not hit";
            }
        } catch (const ResourceLimitError& e) {
            r.status = ReplayStatus::Ceiling;
            r.detail = e.what();
        }
    }
    r.timing_ms = sw.ms();
    return r;
}

/// Sq^i V_4^a: 0 for i in {1,2,3}; for i = 4, 0 when a is even and
/// V_4^a Q_{3,2} when a is odd.
inline ReplayReport check_sq_vanishing_on_V4_powers(std::uint64_t a, std::uint64_t i) {
    detail::Stopwatch sw;
    Polynomial va = v_poly(4).pow(a);
    Polynomial want = Polynomial::zero(4);
    if (i == 4 && (a % 2)) want = va * dickson_q(3, 2).embedded(4);
    return detail::compare_exact("sq-vanishing-V4",
                                 "a=" + std::to_string(a) + ", i=" + std::to_string(i),
                                 sq(i, va), want, sw);
}

// ---------------------------------------------------------------------------
// Proof replay, case by case. Every displayed "=" is checked exactly and
// every "(modulo the hits)" difference goes through the solver.
// ---------------------------------------------------------------------------

namespace detail {

struct StepTracker {
    ReplayReport report;
    HitSolver* solver = nullptr;
    std::uint64_t max_sq = 0;
    bool any_modulo = false;
    bool failed = false;
    bool ceiling = false;

    bool exact(const std::string& name, const Polynomial& lhs, const Polynomial& rhs) {
        if (lhs == rhs) {
            note(name + ": exact");
            return true;
        }
        failed = true;
        report.difference = lhs + rhs;
        report.detail += name + ": sides differ; ";
        return false;
    }

    bool modulo_hit(const std::string& name, const Polynomial& diff) {
        any_modulo = true;
        if (diff.is_zero()) {
            note(name + ": exact");
            return true;
        }
        try {
            auto r = solver->is_hit(diff, max_sq);
            if (r.hit && HitSolver::verify_certificate(diff, r.certificate)) {
                note(name + ": hit");
                return true;
            }
            failed = true;
            report.difference = diff;
            report.detail += name + ": difference not hit; ";
            return false;
        } catch (const ResourceLimitError& e) {
            ceiling = true;
            report.detail += name + ": " + e.what() + "; ";
            return false;
        }
    }

    bool member(const std::string& name, const Polynomial& f) {
        return modulo_hit(name, f);
    }

    void note(const std::string& s) { report.detail += s + "; "; }

    ReplayReport finish(const Stopwatch& sw) {
        if (failed)
            report.status = ReplayStatus::Failed;
        else if (ceiling)
            report.status = ReplayStatus::Ceiling;
        else
            report.status = any_modulo ? ReplayStatus::EqualModuloHit : ReplayStatus::ExactEqual;
        report.timing_ms = sw.ms();
        return std::move(report);
    }
};

// S = sum_{s=1}^{n} Q_{n,s} x_{n+1}^{2^s-1}, the Sq^1-potential of V_{n+1}.
inline Polynomial v_potential(std::size_t n) {
    Polynomial s = Polynomial::zero(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        Exp e = static_cast<Exp>((std::uint64_t(1) << k) - 1);
        s = s + dickson_q(n, k).embedded(n + 1) * Polynomial::var(n + 1, n, e);
    }
    return s;
}

inline Polynomial q_product(std::size_t n, const std::vector<std::uint64_t>& exps,
                            std::size_t ambient) {
    Polynomial p = Polynomial::one(ambient);
    for (std::size_t s = 0; s < exps.size(); ++s)
        if (exps[s]) p = p * dickson_q(n, s).embedded(ambient).pow(exps[s]);
    return p;
}

} // namespace detail

/// C1 (n_1 even, a >= 1):
/// A = Sq^1[(sum_s Q_{n,s} x_{n+1}^{2^s-1}) V^{a-1} prod Q^{n_i}].
inline ReplayReport replay_case_c1(const DicksonSpec& spec) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.report.case_id = "C1";
    t.report.params = spec.str();
    const std::size_t n = spec.nvars_base;
    if (spec.a == 0 || spec.exps[1] % 2 != 0)
        throw std::invalid_argument("C1 needs a >= 1 and n_1 even");
    Polynomial inner = detail::v_potential(n) * v_poly(n + 1).pow(spec.a - 1) *
                       detail::q_product(n, spec.exps, n + 1);
    t.exact("A = Sq^1[S V^{a-1} prod Q]", a_form(spec), sq(1, inner));
    return t.finish(sw);
}

/// C2 (n_1 odd, n_2 even, a >= 1): A = Sq^2[...] + Sq^1[...] as displayed.
inline ReplayReport replay_case_c2(const DicksonSpec& spec) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.report.case_id = "C2";
    t.report.params = spec.str();
    const std::size_t n = spec.nvars_base;
    if (spec.a == 0 || spec.exps[1] % 2 != 1 || spec.exps[2] % 2 != 0)
        throw std::invalid_argument("C2 needs a >= 1, n_1 odd, n_2 even");

    auto shifted = spec.exps;
    shifted[1] -= 1;
    shifted[2] += 1;
    Polynomial term2 = sq(2, v_poly(n + 1).pow(spec.a) * detail::q_product(n, shifted, n + 1));

    // (Sq^1 Q_{n,1}^{(n_1-1)/2})^2 replaces Q_{n,1}^{n_1-1} inside the Sq^1 part
    Polynomial w = sq(1, dickson_q(n, 1).pow((spec.exps[1] - 1) / 2)).embedded(n + 1);
    auto rest = spec.exps;
    rest[1] = 0;
    rest[2] += 1;
    Polynomial inner1 = detail::v_potential(n) * v_poly(n + 1).pow(spec.a - 1) *
                        w.squared() * detail::q_product(n, rest, n + 1);
    t.exact("A = Sq^2[...] + Sq^1[...]", a_form(spec), term2 + sq(1, inner1));
    return t.finish(sw);
}

/// C3 (n = 3, n_0 even, a odd, n_1 and n_2 odd): the chain of congruences
/// through V_4 chi(Sq^4)[...] down to V^a Q_{3,1} (Sq^2[...])^2.
inline ReplayReport replay_case_c3(const DicksonSpec& spec, HitSolver& solver) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.solver = &solver;
    t.report.case_id = "C3";
    t.report.params = spec.str();
    if (spec.nvars_base != 3 || spec.a % 2 != 1 || spec.exps[0] % 2 != 0 ||
        spec.exps[1] % 2 != 1 || spec.exps[2] % 2 != 1)
        throw std::invalid_argument("C3 needs n=3, n_0 even, a odd, n_1 and n_2 odd");

    const Polynomial v = v_poly(4);
    const Polynomial A = a_form(spec);
    auto lowered = spec.exps;
    lowered[2] -= 1;
    const Polynomial u = v.pow(spec.a - 1) * detail::q_product(3, lowered, 4);

    // A = (V^{a-1} Sq^4 V) Q0^{n0} Q1^{n1} Q2^{n2-1}
    if (!t.exact("A = u Sq^4(V)", A, u * sq(4, v))) return t.finish(sw);
    // chi-trick: u Sq^4(V) == V chi(Sq^4)(u) modulo hits
    if (!t.modulo_hit("u Sq^4(V) ~ V chi(Sq^4)(u)", chi_trick_residue(u, 4, v)))
        return t.finish(sw);
    // ... == V^a Q_{3,1} (Sq^2[Q0^{n0/2} Q1^{(n1-1)/2} Q2^{(n2-1)/2}])^2 modulo hits
    std::vector<std::uint64_t> half{spec.exps[0] / 2, (spec.exps[1] - 1) / 2,
                                    (spec.exps[2] - 1) / 2};
    Polynomial target = v.pow(spec.a) * dickson_q(3, 1).embedded(4) *
                        sq(2, detail::q_product(3, half, 3)).embedded(4).squared();
    if (!t.modulo_hit("V chi(Sq^4)(u) ~ V^a Q1 (Sq^2[...])^2",
                      v * chi_sq(4, u) + target))
        return t.finish(sw);
    // final polynomial is hit (its Q_{3,2}-exponent is even)
    t.member("V^a Q1 (Sq^2[...])^2 is hit", target);
    return t.finish(sw);
}

/// C4 (n = 3, n_0 even, a even, n_1 and n_2 odd): the displayed derivation
/// showing Q0^{n0} Q1^{n1} Q2^{n2} lies in the image of Sq^1..Sq^4, every
/// hit-test restricted to those generators, plus Sq^i V^a = 0 for i <= 4.
inline ReplayReport replay_case_c4(const DicksonSpec& spec, HitSolver& solver) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.solver = &solver;
    t.max_sq = 4;
    t.report.case_id = "C4";
    t.report.params = spec.str();
    if (spec.nvars_base != 3 || spec.a % 2 != 0 || spec.exps[0] % 2 != 0 ||
        spec.exps[1] % 2 != 1 || spec.exps[2] % 2 != 1)
        throw std::invalid_argument("C4 needs n=3, n_0 and a even, n_1 and n_2 odd");

    const Polynomial q0 = dickson_q(3, 0), q1 = dickson_q(3, 1), q2 = dickson_q(3, 2);
    const Polynomial M = detail::q_product(3, spec.exps, 3);
    auto lowered = spec.exps;
    lowered[1] -= 1;
    lowered[2] -= 1;
    const Polynomial P = detail::q_product(3, lowered, 3);

    if (!t.exact("M = P Sq^4(Q1)", M, P * sq(4, q1))) return t.finish(sw);
    if (!t.modulo_hit("P Sq^4(Q1) ~ Q1 chi(Sq^4)(P)", chi_trick_residue(P, 4, q1)))
        return t.finish(sw);

    std::vector<std::uint64_t> half{spec.exps[0] / 2, (spec.exps[1] - 1) / 2,
                                    (spec.exps[2] - 1) / 2};
    const Polynomial y = detail::q_product(3, half, 3);
    const Polynomial w = sq(1, sq(2, y));
    Polynomial l1 = sq(2, q2) * sq(2, y).squared();
    if (!t.exact("Q1 chi(Sq^4)(P) = [Sq^2 Q2][Sq^2 y]^2", q1 * chi_sq(4, P), l1))
        return t.finish(sw);
    Polynomial l2 = q2 * w.squared();
    if (!t.modulo_hit("[Sq^2 Q2][Sq^2 y]^2 ~ Q2 [Sq^1 Sq^2 y]^2",
                      chi_trick_residue(sq(2, y).squared(), 2, q2)))
        return t.finish(sw);
    Polynomial q21 = dickson_q(2, 1).embedded(3);
    if (!t.exact("Q2 = Q_{2,1}^2 + V_3 factored", l2, (q21.squared() + v_poly(3)) * w.squared()))
        return t.finish(sw);
    Polynomial x3 = Polynomial::var(3, 2);
    Polynomial final_form = sq(2, q21 * w.squared()) +
                            sq(1, (q21 * x3 + x3.pow(3)) * w.squared());
    if (!t.exact("(Q_{2,1}^2+V_3) w^2 = Sq^2[...] + Sq^1[...]", l2, final_form))
        return t.finish(sw);

    // direct restricted membership of M itself
    if (!t.member("M in image of Sq^1..Sq^4", M)) return t.finish(sw);

    // Sq^i V^a = 0 for i = 1..4 (a even), so the chi-trick lifts M's
    // membership to A
    Polynomial va = v_poly(4).pow(spec.a);
    for (std::uint64_t i = 1; i <= 4; ++i)
        if (!t.exact("Sq^" + std::to_string(i) + " V^a = 0", sq(i, va),
                     Polynomial::zero(4)))
            return t.finish(sw);
    return t.finish(sw);
}

/// C5 (n = 3, n_0 odd, a odd, n_1 and n_2 odd): factor out V^{a-1} Sq^7 V,
/// check the chi-annihilation and the restricted membership of the cofactor.
inline ReplayReport replay_case_c5(const DicksonSpec& spec, HitSolver& solver) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.solver = &solver;
    t.report.case_id = "C5";
    t.report.params = spec.str();
    if (spec.nvars_base != 3 || spec.a % 2 != 1 || spec.exps[0] % 2 != 1 ||
        spec.exps[1] % 2 != 1 || spec.exps[2] % 2 != 1)
        throw std::invalid_argument("C5 needs n=3, a and all n_i odd");

    const Polynomial v = v_poly(4);
    auto lowered = spec.exps;
    lowered[0] -= 1;
    const Polynomial factor = v.pow(spec.a - 1) * sq(7, v);
    if (!t.exact("A = V^{a-1}(Sq^7 V) Q0^{n0-1} Q1^{n1} Q2^{n2}", a_form(spec),
                 factor * detail::q_product(3, lowered, 4)))
        return t.finish(sw);
    for (std::uint64_t i = 1; i <= 4; ++i)
        if (!t.exact("chi(Sq^" + std::to_string(i) + ")(V^{a-1} Sq^7 V) = 0",
                     chi_sq(i, factor), Polynomial::zero(4)))
            return t.finish(sw);
    t.max_sq = 4;
    t.member("Q0^{n0-1} Q1^{n1} Q2^{n2} in image of Sq^1..Sq^4",
             detail::q_product(3, lowered, 3));
    return t.finish(sw);
}

/// C6 (n = 3, n_0 odd, a = 2^nu b even): V^a = Sq^{4a} Sq^{2a} ... Sq^{8b} V^b.
inline ReplayReport replay_case_c6(const DicksonSpec& spec) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.report.case_id = "C6";
    t.report.params = spec.str();
    if (spec.a == 0 || spec.a % 2 != 0)
        throw std::invalid_argument("C6 needs a even and positive");
    std::uint64_t nu = std::countr_zero(spec.a);
    std::uint64_t b = spec.a >> nu;
    OperatorWord word;
    for (std::uint64_t k = nu; k-- > 0;)
        word.factors.push_back({FactorKind::Sq, 8 * b << k});
    t.note("nu=" + std::to_string(nu) + ", b=" + std::to_string(b));
    const Polynomial v = v_poly(4);
    t.exact("V^a = Sq^{4a}...Sq^{8b} V^b", v.pow(spec.a), apply_word(word, v.pow(b)));
    return t.finish(sw);
}

/// C7 (n >= 4): the eq.(2) factorization through Sq^{2^n-4} Q_{n,1}, the
/// symbolic re-expansion of Q_{n,1} Sq^{2^{n-1}}...Sq^8 chi(Sq^4){...} with
/// the (k_1, k_2) parity classification, and an attempt at confirming
/// hitness of A directly (expected to hit the resource ceiling at n = 4).
inline ReplayReport replay_case_c7(const DicksonSpec& spec, HitSolver& solver,
                                   bool cross_check = true, bool try_direct = true) {
    detail::Stopwatch sw;
    detail::StepTracker t;
    t.solver = &solver;
    t.report.case_id = "C7";
    t.report.params = spec.str();
    const std::size_t n = spec.nvars_base;
    if (n < 4 || spec.a == 0 || spec.exps[1] % 2 != 1 || spec.exps[2] % 2 != 1)
        throw std::invalid_argument("C7 needs n >= 4, a >= 1, n_1 and n_2 odd");
    const std::uint64_t big = (std::uint64_t(1) << n) - 4;

    // Sq^{2^n-4} Q_{n,1} = Q_{n,1} Q_{n,2}
    const Polynomial q1 = dickson_q(n, 1);
    if (!t.exact("Sq^{2^n-4} Q_{n,1} = Q_{n,1} Q_{n,2}", sq(big, q1),
                 q1 * dickson_q(n, 2)))
        return t.finish(sw);

    // eq (2): A = V^a (Sq^{2^n-4} Q_{n,1}) Q0^{n0} Q1^{n1-1} Q2^{n2-1} ...
    auto lowered = spec.exps;
    lowered[1] -= 1;
    lowered[2] -= 1;
    if (!t.exact("A = V^a (Sq^{2^n-4} Q1) prod Q^{lowered}", a_form(spec),
                 v_poly(n + 1).pow(spec.a) * sq(big, q1).embedded(n + 1) *
                     detail::q_product(n, lowered, n + 1)))
        return t.finish(sw);

    // symbolic expansion of Q1 * Sq^{2^{n-1}}...Sq^8 chi(Sq^4){V^a prod Q^{lowered}}
    VQAlgebra vq(n);
    VQAlgebra::Elem e = vq.single(vq.term(spec.a, lowered));
    e = vq.chi_sq(4, e);
    for (std::uint64_t i = 8; i <= (std::uint64_t(1) << (n - 1)); i <<= 1)
        e = vq.sq(i, e);
    if (cross_check) {
        // the tables drive the symbolic route; recompute the same element
        // directly on polynomials and compare
        Polynomial direct = v_poly(n + 1).pow(spec.a) * detail::q_product(n, lowered, n + 1);
        direct = chi_sq(4, direct);
        for (std::uint64_t i = 8; i <= (std::uint64_t(1) << (n - 1)); i <<= 1)
            direct = sq(i, direct);
        if (!t.exact("symbolic expansion matches direct computation",
                     vq.to_polynomial(e), direct))
            return t.finish(sw);
    }
    std::vector<std::uint64_t> q1exp(n, 0);
    q1exp[1] = 1;
    e = VQAlgebra::mul(e, vq.single(vq.term(0, q1exp)));
    std::size_t covered_c1 = 0, covered_c2 = 0, recurse_c7 = 0;
    for (const auto& term : e) {
        if (term.k[1] % 2 == 0)
            ++covered_c1; // n_1 even: case C1
        else if (term.k[2] % 2 == 0)
            ++covered_c2; // n_1 odd, n_2 even: case C2
        else
            ++recurse_c7; // both odd: feed back through eq (2)
    }
    t.note("expansion terms: " + std::to_string(e.size()) + " (C1-covered " +
           std::to_string(covered_c1) + ", C2-covered " + std::to_string(covered_c2) +
           ", C7-recursion " + std::to_string(recurse_c7) + ")");
    t.note("termination of the recursion is empirical coverage, not replayed");

    if (try_direct) {
        // independent confirmation; at n = 4 the component is past the
        // default ceilings and that is reported, not failed
        try {
            auto r = solver.is_hit(a_form(spec));
            if (r.hit && HitSolver::verify_certificate(a_form(spec), r.certificate))
                t.note("is_hit(A): hit, certificate verified");
            else {
                t.failed = true;
                t.report.detail += "is_hit(A): not hit; ";
                t.report.difference = a_form(spec);
            }
        } catch (const ResourceLimitError& e2) {
            t.note(std::string("is_hit(A): resource ceiling (") + e2.what() + ")");
        }
    }
    return t.finish(sw);
}

// ---------------------------------------------------------------------------
// The Theorem 1.1 scan.
// ---------------------------------------------------------------------------

struct ScanDegreeEntry {
    std::uint64_t degree = 0;
    std::size_t spec_count = 0;
    std::size_t columns = 0;
    std::size_t rank = 0;
    std::size_t hit = 0;
    std::size_t not_hit = 0;
    std::vector<std::string> not_hit_specs;
    bool ceiling = false;
    std::string ceiling_msg;
    double timing_ms = 0.0;
};

struct ScanReport {
    std::size_t n = 0;
    std::uint64_t d_max = 0;
    std::vector<ScanDegreeEntry> degrees;
    std::size_t total_specs = 0;
    std::size_t total_hit = 0;
    bool all_hit = false;
    bool any_ceiling = false;
    double timing_ms = 0.0;
};

/// For every D_n monomial of positive degree <= d_max, run is_hit and
/// verify the emitted certificate. Ceilings on individual degrees are
/// recorded and the scan continues.
inline ScanReport main_theorem_scan(std::size_t n, std::uint64_t d_max,
                                    HitSolver& solver) {
    detail::Stopwatch total;
    ScanReport report;
    report.n = n;
    report.d_max = d_max;
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        auto specs = enumerate_dickson_monomials(n, d);
        if (specs.empty()) continue;
        detail::Stopwatch sw;
        ScanDegreeEntry entry;
        entry.degree = d;
        entry.spec_count = specs.size();
        report.total_specs += specs.size();
        try {
            const auto& basis = solver.hit_space_basis(n, d);
            entry.columns = basis.columns().size();
            entry.rank = basis.rank();
            for (const auto& s : specs) {
                Polynomial A = a_form(s);
                auto r = basis.query(A);
                if (r.hit && HitSolver::verify_certificate(A, r.certificate)) {
                    ++entry.hit;
                } else {
                    ++entry.not_hit;
                    entry.not_hit_specs.push_back(s.str());
                }
            }
        } catch (const ResourceLimitError& e) {
            entry.ceiling = true;
            entry.ceiling_msg = e.what();
            report.any_ceiling = true;
        }
        entry.timing_ms = sw.ms();
        report.total_hit += entry.hit;
        report.degrees.push_back(std::move(entry));
    }
    report.all_hit = !report.any_ceiling && report.total_hit == report.total_specs;
    report.timing_ms = total.ms();
    return report;
}

// ---------------------------------------------------------------------------
// Suites (deterministic aggregations used by the CLI and acceptance tests).
// ---------------------------------------------------------------------------

namespace detail {

inline Polynomial random_homogeneous(std::mt19937_64& rng, std::size_t nvars,
                                     std::uint64_t deg) {
    GradedBasis b(nvars, deg);
    std::vector<Monomial> ms;
    for (const auto& m : b.monomials())
        if (rng() & 1) ms.push_back(m);
    return Polynomial(nvars, std::move(ms));
}

} // namespace detail

inline std::vector<ReplayReport> suite_sq_tables() {
    std::vector<ReplayReport> out;
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t i = 0; i <= (std::uint64_t(1) << (n - 1)); ++i)
            out.push_back(check_sq_on_V(n, i));
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t s = 0; s < n; ++s)
            for (std::uint64_t i = 0;
                 i <= (std::uint64_t(1) << n) - (std::uint64_t(1) << s); ++i)
                out.push_back(check_sq_on_Q(n, s, i));
    return out;
}

inline std::vector<ReplayReport> suite_v_identity() {
    std::vector<ReplayReport> out;
    for (std::size_t n = 1; n <= 4; ++n) out.push_back(check_V_identity(n));
    return out;
}

inline std::vector<ReplayReport> suite_dickson_oracle() {
    std::vector<ReplayReport> out;
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t s = 0; s <= n; ++s) {
            detail::Stopwatch sw;
            out.push_back(detail::compare_exact(
                "dickson-oracle", "n=" + std::to_string(n) + ", s=" + std::to_string(s),
                dickson_q(n, s), dickson_q_oracle(n, s), sw));
        }
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            detail::Stopwatch sw;
            Polynomial rhs = v_poly(n + 1) * dickson_q(n, k).embedded(n + 1);
            if (k > 0) rhs = rhs + dickson_q(n, k - 1).embedded(n + 1).squared();
            out.push_back(detail::compare_exact(
                "dickson-recursion", "n=" + std::to_string(n) + ", k=" + std::to_string(k),
                dickson_q(n + 1, k), rhs, sw));
        }
    return out;
}

inline std::vector<ReplayReport> suite_antipode(std::uint64_t seed, std::size_t samples = 50) {
    std::mt19937_64 rng(seed);
    std::vector<ReplayReport> out;
    for (std::size_t trial = 0; trial < samples; ++trial) {
        std::size_t nvars = 1 + rng() % 3;
        std::uint64_t deg = 1 + rng() % 8;
        Polynomial f = detail::random_homogeneous(rng, nvars, deg);
        detail::Stopwatch sw;
        ReplayReport r;
        r.case_id = "antipode";
        r.params = "sample=" + std::to_string(trial) + ", nvars=" + std::to_string(nvars) +
                   ", deg=" + std::to_string(deg);
        r.status = ReplayStatus::ExactEqual;
        for (std::uint64_t k = 1; k <= 10; ++k) {
            Polynomial acc = Polynomial::zero(nvars);
            for (std::uint64_t i = 0; i <= k; ++i) acc = acc + sq(i, chi_sq(k - i, f));
            if (!acc.is_zero()) {
                r.status = ReplayStatus::Failed;
                r.difference = acc;
                r.detail = "nonzero at k=" + std::to_string(k) + ", f=" + f.str();
                break;
            }
        }
        r.timing_ms = sw.ms();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReplayReport> suite_chi_trick(std::uint64_t seed, HitSolver& solver,
                                                 std::size_t samples = 25) {
    std::mt19937_64 rng(seed);
    std::vector<ReplayReport> out;
    std::size_t trial = 0;
    while (out.size() < samples) {
        std::size_t nvars = 1 + rng() % 3;
        std::uint64_t du = rng() % 5, k = 1 + rng() % 4, dv = 1 + rng() % 5;
        if (du + k + dv > 14) continue;
        Polynomial u = du == 0 ? Polynomial::one(nvars)
                               : detail::random_homogeneous(rng, nvars, du);
        Polynomial v = detail::random_homogeneous(rng, nvars, dv);
        detail::Stopwatch sw;
        ReplayReport r;
        r.case_id = "chi-trick";
        r.params = "sample=" + std::to_string(trial++) + ", nvars=" + std::to_string(nvars) +
                   ", deg(u)=" + std::to_string(du) + ", k=" + std::to_string(k) +
                   ", deg(v)=" + std::to_string(dv);
        Polynomial residue = chi_trick_residue(u, k, v);
        if (residue.is_zero()) {
            r.status = ReplayStatus::ExactEqual;
            r.detail = "residue vanishes";
        } else {
            auto hit = solver.is_hit(residue);
            if (hit.hit && HitSolver::verify_certificate(residue, hit.certificate)) {
                r.status = ReplayStatus::EqualModuloHit;
                r.detail = "residue hit (certificate verified)";
            } else {
                r.status = ReplayStatus::Failed;
                r.difference = residue;
            }
        }
        r.timing_ms = sw.ms();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReplayReport> suite_davis(HitSolver& solver) {
    std::vector<ReplayReport> out;
    // n = 4: all monomial inputs of degree <= 8 in <= 2 variables
    for (std::size_t nvars = 1; nvars <= 2; ++nvars)
        for (std::uint64_t d = 0; d <= 8; ++d) {
            GradedBasis basis(nvars, d);
            for (const auto& m : basis.monomials()) {
                if (nvars == 2 && m.exp(1) == 0) continue; // already seen in 1 var
                out.push_back(check_davis_composite(4, Polynomial::monomial(m), solver));
            }
        }
    // a few n = 5 samples at small degree
    for (std::uint64_t d = 4; d <= 6; ++d) {
        GradedBasis basis(2, d);
        out.push_back(check_davis_composite(5, Polynomial::monomial(basis.monomials().front()),
                                            solver));
    }
    return out;
}

inline std::vector<ReplayReport> suite_sq_vanishing() {
    std::vector<ReplayReport> out;
    for (std::uint64_t a = 1; a <= 6; ++a)
        for (std::uint64_t i = 1; i <= 4; ++i)
            out.push_back(check_sq_vanishing_on_V4_powers(a, i));
    return out;
}

/// The acceptance-criterion grid: a <= 2, n_i <= 2, n = 3 for C1..C6 and
/// n = 4 for C7, filtered by each case's parity preconditions.
inline std::vector<ReplayReport> suite_cases(HitSolver& solver) {
    std::vector<ReplayReport> out;
    for (std::uint64_t a = 1; a <= 2; ++a)
        for (std::uint64_t n0 = 0; n0 <= 2; ++n0)
            for (std::uint64_t n1 = 0; n1 <= 2; ++n1)
                for (std::uint64_t n2 = 0; n2 <= 2; ++n2) {
                    DicksonSpec spec{3, a, {n0, n1, n2}};
                    if (n1 % 2 == 0) out.push_back(replay_case_c1(spec));
                    if (n1 % 2 == 1 && n2 % 2 == 0) out.push_back(replay_case_c2(spec));
                    if (n1 % 2 == 1 && n2 % 2 == 1) {
                        if (n0 % 2 == 0 && a % 2 == 1)
                            out.push_back(replay_case_c3(spec, solver));
                        if (n0 % 2 == 0 && a % 2 == 0)
                            out.push_back(replay_case_c4(spec, solver));
                        if (n0 % 2 == 1 && a % 2 == 1)
                            out.push_back(replay_case_c5(spec, solver));
                        if (n0 % 2 == 1 && a % 2 == 0)
                            out.push_back(replay_case_c6(spec));
                    }
                }
    for (std::uint64_t a = 1; a <= 2; ++a)
        for (std::uint64_t n0 = 0; n0 <= 2; ++n0)
            for (std::uint64_t n3 = 0; n3 <= 2; ++n3)
                out.push_back(replay_case_c7(DicksonSpec{4, a, {n0, 1, 1, n3}}, solver,
                                             /*cross_check=*/a + n0 + n3 <= 2,
                                             /*try_direct=*/true));
    return out;
}

} // namespace hitpoly
