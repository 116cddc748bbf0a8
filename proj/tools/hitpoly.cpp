// hitpoly: command-line front end for the library.
//
// Subcommands: eval, hit, dickson, verify, scan, cache. Every command can
// emit a stable JSON record {command, inputs, status, data, timing}; the
// timing field is null unless --timing is given, so that fixed seeds and
// inputs produce byte-identical output.
//
// Exit codes: 0 success / property holds, 1 property violation found,
// 2 usage error, 3 resource ceiling exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hitpoly/parser.hpp"
#include "hitpoly/verify.hpp"

using json = nlohmann::ordered_json;
using namespace hitpoly;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240901;

struct Options {
    std::size_t vars = 1;
    bool json_out = false;
    bool timing = false;
    std::uint64_t seed = kDefaultSeed;
    SolverLimits limits;
    std::string cache_dir;
};

std::filesystem::path resolve_cache_dir(const Options& opt) {
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    if (const char* env = std::getenv("HITPOLY_CACHE_DIR"); env && *env) return env;
    return ".hitpoly-cache";
}

json make_record(const std::string& command, json inputs, const std::string& status,
                 json data, const Options& opt, double ms) {
    json rec;
    rec["command"] = command;
    rec["inputs"] = std::move(inputs);
    rec["status"] = status;
    rec["data"] = std::move(data);
    if (opt.timing)
        rec["timing"] = ms;
    else
        rec["timing"] = nullptr;
    return rec;
}

json report_to_json(const ReplayReport& r, const Options& opt) {
    json j;
    j["case"] = r.case_id;
    j["params"] = r.params;
    j["status"] = to_string(r.status);
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.difference) j["difference"] = to_expression(*r.difference);
    if (opt.timing)
        j["timing"] = r.timing_ms;
    else
        j["timing"] = nullptr;
    return j;
}

json certificate_to_json(const HitCertificate& cert) {
    json arr = json::array();
    for (const auto& [i, u] : cert.terms) {
        json t;
        t["i"] = i;
        t["u"] = to_expression(u);
        arr.push_back(std::move(t));
    }
    return arr;
}

json scan_to_json(const ScanReport& r, const Options& opt) {
    json j;
    j["n"] = r.n;
    j["d_max"] = r.d_max;
    j["total_specs"] = r.total_specs;
    j["total_hit"] = r.total_hit;
    j["all_hit"] = r.all_hit;
    j["any_ceiling"] = r.any_ceiling;
    json degrees = json::array();
    for (const auto& e : r.degrees) {
        json d;
        d["degree"] = e.degree;
        d["specs"] = e.spec_count;
        d["columns"] = e.columns;
        d["rank"] = e.rank;
        d["hit"] = e.hit;
        d["not_hit"] = e.not_hit;
        if (!e.not_hit_specs.empty()) d["not_hit_specs"] = e.not_hit_specs;
        if (e.ceiling) d["ceiling"] = e.ceiling_msg;
        if (opt.timing)
            d["timing"] = e.timing_ms;
        else
            d["timing"] = nullptr;
        degrees.push_back(std::move(d));
    }
    j["degrees"] = std::move(degrees);
    return j;
}

void emit(const json& rec) { std::cout << rec.dump() << "\n"; }

int run_eval(const Options& opt, const std::string& expr) {
    Polynomial p = eval(expr, opt.vars);
    if (opt.json_out) {
        json data;
        data["polynomial"] = to_expression(p);
        data["degree"] = p.is_zero() ? json(nullptr) : json(p.degree());
        data["terms"] = p.support().size();
        emit(make_record("eval", {{"expr", expr}, {"vars", opt.vars}}, "ok",
                         std::move(data), opt, 0.0));
    } else {
        std::cout << p.str() << "\n";
    }
    return 0;
}

int run_hit(const Options& opt, const std::string& expr, bool want_cert,
            bool want_witness, std::uint64_t max_sq) {
    Polynomial p = eval(expr, opt.vars);
    HitSolver solver(opt.limits, resolve_cache_dir(opt));
    auto r = solver.is_hit(p, max_sq);
    json data;
    data["answer"] = r.hit ? "Hit" : "NotHit";
    if (r.hit && want_cert) {
        if (!HitSolver::verify_certificate(p, r.certificate))
            throw std::runtime_error("internal error: certificate failed verification");
        data["certificate"] = certificate_to_json(r.certificate);
    }
    if (!r.hit && want_witness && r.witness)
        data["witness"] = to_expression(r.witness->residual_poly);
    if (opt.json_out) {
        json inputs = {{"expr", expr}, {"vars", opt.vars}};
        if (max_sq) inputs["max_sq"] = max_sq;
        emit(make_record("hit", std::move(inputs), "ok", std::move(data), opt, 0.0));
    } else {
        std::cout << data["answer"].get<std::string>() << "\n";
        if (data.contains("certificate"))
            for (const auto& t : data["certificate"])
                std::cout << "  Sq(" << t["i"].get<std::uint64_t>() << "){"
                          << t["u"].get<std::string>() << "}\n";
        if (data.contains("witness"))
            std::cout << "  witness: " << data["witness"].get<std::string>() << "\n";
    }
    return 0;
}

int run_dickson(const Options& opt, std::size_t n, std::uint64_t degree,
                bool has_degree, bool list) {
    json data;
    if (has_degree) {
        auto specs = enumerate_dickson_monomials(n, degree);
        json arr = json::array();
        for (const auto& s : specs) {
            json e;
            e["spec"] = s.str();
            json exps = json::array();
            for (auto k : s.exps) exps.push_back(k);
            e["exps"] = std::move(exps);
            e["degree"] = s.degree();
            arr.push_back(std::move(e));
        }
        data["monomials"] = std::move(arr);
        if (!opt.json_out) {
            for (const auto& s : specs) std::cout << s.str() << "\n";
            if (specs.empty()) std::cout << "(none in degree " << degree << ")\n";
        }
    } else {
        (void)list; // default behavior is the generator list
        json arr = json::array();
        for (std::size_t s = 0; s < n; ++s) {
            json e;
            e["name"] = "Q(" + std::to_string(n) + "," + std::to_string(s) + ")";
            e["degree"] = (std::uint64_t(1) << n) - (std::uint64_t(1) << s);
            e["polynomial"] = to_expression(dickson_q(n, s));
            arr.push_back(std::move(e));
        }
        data["generators"] = std::move(arr);
        if (!opt.json_out)
            for (const auto& e : data["generators"])
                std::cout << e["name"].get<std::string>() << " (degree "
                          << e["degree"].get<std::uint64_t>()
                          << ") = " << e["polynomial"].get<std::string>() << "\n";
    }
    if (opt.json_out) {
        json inputs = {{"n", n}};
        if (has_degree) inputs["degree"] = degree;
        emit(make_record("dickson", std::move(inputs), "ok", std::move(data), opt, 0.0));
    }
    return 0;
}

int run_verify(const Options& opt, const std::string& suite) {
    HitSolver solver(opt.limits, resolve_cache_dir(opt));
    std::vector<ReplayReport> reports;
    auto append = [&](std::vector<ReplayReport> rs) {
        for (auto& r : rs) reports.push_back(std::move(r));
    };
    if (suite == "sq-tables" || suite == "all") append(suite_sq_tables());
    if (suite == "v-identity" || suite == "all") append(suite_v_identity());
    if (suite == "dickson-oracle" || suite == "all") append(suite_dickson_oracle());
    if (suite == "antipode" || suite == "all") append(suite_antipode(opt.seed));
    if (suite == "chi-trick" || suite == "all") append(suite_chi_trick(opt.seed, solver));
    if (suite == "davis" || suite == "all") append(suite_davis(solver));
    if (suite == "cases" || suite == "all") {
        append(suite_sq_vanishing());
        append(suite_cases(solver));
    }
    if (reports.empty()) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    std::size_t failed = 0;
    for (const auto& r : reports)
        if (!r.ok()) ++failed;
    if (opt.json_out) {
        json data;
        data["checks"] = json::array();
        for (const auto& r : reports) data["checks"].push_back(report_to_json(r, opt));
        data["total"] = reports.size();
        data["failed"] = failed;
        emit(make_record("verify", {{"suite", suite}, {"seed", opt.seed}},
                         failed ? "violation" : "ok", std::move(data), opt, 0.0));
    } else {
        for (const auto& r : reports)
            std::cout << r.case_id << " " << r.params << ": " << to_string(r.status)
                      << (r.detail.empty() ? "" : " [" + r.detail + "]") << "\n";
        std::cout << reports.size() << " checks, " << failed << " failed\n";
    }
    return failed ? 1 : 0;
}

int run_scan(const Options& opt, std::size_t n, std::uint64_t dmax) {
    HitSolver solver(opt.limits, resolve_cache_dir(opt));
    ScanReport report = main_theorem_scan(n, dmax, solver);
    if (opt.json_out) {
        emit(make_record("scan", {{"n", n}, {"dmax", dmax}},
                         report.all_hit ? "ok" : "violation", scan_to_json(report, opt),
                         opt, report.timing_ms));
    } else {
        for (const auto& e : report.degrees) {
            std::cout << "degree " << e.degree << ": " << e.hit << "/" << e.spec_count
                      << " hit (columns " << e.columns << ", rank " << e.rank << ")";
            for (const auto& s : e.not_hit_specs) std::cout << " NOT-HIT " << s;
            if (e.ceiling) std::cout << " CEILING " << e.ceiling_msg;
            std::cout << "\n";
        }
        std::cout << (report.all_hit ? "all hit" : "NOT all hit") << " ("
                  << report.total_hit << "/" << report.total_specs << ")\n";
    }
    return report.all_hit ? 0 : 1;
}

int run_cache(const Options& opt, const std::string& action) {
    auto dir = resolve_cache_dir(opt);
    if (action == "info") {
        json files = json::array();
        std::uintmax_t total = 0;
        if (std::filesystem::exists(dir)) {
            std::vector<std::filesystem::directory_entry> entries(
                std::filesystem::directory_iterator(dir),
                std::filesystem::directory_iterator{});
            std::sort(entries.begin(), entries.end());
            for (const auto& e : entries) {
                if (!e.is_regular_file() || e.path().extension() != ".hpb") continue;
                json f;
                f["file"] = e.path().filename().string();
                f["bytes"] = e.file_size();
                total += e.file_size();
                files.push_back(std::move(f));
            }
        }
        if (opt.json_out) {
            json data;
            data["dir"] = dir.string();
            data["files"] = std::move(files);
            data["total_bytes"] = total;
            emit(make_record("cache", {{"action", "info"}}, "ok", std::move(data), opt,
                             0.0));
        } else {
            std::cout << "cache dir: " << dir.string() << "\n";
            for (const auto& f : files)
                std::cout << "  " << f["file"].get<std::string>() << " ("
                          << f["bytes"].get<std::uintmax_t>() << " bytes)\n";
            std::cout << "total: " << total << " bytes\n";
        }
        return 0;
    }
    // clear
    std::size_t removed = 0;
    if (std::filesystem::exists(dir))
        for (const auto& e : std::filesystem::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".hpb") {
                std::filesystem::remove(e.path());
                ++removed;
            }
    if (opt.json_out) {
        emit(make_record("cache", {{"action", "clear"}}, "ok", {{"removed", removed}},
                         opt, 0.0));
    } else {
        std::cout << "removed " << removed << " cache files\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steenrod hit-problem calculator for F2 polynomial algebras"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--vars", opt.vars, "ambient variable count (explicit, never inferred)")
        ->check(CLI::Range(std::size_t(1), std::size_t(16)));
    app.add_flag("--json", opt.json_out, "emit one JSON record on stdout");
    app.add_flag("--timing", opt.timing, "include real timings in JSON (breaks byte-stability)");
    app.add_option("--seed", opt.seed, "seed for the randomized suites");
    app.add_option("--limit-degree", opt.limits.max_degree, "max degree the solver accepts");
    app.add_option("--limit-columns", opt.limits.max_columns, "max basis columns per component");
    app.add_option("--limit-generators", opt.limits.max_generators, "max generators per component");
    app.add_option("--cache-dir", opt.cache_dir,
                   "basis cache directory (or HITPOLY_CACHE_DIR; default .hitpoly-cache)");

    std::string expr, suite, cache_action = "info";
    bool want_cert = false, want_witness = false, dickson_list = false;
    std::uint64_t max_sq = 0, dmax = 0, dickson_degree = 0;
    std::size_t n = 0;

    auto* c_eval = app.add_subcommand("eval", "parse and evaluate an expression");
    c_eval->add_option("expr", expr, "expression")->required();

    auto* c_hit = app.add_subcommand("hit", "decide hitness of an expression");
    c_hit->add_option("expr", expr, "expression")->required();
    c_hit->add_flag("--certificate", want_cert, "print a verified certificate when hit");
    c_hit->add_flag("--witness", want_witness, "print the reduced residual when not hit");
    c_hit->add_option("--max-sq", max_sq, "restrict generators to Sq^1..Sq^K (0 = all)");

    auto* c_dickson = app.add_subcommand("dickson", "Dickson invariants");
    c_dickson->add_option("--n", n, "number of variables")->required()
        ->check(CLI::Range(std::size_t(1), std::size_t(8)));
    auto* deg_opt = c_dickson->add_option("--degree", dickson_degree,
                                          "list Dickson monomials of this degree");
    c_dickson->add_flag("--list", dickson_list, "list the generators (default)");

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("suite", suite, "suite name")->required()
        ->check(CLI::IsMember({"sq-tables", "v-identity", "dickson-oracle", "antipode",
                               "chi-trick", "davis", "cases", "all"}));

    auto* c_scan = app.add_subcommand("scan", "hit-test every Dickson monomial up to a degree");
    c_scan->add_option("--n", n, "number of variables")->required()
        ->check(CLI::Range(std::size_t(1), std::size_t(8)));
    c_scan->add_option("--dmax", dmax, "maximum degree")->required();

    auto* c_cache = app.add_subcommand("cache", "inspect or clear the basis cache");
    c_cache->add_option("action", cache_action, "info or clear")
        ->check(CLI::IsMember({"info", "clear"}));

    // global flags may appear before or after the subcommand
    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // --help exits 0; any parse failure is usage error
    }

    try {
        if (c_eval->parsed()) return run_eval(opt, expr);
        if (c_hit->parsed()) return run_hit(opt, expr, want_cert, want_witness, max_sq);
        if (c_dickson->parsed())
            return run_dickson(opt, n, dickson_degree, deg_opt->count() > 0, dickson_list);
        if (c_verify->parsed()) return run_verify(opt, suite);
        if (c_scan->parsed()) return run_scan(opt, n, dmax);
        if (c_cache->parsed()) return run_cache(opt, cache_action);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource ceiling: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const EvalError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
