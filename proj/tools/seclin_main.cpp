// seclin: verify, secure, simulate and audit multi-user linearly-separable
// distributed computing schemes given as F = D * E factorizations.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "seclin/audit.hpp"
#include "seclin/factorize.hpp"
#include "seclin/secrecy.hpp"
#include "seclin/simulate.hpp"

using nlohmann::json;
using nlohmann::ordered_json;
using namespace seclin;

namespace {

// Fixed 12-significant-digit float formatting keeps report files
// byte-identical across runs.
double round12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw StructuralError("invalid JSON in " + path + ": " + e.what());
    }
    return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write " + path);
    out << text;
}

void write_json_file(const std::string& path, const ordered_json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SECLIN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw StructuralError("SECLIN_SEED must be an unsigned integer");
        }
    }
    return 0;
}

std::vector<std::size_t> one_based(const IndexSet& s) {
    std::vector<std::size_t> v;
    v.reserve(s.size());
    for (std::size_t i : s) v.push_back(i + 1);
    return v;
}

std::vector<std::size_t> parse_users(const std::string& selector, std::size_t users) {
    if (selector == "all") {
        std::vector<std::size_t> all(users);
        for (std::size_t k = 0; k < users; ++k) all[k] = k;
        return all;
    }
    std::size_t k = 0;
    try {
        k = std::stoull(selector);
    } catch (const std::exception&) {
        throw StructuralError("user selector must be a 1-based index or \"all\"");
    }
    if (k < 1 || k > users) throw StructuralError("user index must be in [1, K] or \"all\"");
    return {k - 1};
}

ordered_json scheme_summary(const Scheme& s) {
    ordered_json j;
    j["field"] = s.field.name();
    j["N"] = s.servers;
    j["K"] = s.users;
    j["L"] = s.messages;
    return j;
}

ordered_json costs_to_json(const CostReport& c) {
    ordered_json j;
    j["delta"] = c.comm_cost.get_str();
    j["delta_value"] = round12(c.comm_cost.get_d());
    j["gamma"] = c.comp_cost.get_str();
    j["gamma_value"] = round12(c.comp_cost.get_d());
    j["per_user_access"] = c.per_user_access;
    j["per_message_replication"] = c.per_message_replication;
    return j;
}

void print_secrecy_table(const SecrecyReport& rep, const CostReport& cost) {
    std::printf("costs: δ = %s (%s), γ = %s (%s)\n", cost.comm_cost.get_str().c_str(),
                fmt12(cost.comm_cost.get_d()).c_str(), cost.comp_cost.get_str().c_str(),
                fmt12(cost.comp_cost.get_d()).c_str());
    std::printf("user  w_H  reduced_rank  access_ok  %s\n",
                rep.has_randomness ? "randomness_rank" : "");
    for (const UserSecrecy& u : rep.per_user) {
        std::printf("%4zu  %3zu  %5zu/%zu %s   %-9s", u.user + 1, u.access_count, u.reduced_rank,
                    rep.per_user.size() - 1, u.reduced_rank_ok ? "ok  " : "FAIL",
                    u.access_bound_ok ? "ok" : "FAIL");
        if (rep.has_randomness) {
            std::printf("  %zu/%zu %s", u.randomness_rank, u.randomness_required,
                        u.randomness_status == RandomnessRankStatus::ok ? "ok" : "FAIL");
        }
        if (!u.nondegenerate) std::printf("  [degenerate encoding rows]");
        std::printf("\n");
    }
    std::printf("global: δ = %s <= %s: %s\n", rep.cost_bound.comm_cost.get_str().c_str(),
                rep.cost_bound.limit.get_str().c_str(), rep.cost_bound.ok ? "ok" : "FAIL");
    std::printf("verdict: %s\n", rep.all_ok() ? "PASS" : "FAIL");
}

// ---- check ----------------------------------------------------------------

int cmd_check(const std::string& file, bool as_json) {
    const SecuredScheme ss = load_secured_file(file);
    const CostReport cost = costs(ss.base);
    const SecrecyReport rep =
        ss.randomness_count > 0 ? full_report(ss) : full_report(ss.base);
    if (as_json) {
        ordered_json doc;
        doc["scheme"] = scheme_summary(ss.base);
        doc["costs"] = costs_to_json(cost);
        doc["secrecy"] = secrecy_report_to_json(rep);
        std::cout << doc.dump(2) << "\n";
    } else {
        const Scheme& s = ss.base;
        std::printf("scheme: %s  N=%zu K=%zu L=%zu%s\n", s.field.name().c_str(), s.servers,
                    s.users, s.messages, ss.randomness_count > 0 ? "  (secured)" : "");
        print_secrecy_table(rep, cost);
    }
    return rep.all_ok() ? 0 : 3;
}

// ---- factorize ------------------------------------------------------------

struct FactorizeOpts {
    std::string input;
    std::string form = "systematic";
    std::string parity_file;
    std::size_t servers = 0;
    bool decentralized = false;
    std::string output;
    bool as_json = false;
};

std::pair<FieldSpec, Matrix> load_requests(const std::string& path) {
    const json doc = read_json_file(path);
    if (!doc.is_object() || !doc.contains("field") || !doc.contains("F")) {
        throw StructuralError("requests file needs \"field\" and \"F\"");
    }
    const FieldSpec field = FieldSpec::parse(doc.at("field").get<std::string>());
    return {field, matrix_from_json(field, doc.at("F"), "F")};
}

int cmd_factorize(const FactorizeOpts& o) {
    const json doc = read_json_file(o.input);
    const auto [field, requests] = load_requests(o.input);
    Scheme result = [&] {
        if (o.form == "identity") {
            return identity_scheme(requests, o.decentralized ? IdentityVariant::decentralized
                                                             : IdentityVariant::assigned_server);
        }
        if (o.form != "systematic") throw StructuralError("unknown form \"" + o.form + "\"");
        if (!o.parity_file.empty()) {
            const json pdoc = read_json_file(o.parity_file);
            const json& pmat = pdoc.is_object() && pdoc.contains("P") ? pdoc.at("P") : pdoc;
            return systematic_factorize(requests, matrix_from_json(field, pmat, "P"));
        }
        if (doc.contains("D") && doc.contains("E")) {
            return to_systematic(load_scheme(doc));
        }
        if (o.servers > requests.rows()) {
            // Default parity block: all ones. Every reduced decoder keeps an
            // identity block minus one column, so the rank criterion holds.
            Matrix parity(field, requests.rows(), o.servers - requests.rows());
            for (std::size_t i = 0; i < parity.rows(); ++i) {
                for (std::size_t j = 0; j < parity.cols(); ++j) parity.at(i, j) = field.one();
            }
            return systematic_factorize(requests, parity);
        }
        throw StructuralError("systematic form needs --P, --N > K, or an input scheme with D/E");
    }();

    const ordered_json out = scheme_to_json(result);
    if (!o.output.empty()) write_json_file(o.output, out);
    const CostReport cost = costs(result);
    const SecrecyReport rep = full_report(result);
    if (o.as_json) {
        ordered_json doc2;
        doc2["scheme"] = out;
        doc2["costs"] = costs_to_json(cost);
        doc2["secrecy"] = secrecy_report_to_json(rep);
        std::cout << doc2.dump(2) << "\n";
    } else {
        std::printf("factorized: %s  N=%zu K=%zu L=%zu -> %s\n", result.field.name().c_str(),
                    result.servers, result.users, result.messages,
                    o.output.empty() ? "(stdout only)" : o.output.c_str());
        print_secrecy_table(rep, cost);
        if (o.output.empty()) std::cout << out.dump(2) << "\n";
    }
    return 0;
}

// ---- secure ---------------------------------------------------------------

int cmd_secure(const std::string& file, const std::string& output, bool as_json) {
    const Scheme s = load_scheme_file(file);
    const SecuredScheme ss = secure(s);
    const ordered_json out = secured_to_json(ss);
    if (!output.empty()) write_json_file(output, out);
    const SecrecyReport rep = full_report(ss);
    if (as_json) {
        ordered_json doc;
        doc["secured"] = out;
        doc["warnings"] = ss.warnings;
        doc["secrecy"] = secrecy_report_to_json(rep);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("secured with %zu shared randomness symbol(s)%s%s\n", ss.randomness_count,
                    output.empty() ? "" : " -> ", output.c_str());
        for (const std::string& w : ss.warnings) std::printf("warning: %s\n", w.c_str());
        print_secrecy_table(rep, costs(s));
        if (output.empty()) std::cout << out.dump(2) << "\n";
    }
    return rep.all_ok() ? 0 : 3;
}

// ---- simulate ---------------------------------------------------------

struct SimulateOpts {
    std::string input;
    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    SimParams params;
    std::string csv;
    bool as_json = false;
};

ordered_json simulate_to_json(const BatchResult& batch, const SimParams& params,
                              std::size_t trials) {
    ordered_json doc;
    doc["trials"] = trials;
    doc["seed"] = params.seed;
    doc["sigma_w"] = round12(params.sigma_w);
    doc["sigma_c"] = round12(params.sigma_c);
    doc["tolerance"] = round12(params.tolerance);
    doc["per_user_success_rate"] = [&] {
        std::vector<double> v;
        for (double r : batch.success_rate) v.push_back(round12(r));
        return v;
    }();
    doc["max_abs_error"] = round12(batch.max_abs_error);
    bool all = true;
    for (double r : batch.success_rate) all = all && r == 1.0;
    doc["all_matched"] = all;
    return doc;
}

int cmd_simulate(const SimulateOpts& o) {
    const SecuredScheme ss = load_secured_file(o.input);
    SimParams params = o.params;
    params.seed = o.seed ? *o.seed : default_seed();
    const bool keep = !o.csv.empty();
    const BatchResult batch = run_batch(ss, params, o.trials, keep);
    if (keep) {
        std::string text = "trial,user,expected,recovered,match\n";
        for (std::size_t t = 0; t < batch.outcomes.size(); ++t) {
            const TrialOutcome& out = batch.outcomes[t];
            for (std::size_t k = 0; k < out.users.size(); ++k) {
                text += std::to_string(t) + "," + std::to_string(k + 1) + "," +
                        out.users[k].expected + "," + out.users[k].recovered + "," +
                        (out.users[k].match ? "1" : "0") + "\n";
            }
        }
        write_text_file(o.csv, text);
    }
    const ordered_json doc = simulate_to_json(batch, params, o.trials);
    if (o.as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("simulated %zu trial(s), seed %llu\n", o.trials,
                    static_cast<unsigned long long>(params.seed));
        for (std::size_t k = 0; k < batch.success_rate.size(); ++k) {
            std::printf("user %zu: success rate %s\n", k + 1,
                        fmt12(batch.success_rate[k]).c_str());
        }
        std::printf("max abs error: %s\n", fmt12(batch.max_abs_error).c_str());
    }
    return 0;
}

// ---- audits ---------------------------------------------------------------

struct AuditOpts {
    std::string input;
    std::string user = "all";
    std::uint64_t modulus = 0;
    std::uint64_t max_states = 100'000'000;
    double sigma_w = 1.0;
    double sigma_c = 1.0;
    double eps = 0.01;
    bool as_json = false;
};

SecuredScheme load_for_gf_audit(const AuditOpts& o) {
    SecuredScheme ss = load_secured_file(o.input);
    if (!ss.base.field.is_prime_field()) {
        if (o.modulus == 0) {
            throw StructuralError(
                "exhaustive audit needs a prime field; pass --modulus to reduce a real scheme");
        }
        ss = reduce_secured_mod(ss, o.modulus);
    }
    return ss;
}

int cmd_audit_exact(const AuditOpts& o) {
    const SecuredScheme ss = load_for_gf_audit(o);
    ordered_json doc;
    doc["field"] = ss.base.field.name();
    doc["x"] = ss.randomness_count;
    doc["units"] = "bits";
    ordered_json per_user = ordered_json::array();
    bool all_zero = true;
    for (std::size_t k : parse_users(o.user, ss.base.users)) {
        const GfLeakage leak = exact_leakage_gf(ss, k, o.max_states);
        ordered_json j;
        j["user"] = k + 1;
        j["w_H"] = ss.base.decoding.row_support(k).size();
        j["leakage_bits"] = round12(leak.bits);
        j["exactly_zero"] = leak.exactly_zero;
        j["visible_rank"] = leak.visible_rank;
        j["states"] = leak.states;
        all_zero = all_zero && leak.exactly_zero;
        per_user.push_back(std::move(j));
    }
    doc["per_user"] = std::move(per_user);
    doc["all_zero"] = all_zero;
    if (o.as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& j : doc["per_user"]) {
            std::printf("user %zu: leakage = %s bits%s (visible randomness rank %zu)\n",
                        j["user"].get<std::size_t>(), fmt12(j["leakage_bits"].get<double>()).c_str(),
                        j["exactly_zero"].get<bool>() ? " [exactly zero]" : "",
                        j["visible_rank"].get<std::size_t>());
        }
        std::printf("verdict: %s\n", all_zero ? "no leakage" : "LEAKAGE DETECTED");
    }
    return 0;
}

int cmd_audit_bound(const AuditOpts& o, bool with_exact) {
    const SecuredScheme ss = load_secured_file(o.input);
    ordered_json doc;
    doc["units"] = "nats";
    doc["sigma_w"] = round12(o.sigma_w);
    doc["sigma_c"] = round12(o.sigma_c);
    ordered_json per_user = ordered_json::array();
    for (std::size_t k : parse_users(o.user, ss.base.users)) {
        const RealBound b = leakage_bound_real(ss, k, o.sigma_w, o.sigma_c);
        ordered_json j;
        j["user"] = k + 1;
        j["w_H"] = b.access_count;
        j["S_k"] = one_based(b.rows);
        j["lambda_max_X"] = round12(b.lambda_max_signal);
        j["lambda_min_Y"] = round12(b.lambda_min_noise);
        j["M_k"] = round12(b.snr);
        j["bound_nats"] = round12(b.bound);
        if (with_exact) {
            j["exact_nats"] = round12(exact_leakage_gaussian(ss, k, o.sigma_w, o.sigma_c).nats);
        }
        per_user.push_back(std::move(j));
    }
    doc["per_user"] = std::move(per_user);
    if (o.as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& j : doc["per_user"]) {
            std::printf("user %zu: ", j["user"].get<std::size_t>());
            if (with_exact) std::printf("exact = %s nats, ", fmt12(j["exact_nats"].get<double>()).c_str());
            std::printf("bound = %s nats (M_k = %s)\n", fmt12(j["bound_nats"].get<double>()).c_str(),
                        fmt12(j["M_k"].get<double>()).c_str());
        }
    }
    return 0;
}

int cmd_epsilon(const AuditOpts& o) {
    const SecuredScheme ss = load_secured_file(o.input);
    ordered_json doc;
    doc["eps"] = round12(o.eps);
    doc["sigma_w"] = round12(o.sigma_w);
    ordered_json per_user = ordered_json::array();
    for (std::size_t k : parse_users(o.user, ss.base.users)) {
        const double sigma_c = epsilon_to_sigma(ss, k, o.sigma_w, o.eps);
        ordered_json j;
        j["user"] = k + 1;
        j["sigma_c"] = round12(sigma_c);
        if (sigma_c > 0) {
            j["bound_at_sigma_c"] = round12(leakage_bound_real(ss, k, o.sigma_w, sigma_c).bound);
        } else {
            j["bound_at_sigma_c"] = 0.0;
        }
        per_user.push_back(std::move(j));
    }
    doc["per_user"] = std::move(per_user);
    if (o.as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& j : doc["per_user"]) {
            std::printf("user %zu: sigma_c = %s\n", j["user"].get<std::size_t>(),
                        fmt12(j["sigma_c"].get<double>()).c_str());
        }
    }
    return 0;
}

// ---- pipeline ---------------------------------------------------------

struct PipelineOpts {
    std::string input;
    std::string outdir;
    FactorizeOpts fact;
    SimulateOpts sim;
    AuditOpts audit;
    bool with_eps = false;
    bool as_json = false;
};

int cmd_pipeline(const PipelineOpts& o) {
    namespace fs = std::filesystem;
    std::string stage = "setup";
    try {
        fs::create_directories(o.outdir);
        const auto path = [&](const char* name) { return (fs::path(o.outdir) / name).string(); };

        stage = "factorize";
        const json doc = read_json_file(o.input);
        Scheme s = [&]() -> Scheme {
            if (doc.contains("D") && doc.contains("E")) return load_scheme(doc);
            const auto [field, requests] = load_requests(o.input);
            if (o.fact.form == "identity") {
                return identity_scheme(requests, o.fact.decentralized
                                                     ? IdentityVariant::decentralized
                                                     : IdentityVariant::assigned_server);
            }
            if (!o.fact.parity_file.empty()) {
                const json pdoc = read_json_file(o.fact.parity_file);
                const json& pmat = pdoc.is_object() && pdoc.contains("P") ? pdoc.at("P") : pdoc;
                return systematic_factorize(requests, matrix_from_json(field, pmat, "P"));
            }
            if (o.fact.servers > requests.rows()) {
                Matrix parity(field, requests.rows(), o.fact.servers - requests.rows());
                for (std::size_t i = 0; i < parity.rows(); ++i) {
                    for (std::size_t j = 0; j < parity.cols(); ++j) parity.at(i, j) = field.one();
                }
                return systematic_factorize(requests, parity);
            }
            throw StructuralError("input has no D/E; pass --form/--P/--N to factorize");
        }();
        write_json_file(path("scheme.json"), scheme_to_json(s));

        stage = "check";
        const CostReport cost = costs(s);
        const SecrecyReport raw_report = full_report(s);
        {
            ordered_json j;
            j["scheme"] = scheme_summary(s);
            j["costs"] = costs_to_json(cost);
            j["secrecy"] = secrecy_report_to_json(raw_report);
            write_json_file(path("check.json"), j);
        }
        if (!raw_report.all_ok()) {
            throw SecrecyError("scheme fails the admissibility checks (see check.json)");
        }

        stage = "secure";
        const SecuredScheme ss = secure(s);
        write_json_file(path("secured.json"), secured_to_json(ss));
        const SecrecyReport secured_report = full_report(ss);
        write_json_file(path("secrecy.json"), secrecy_report_to_json(secured_report));

        stage = "simulate";
        SimParams params = o.sim.params;
        params.seed = o.sim.seed ? *o.sim.seed : default_seed();
        const BatchResult batch = run_batch(ss, params, o.sim.trials, false);
        write_json_file(path("simulate.json"), simulate_to_json(batch, params, o.sim.trials));

        stage = "audit";
        ordered_json audit_doc;
        if (ss.base.field.is_prime_field() || o.audit.modulus != 0) {
            const SecuredScheme gf_ss = ss.base.field.is_prime_field()
                                            ? ss
                                            : reduce_secured_mod(ss, o.audit.modulus);
            ordered_json per_user = ordered_json::array();
            bool all_zero = true;
            for (std::size_t k = 0; k < gf_ss.base.users; ++k) {
                const GfLeakage leak = exact_leakage_gf(gf_ss, k, o.audit.max_states);
                ordered_json j;
                j["user"] = k + 1;
                j["leakage_bits"] = round12(leak.bits);
                j["exactly_zero"] = leak.exactly_zero;
                all_zero = all_zero && leak.exactly_zero;
                per_user.push_back(std::move(j));
            }
            audit_doc["exact"]["field"] = gf_ss.base.field.name();
            audit_doc["exact"]["units"] = "bits";
            audit_doc["exact"]["per_user"] = std::move(per_user);
            audit_doc["exact"]["all_zero"] = all_zero;
        }
        if (!ss.base.field.is_prime_field()) {
            ordered_json per_user = ordered_json::array();
            for (std::size_t k = 0; k < ss.base.users; ++k) {
                const RealBound b = leakage_bound_real(ss, k, o.audit.sigma_w, o.audit.sigma_c);
                ordered_json j;
                j["user"] = k + 1;
                j["S_k"] = one_based(b.rows);
                j["lambda_max_X"] = round12(b.lambda_max_signal);
                j["lambda_min_Y"] = round12(b.lambda_min_noise);
                j["M_k"] = round12(b.snr);
                j["bound_nats"] = round12(b.bound);
                j["exact_nats"] =
                    round12(exact_leakage_gaussian(ss, k, o.audit.sigma_w, o.audit.sigma_c).nats);
                if (o.with_eps) {
                    const double sc = epsilon_to_sigma(ss, k, o.audit.sigma_w, o.audit.eps);
                    j["sigma_c_for_eps"] = round12(sc);
                }
                per_user.push_back(std::move(j));
            }
            audit_doc["gaussian"]["units"] = "nats";
            audit_doc["gaussian"]["sigma_w"] = round12(o.audit.sigma_w);
            audit_doc["gaussian"]["sigma_c"] = round12(o.audit.sigma_c);
            if (o.with_eps) audit_doc["gaussian"]["eps"] = round12(o.audit.eps);
            audit_doc["gaussian"]["per_user"] = std::move(per_user);
        }
        write_json_file(path("audit.json"), audit_doc);

        stage = "summary";
        ordered_json summary;
        summary["scheme"] = scheme_summary(s);
        summary["costs"] = costs_to_json(cost);
        summary["secrecy_ok"] = secured_report.all_ok();
        summary["randomness_symbols"] = ss.randomness_count;
        summary["warnings"] = ss.warnings;
        summary["simulation"] = simulate_to_json(batch, params, o.sim.trials);
        summary["audit"] = audit_doc;
        write_json_file(path("summary.json"), summary);

        if (o.as_json) {
            std::cout << summary.dump(2) << "\n";
        } else {
            std::printf("pipeline complete -> %s\n", o.outdir.c_str());
            std::printf("  δ = %s, γ = %s, secrecy %s\n", cost.comm_cost.get_str().c_str(),
                        cost.comp_cost.get_str().c_str(),
                        secured_report.all_ok() ? "PASS" : "FAIL");
        }
        return 0;
    } catch (const Error&) {
        std::cerr << "pipeline stage '" << stage << "' failed\n";
        throw;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure multi-user linearly-separable distributed computing toolkit"};
    app.require_subcommand(1);

    std::string file, output, user = "all";
    bool as_json = false;

    auto* check = app.add_subcommand("check", "validate a scheme and run all secrecy checks");
    check->add_option("file", file)->required();
    check->add_flag("--json", as_json);

    FactorizeOpts fo;
    auto* fact = app.add_subcommand("factorize", "build a scheme from a request matrix");
    fact->add_option("file", fo.input)->required();
    fact->add_option("--form", fo.form, "systematic|identity");
    fact->add_option("--P", fo.parity_file, "JSON file with the parity block P");
    fact->add_option("--N", fo.servers, "server count (systematic default parity)");
    fact->add_flag("--decentralized", fo.decentralized);
    fact->add_option("-o,--output", fo.output);
    fact->add_flag("--json", fo.as_json);

    auto* sec = app.add_subcommand("secure", "append a null-space randomness basis");
    sec->add_option("file", file)->required();
    sec->add_option("-o,--output", output);
    sec->add_flag("--json", as_json);

    SimulateOpts so;
    std::uint64_t seed_opt = 0;
    auto* sim = app.add_subcommand("simulate", "run the full protocol end to end");
    sim->add_option("file", so.input)->required();
    sim->add_option("--trials", so.trials);
    auto* seed_flag = sim->add_option("--seed", seed_opt);
    sim->add_option("--sigma-w", so.params.sigma_w);
    sim->add_option("--sigma-c", so.params.sigma_c);
    sim->add_option("--tol", so.params.tolerance);
    sim->add_option("--csv", so.csv, "write per-trial results");
    sim->add_flag("--json", so.as_json);

    AuditOpts ao;
    auto* ax = app.add_subcommand("audit-exact", "exhaustive leakage measurement over GF(p)");
    ax->add_option("file", ao.input)->required();
    ax->add_option("--user", ao.user, "1-based user index or \"all\"");
    ax->add_option("--modulus", ao.modulus, "reduce a real scheme mod p first");
    ax->add_option("--max-states", ao.max_states);
    ax->add_flag("--json", ao.as_json);

    auto* ab = app.add_subcommand("audit-bound", "closed-form real-field leakage ceiling");
    ab->add_option("file", ao.input)->required();
    ab->add_option("--user", ao.user);
    ab->add_option("--sigma-w", ao.sigma_w);
    ab->add_option("--sigma-c", ao.sigma_c);
    ab->add_flag("--json", ao.as_json);

    auto* ag = app.add_subcommand("audit-gaussian", "exact jointly-Gaussian leakage");
    ag->add_option("file", ao.input)->required();
    ag->add_option("--user", ao.user);
    ag->add_option("--sigma-w", ao.sigma_w);
    ag->add_option("--sigma-c", ao.sigma_c);
    ag->add_flag("--json", ao.as_json);

    auto* ep = app.add_subcommand("epsilon", "randomness deviation achieving a leakage target");
    ep->add_option("file", ao.input)->required();
    ep->add_option("--user", ao.user);
    ep->add_option("--eps", ao.eps)->required();
    ep->add_option("--sigma-w", ao.sigma_w);
    ep->add_flag("--json", ao.as_json);

    PipelineOpts po;
    std::uint64_t pseed = 0;
    auto* pipe = app.add_subcommand("pipeline", "factorize -> check -> secure -> simulate -> audit");
    pipe->add_option("file", po.input)->required();
    pipe->add_option("-o,--output", po.outdir)->required();
    pipe->add_option("--form", po.fact.form);
    pipe->add_option("--P", po.fact.parity_file);
    pipe->add_option("--N", po.fact.servers);
    pipe->add_flag("--decentralized", po.fact.decentralized);
    pipe->add_option("--trials", po.sim.trials);
    auto* pseed_flag = pipe->add_option("--seed", pseed);
    pipe->add_option("--sigma-w", po.audit.sigma_w);
    pipe->add_option("--sigma-c", po.audit.sigma_c);
    pipe->add_option("--tol", po.sim.params.tolerance);
    pipe->add_option("--modulus", po.audit.modulus);
    auto* eps_flag = pipe->add_option("--eps", po.audit.eps);
    pipe->add_flag("--json", po.as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (check->parsed()) return cmd_check(file, as_json);
        if (fact->parsed()) return cmd_factorize(fo);
        if (sec->parsed()) return cmd_secure(file, output, as_json);
        if (sim->parsed()) {
            if (seed_flag->count() > 0) so.seed = seed_opt;
            return cmd_simulate(so);
        }
        if (ax->parsed()) return cmd_audit_exact(ao);
        if (ab->parsed()) return cmd_audit_bound(ao, false);
        if (ag->parsed()) return cmd_audit_bound(ao, true);
        if (ep->parsed()) return cmd_epsilon(ao);
        if (pipe->parsed()) {
            if (pseed_flag->count() > 0) po.sim.seed = pseed;
            po.with_eps = eps_flag->count() > 0;
            po.sim.params.sigma_w = po.audit.sigma_w;
            po.sim.params.sigma_c = po.audit.sigma_c;
            return cmd_pipeline(po);
        }
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SecrecyError& e) {
        std::cerr << "secrecy failure: " << e.what() << "\n";
        return 3;
    } catch (const AuditError& e) {
        std::cerr << "audit infeasible: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
