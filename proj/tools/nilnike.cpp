// Command-line front end: exchange / attack / bench / verify.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilnike/attacks.hpp"
#include "nilnike/bench.hpp"
#include "nilnike/platform.hpp"
#include "nilnike/protocol.hpp"
#include "nilnike/transcript_io.hpp"
#include "nilnike/verify.hpp"

using namespace nilnike;

namespace {

// Flat key=value run configuration ('#' starts a comment). Command-line
// flags override config values; NILNIKE_SEED is the seed fallback.
class FlatConfig {
public:
    FlatConfig() = default;

    explicit FlatConfig(const std::string& path) {
        static const std::set<std::string> known = {
            "platform", "p",         "m",          "alpha",      "n",        "t",
            "N",        "seed",      "test-mode",  "max-retries", "out",     "transcript",
            "attack",   "budget",    "max-table",  "report",      "no-timing",
            "p-list",   "alpha-list", "algorithms", "instances",  "workers",  "kmax",
            "trials",   "heis-p",    "heis-m",     "cyc-p",       "cyc-alpha"};
        std::ifstream in(path);
        if (!in) fail("BadConfig", "cannot open config file " + path);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail("BadConfig", "config line lacks '=': " + line);
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!known.count(key)) fail("BadConfig", "unknown config key: " + key);
            values_[key] = value;
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    void apply(const CLI::Option* opt, const std::string& key, std::string& target) const {
        if (opt->count() == 0 && has(key)) target = values_.at(key);
    }
    void apply(const CLI::Option* opt, const std::string& key, unsigned& target) const {
        if (opt->count() == 0 && has(key)) target = std::stoul(values_.at(key));
    }
    void apply(const CLI::Option* opt, const std::string& key, std::uint64_t& target) const {
        if (opt->count() == 0 && has(key)) target = std::stoull(values_.at(key));
    }
    void apply(const CLI::Option* opt, const std::string& key, bool& target) const {
        if (opt->count() == 0 && has(key)) {
            const std::string& v = values_.at(key);
            target = v == "1" || v == "true" || v == "yes" || v == "on";
        }
    }
    void apply_list(const CLI::Option* opt, const std::string& key,
                    std::vector<std::string>& target) const {
        if (opt->count() > 0 || !has(key)) return;
        target.clear();
        std::istringstream ss(values_.at(key));
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) target.push_back(item);
    }

    std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t parsed) const {
        if (opt->count() > 0) return parsed;
        if (has("seed")) return std::stoull(values_.at("seed"));
        if (const char* env = std::getenv("NILNIKE_SEED")) {
            try {
                return std::stoull(env);
            } catch (...) {
                fail("BadConfig", "NILNIKE_SEED is not a 64-bit integer");
            }
        }
        return parsed;
    }

private:
    std::map<std::string, std::string> values_;
};

struct PlatformOptions {
    std::string platform = "heisenberg";
    std::string p = "5";
    unsigned m = 1;
    unsigned alpha = 1;
    unsigned n = 2;
    std::string t;
    unsigned precision = 0;

    CLI::Option* platform_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* t_opt = nullptr;
    CLI::Option* precision_opt = nullptr;

    void attach(CLI::App* cmd) {
        platform_opt = cmd->add_option("--platform", platform,
                                       "platform family: heisenberg, cyclic-triple, quaternion");
        p_opt = cmd->add_option("--p", p, "odd prime (quaternion needs p > 3)");
        m_opt = cmd->add_option("--m", m, "heisenberg vector length");
        alpha_opt = cmd->add_option("--alpha", alpha, "key-order exponent p^alpha");
        n_opt = cmd->add_option("--n", n, "protocol class; users = n + 1");
        t_opt = cmd->add_option("--t", t, "quaternion nonresidue override");
        precision_opt = cmd->add_option("--N", precision, "quaternion precision override");
    }

    void apply(const FlatConfig& cfg) {
        cfg.apply(platform_opt, "platform", platform);
        cfg.apply(p_opt, "p", p);
        cfg.apply(m_opt, "m", m);
        cfg.apply(alpha_opt, "alpha", alpha);
        cfg.apply(n_opt, "n", n);
        cfg.apply(t_opt, "t", t);
        cfg.apply(precision_opt, "N", precision);
    }

    PlatformDescriptor descriptor() const {
        PlatformDescriptor d;
        d.family = family_from_name(platform);
        d.p = mpz_class(p);
        d.m = m;
        d.alpha = alpha;
        d.n = n;
        if (!t.empty()) d.t = mpz_class(t);
        if (precision > 0) d.precision = precision;
        return d;
    }
};

void write_output(const std::string& path, const std::string& body) {
    if (path == "-" || path.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("BadConfig", "cannot open output file " + path);
    out << body;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("BadConfig", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_exchange(const PlatformDescriptor& d, std::uint64_t seed, bool test_mode,
                 unsigned max_retries, const std::string& out_path) {
    PlatformVariant platform = make_platform(d);
    return std::visit(
        [&](const auto& g) -> int {
            Rng rng(seed);
            const auto params = setup(g, d.n, rng, max_retries);
            const auto ex = run_exchange(g, params, rng, test_mode);
            const nlohmann::json j = transcript_json(g, ex.transcript);
            write_output(out_path, j.dump(2) + "\n");
            if (!ex.consistent) {
                std::cerr
                    << "{\"error\":\"Inconsistent\",\"message\":\"derived keys disagree\"}\n";
                return 1;
            }
            return 0;
        },
        platform);
}

int cmd_attack(const std::string& transcript_path, std::vector<std::string> algorithms,
               const DlogBudget& budget, const std::string& report_path, bool timing) {
    const nlohmann::json j = nlohmann::json::parse(read_file(transcript_path));
    const PlatformDescriptor d = platform_from_json(j.at("platform"));
    PlatformVariant platform = make_platform(d);
    return std::visit(
        [&](const auto& g) -> int {
            const auto t = transcript_from_json(g, j);
            if (algorithms.empty() || (algorithms.size() == 1 && algorithms[0] == "all")) {
                algorithms = {"generic"};
                if (d.family == Family::heisenberg) algorithms.push_back("heisenberg-linear");
                if (d.family == Family::quaternion) algorithms.push_back("quaternion-linear");
            }
            nlohmann::json reports = nlohmann::json::array();
            bool all_ok = true;
            for (const auto& name : algorithms) {
                const auto out = run_named_attack(name, g, t, budget);
                reports.push_back(report_json(g, out, timing));
                if (!out.success) all_ok = false;
            }
            nlohmann::json doc;
            doc["format"] = kReportFormat;
            doc["results"] = std::move(reports);
            write_output(report_path, doc.dump(2) + "\n");
            return all_ok ? 0 : 1;
        },
        platform);
}

int cmd_bench(const PlatformOptions& opt, std::uint64_t seed,
              const std::vector<std::string>& p_list, const std::vector<std::string>& alpha_list,
              const std::vector<std::string>& algorithms, unsigned instances, unsigned workers,
              const DlogBudget& budget, bool timing, const std::string& out_path) {
    BenchConfig config;
    config.seed = seed;
    config.instances = instances;
    config.workers = workers;
    config.budget = budget;
    config.timing = timing;
    config.algorithms = algorithms;
    const std::vector<std::string> ps = p_list.empty() ? std::vector<std::string>{opt.p} : p_list;
    const std::vector<std::string> alphas =
        alpha_list.empty() ? std::vector<std::string>{std::to_string(opt.alpha)} : alpha_list;
    for (const auto& pstr : ps) {
        for (const auto& astr : alphas) {
            PlatformOptions point = opt;
            point.p = pstr;
            point.alpha = static_cast<unsigned>(std::stoul(astr));
            config.grid.push_back(point.descriptor());
        }
    }
    const auto rows = run_bench(config);
    write_output(out_path, bench_csv(rows));
    return 0;
}

int cmd_verify(const VerifyConfig& config) {
    const auto results = run_verify(config);
    bool all_ok = true;
    std::string first_failure;
    for (const auto& r : results) {
        if (r.pass) {
            std::cout << "ok   " << r.name << "\n";
        } else {
            std::cout << "FAIL " << r.name << ": " << r.detail << "\n";
            if (first_failure.empty()) first_failure = r.name;
            all_ok = false;
        }
    }
    if (!all_ok) {
        std::cout << "first failing invariant: " << first_failure << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nested-commutator non-interactive key exchange workbench"};
    app.require_subcommand(1);

    // exchange
    auto* exchange = app.add_subcommand("exchange", "run the key exchange, emit a transcript");
    PlatformOptions ex_opt;
    ex_opt.attach(exchange);
    std::uint64_t ex_seed = 0;
    auto* ex_seed_opt = exchange->add_option("--seed", ex_seed, "64-bit RNG seed");
    bool ex_test_mode = false;
    auto* ex_test_opt = exchange->add_flag("--test-mode", ex_test_mode,
                                           "record private exponents and derived keys");
    unsigned ex_retries = 64;
    auto* ex_retries_opt =
        exchange->add_option("--max-retries", ex_retries, "generator sampling retries");
    std::string ex_out = "-";
    auto* ex_out_opt = exchange->add_option("--out", ex_out, "transcript path ('-' = stdout)");
    std::string ex_config;
    exchange->add_option("--config", ex_config, "flat key=value config file");

    // attack
    auto* attack = app.add_subcommand("attack", "run key-recovery attacks on a transcript");
    std::string at_transcript;
    auto* at_transcript_opt =
        attack->add_option("--transcript", at_transcript, "transcript JSON path");
    std::vector<std::string> at_algorithms;
    auto* at_alg_opt = attack->add_option(
        "--attack", at_algorithms, "generic, heisenberg-linear, quaternion-linear, or all");
    std::uint64_t at_budget = std::uint64_t{1} << 26;
    auto* at_budget_opt =
        attack->add_option("--budget", at_budget, "generic-attack operation budget");
    std::uint64_t at_table = std::uint64_t{1} << 26;
    auto* at_table_opt =
        attack->add_option("--max-table", at_table, "baby-step table entry budget");
    std::string at_report = "-";
    auto* at_report_opt = attack->add_option("--report", at_report, "report path ('-' = stdout)");
    bool at_no_timing = false;
    auto* at_timing_opt =
        attack->add_flag("--no-timing", at_no_timing, "zero the millis field (byte-stable)");
    std::string at_config;
    attack->add_option("--config", at_config, "flat key=value config file");

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark attacks over a parameter grid");
    PlatformOptions be_opt;
    be_opt.attach(bench);
    std::uint64_t be_seed = 0;
    auto* be_seed_opt = bench->add_option("--seed", be_seed, "64-bit RNG seed");
    std::vector<std::string> be_p_list;
    auto* be_p_list_opt = bench->add_option("--p-list", be_p_list, "grid of primes");
    be_p_list_opt->delimiter(',');
    std::vector<std::string> be_alpha_list;
    auto* be_alpha_list_opt =
        bench->add_option("--alpha-list", be_alpha_list, "grid of alpha values");
    be_alpha_list_opt->delimiter(',');
    std::vector<std::string> be_algorithms{"generic"};
    auto* be_alg_opt = bench->add_option("--algorithms", be_algorithms, "attacks to measure");
    be_alg_opt->delimiter(',');
    unsigned be_instances = 32;
    auto* be_instances_opt =
        bench->add_option("--instances", be_instances, "seeded instances per grid point");
    unsigned be_workers = 1;
    auto* be_workers_opt = bench->add_option("--workers", be_workers, "parallel worker threads");
    std::uint64_t be_budget = std::uint64_t{1} << 26;
    auto* be_budget_opt =
        bench->add_option("--budget", be_budget, "generic-attack operation budget");
    bool be_no_timing = false;
    auto* be_timing_opt =
        bench->add_flag("--no-timing", be_no_timing, "zero the millis column (byte-stable)");
    std::string be_out = "-";
    auto* be_out_opt = bench->add_option("--out", be_out, "CSV path ('-' = stdout)");
    std::string be_config;
    bench->add_option("--config", be_config, "flat key=value config file");

    // verify
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    VerifyConfig vf;
    std::string vf_p = "5", vf_heis_p = "5", vf_cyc_p = "3";
    auto* vf_p_opt = verify->add_option("--p", vf_p, "quaternion prime");
    auto* vf_alpha_opt = verify->add_option("--alpha", vf.quat_alpha, "quaternion alpha");
    auto* vf_kmax_opt =
        verify->add_option("--kmax", vf.quat_kmax, "power-congruence layers to test");
    auto* vf_heis_p_opt = verify->add_option("--heis-p", vf_heis_p, "heisenberg prime");
    auto* vf_heis_m_opt = verify->add_option("--heis-m", vf.heis_m, "heisenberg vector length");
    auto* vf_cyc_p_opt = verify->add_option("--cyc-p", vf_cyc_p, "cyclic-triple prime");
    auto* vf_cyc_alpha_opt =
        verify->add_option("--cyc-alpha", vf.cyc_alpha, "cyclic-triple alpha");
    auto* vf_trials_opt = verify->add_option("--trials", vf.trials, "trials per check");
    std::uint64_t vf_seed = 1;
    auto* vf_seed_opt = verify->add_option("--seed", vf_seed, "64-bit RNG seed");
    verify->add_flag("--corrupt-quaternion-sign-table", vf.corrupt_quaternion_sign_table,
                     "test fixture: flip one structure constant (must fail)");
    std::string vf_config;
    verify->add_option("--config", vf_config, "flat key=value config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exchange->parsed()) {
            const FlatConfig cfg =
                ex_config.empty() ? FlatConfig() : FlatConfig(ex_config);
            ex_opt.apply(cfg);
            cfg.apply(ex_test_opt, "test-mode", ex_test_mode);
            cfg.apply(ex_retries_opt, "max-retries", ex_retries);
            cfg.apply(ex_out_opt, "out", ex_out);
            return cmd_exchange(ex_opt.descriptor(), cfg.resolve_seed(ex_seed_opt, ex_seed),
                                ex_test_mode, ex_retries, ex_out);
        }
        if (attack->parsed()) {
            const FlatConfig cfg =
                at_config.empty() ? FlatConfig() : FlatConfig(at_config);
            cfg.apply(at_transcript_opt, "transcript", at_transcript);
            cfg.apply_list(at_alg_opt, "attack", at_algorithms);
            cfg.apply(at_budget_opt, "budget", at_budget);
            cfg.apply(at_table_opt, "max-table", at_table);
            cfg.apply(at_report_opt, "report", at_report);
            cfg.apply(at_timing_opt, "no-timing", at_no_timing);
            if (at_transcript.empty()) fail("BadConfig", "attack needs --transcript");
            return cmd_attack(at_transcript, at_algorithms, DlogBudget{at_budget, at_table},
                              at_report, !at_no_timing);
        }
        if (bench->parsed()) {
            const FlatConfig cfg =
                be_config.empty() ? FlatConfig() : FlatConfig(be_config);
            be_opt.apply(cfg);
            std::vector<std::string> p_list = be_p_list;
            cfg.apply_list(be_p_list_opt, "p-list", p_list);
            std::vector<std::string> alpha_list = be_alpha_list;
            cfg.apply_list(be_alpha_list_opt, "alpha-list", alpha_list);
            std::vector<std::string> algorithms = be_algorithms;
            cfg.apply_list(be_alg_opt, "algorithms", algorithms);
            cfg.apply(be_instances_opt, "instances", be_instances);
            cfg.apply(be_workers_opt, "workers", be_workers);
            cfg.apply(be_budget_opt, "budget", be_budget);
            cfg.apply(be_timing_opt, "no-timing", be_no_timing);
            cfg.apply(be_out_opt, "out", be_out);
            return cmd_bench(be_opt, cfg.resolve_seed(be_seed_opt, be_seed), p_list, alpha_list,
                             algorithms, be_instances, be_workers,
                             DlogBudget{be_budget, std::uint64_t{1} << 26}, !be_no_timing,
                             be_out);
        }
        if (verify->parsed()) {
            const FlatConfig cfg =
                vf_config.empty() ? FlatConfig() : FlatConfig(vf_config);
            cfg.apply(vf_p_opt, "p", vf_p);
            cfg.apply(vf_alpha_opt, "alpha", vf.quat_alpha);
            cfg.apply(vf_kmax_opt, "kmax", vf.quat_kmax);
            cfg.apply(vf_heis_p_opt, "heis-p", vf_heis_p);
            cfg.apply(vf_heis_m_opt, "heis-m", vf.heis_m);
            cfg.apply(vf_cyc_p_opt, "cyc-p", vf_cyc_p);
            cfg.apply(vf_cyc_alpha_opt, "cyc-alpha", vf.cyc_alpha);
            cfg.apply(vf_trials_opt, "trials", vf.trials);
            vf.quat_p = mpz_class(vf_p);
            vf.heis_p = mpz_class(vf_heis_p);
            vf.cyc_p = mpz_class(vf_cyc_p);
            vf.seed = cfg.resolve_seed(vf_seed_opt, vf_seed);
            return cmd_verify(vf);
        }
    } catch (const Error& e) {
        nlohmann::json err{{"error", e.code()}, {"message", e.what()}};
        std::cout << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", "Internal"}, {"message", e.what()}};
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 1;
}
