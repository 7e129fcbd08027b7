#include "nilnike/bench.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cstdio>
#include <thread>

namespace nilnike {

namespace {

template <ProtocolPlatform G>
std::vector<BenchRow> bench_point(const G& g, const PlatformDescriptor& d,
                                  const BenchConfig& config, Rng rng) {
    struct Acc {
        std::uint64_t ops = 0;
        double millis = 0.0;
        unsigned refused = 0;
    };
    std::vector<std::string> algorithms;
    for (const auto& name : config.algorithms)
        if (attack_applies(name, d.family)) algorithms.push_back(name);
    std::vector<Acc> acc(algorithms.size());

    for (unsigned run = 0; run < config.instances; ++run) {
        const ProtocolParams<G> params = setup(g, d.n, rng);
        const ExchangeResult<G> ex = run_exchange(g, params, rng, /*test_mode=*/true);
        if (!ex.consistent) fail("BadConfig", "inconsistent exchange during bench");
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            const AttackOutcome<G> out =
                run_named_attack(algorithms[a], g, ex.transcript, config.budget);
            if (!out.success && !out.refused)
                fail(out.error.empty() ? "AttackFailed" : out.error,
                     "bench attack failed on " + algorithms[a]);
            acc[a].ops += out.ops;
            acc[a].millis += out.millis;
            if (out.refused) ++acc[a].refused;
        }
    }

    std::vector<BenchRow> rows;
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        BenchRow row;
        row.platform = family_name(d.family);
        row.p = d.p.get_str();
        row.alpha = d.family == Family::heisenberg ? 1 : d.alpha;
        row.n = d.n;
        row.algorithm = algorithms[a];
        row.ops = config.instances ? acc[a].ops / config.instances : 0;
        row.millis = config.instances ? acc[a].millis / config.instances : 0.0;
        row.refused = acc[a].refused == config.instances && config.instances > 0;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    std::vector<std::vector<BenchRow>> per_point(config.grid.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= config.grid.size() || failed.load()) break;
            try {
                const PlatformDescriptor& d = config.grid[index];
                PlatformVariant platform = make_platform(d);
                Rng rng = Rng(config.seed).fork(index);
                per_point[index] = std::visit(
                    [&](const auto& g) { return bench_point(g, d, config, rng); }, platform);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) first_error = e.what();
            }
        }
    };

    const unsigned worker_count =
        std::max(1u, std::min<unsigned>(config.workers, config.grid.size()));
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < worker_count; ++w) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    if (failed.load()) throw std::runtime_error(first_error);

    std::vector<BenchRow> rows;
    for (auto& point_rows : per_point)
        for (auto& row : point_rows) rows.push_back(std::move(row));
    if (!config.timing)
        for (auto& row : rows) row.millis = 0.0;
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "platform,p,alpha,n,algorithm,ops,millis,refused\n";
    char buf[64];
    for (const auto& r : rows) {
        out += r.platform;
        out += ',';
        out += r.p;
        out += ',';
        out += std::to_string(r.alpha);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.algorithm;
        out += ',';
        out += std::to_string(r.ops);
        out += ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.millis);
        out += buf;
        out += ',';
        out += r.refused ? "1" : "0";
        out += '\n';
    }
    return out;
}

} // namespace nilnike
