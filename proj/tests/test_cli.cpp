#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path =
        fs::temp_directory_path() / ("nilnike_cli_" + std::to_string(counter++) + ".out");
    const std::string cmd =
        std::string(NILNIKE_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    fs::remove(out_path);
    return r;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

} // namespace

TEST_CASE("exchange writes a consistent transcript and exits zero") {
    const fs::path t = temp_file("nilnike_t1.json");
    const auto r = run_cli("exchange --platform heisenberg --p 5 --m 1 --seed 7 --test-mode "
                           "--out " +
                           t.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(t));
    CHECK(j["platform"]["family"] == "heisenberg");
    CHECK(j["shares"].size() == 6);
    CHECK(j.contains("test"));
    fs::remove(t);
}

TEST_CASE("exchange on a five-user quaternion instance") {
    const fs::path t = temp_file("nilnike_t2.json");
    const auto r = run_cli(
        "exchange --platform quaternion --p 5 --alpha 2 --n 4 --seed 1 --test-mode --out " +
        t.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(t));
    CHECK(j["shares"].size() == 4 * 5);
    CHECK(j["key_order"] == "25");
    fs::remove(t);
}

TEST_CASE("exchange rejects an unsupported class") {
    const auto r = run_cli("exchange --platform heisenberg --p 5 --n 3");
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("ClassUnsupported") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical transcripts") {
    const fs::path a = temp_file("nilnike_a.json");
    const fs::path b = temp_file("nilnike_b.json");
    run_cli("exchange --platform quaternion --p 7 --alpha 2 --n 3 --seed 42 --test-mode --out " +
            a.string());
    run_cli("exchange --platform quaternion --p 7 --alpha 2 --n 3 --seed 42 --test-mode --out " +
            b.string());
    CHECK(read_file(a) == read_file(b));
    CHECK(!read_file(a).empty());
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("NILNIKE_SEED is the seed fallback") {
    const fs::path a = temp_file("nilnike_env_a.json");
    const fs::path b = temp_file("nilnike_env_b.json");
    run_cli("exchange --platform heisenberg --p 101 --seed 9 --test-mode --out " + a.string());
    setenv("NILNIKE_SEED", "9", 1);
    run_cli("exchange --platform heisenberg --p 101 --test-mode --out " + b.string());
    unsetenv("NILNIKE_SEED");
    CHECK(read_file(a) == read_file(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("config file values are used and flags override them") {
    const fs::path cfg = temp_file("nilnike_cfg.txt");
    {
        std::ofstream out(cfg);
        out << "platform=cyclic-triple\np=3\nalpha=3\nseed=5\ntest-mode=true\n";
    }
    const fs::path a = temp_file("nilnike_cfg_a.json");
    const auto r =
        run_cli("exchange --config " + cfg.string() + " --out " + a.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(a));
    CHECK(j["key_order"] == "27");
    // the flag wins over the config value
    const fs::path b = temp_file("nilnike_cfg_b.json");
    run_cli("exchange --config " + cfg.string() + " --alpha 2 --out " + b.string());
    const auto j2 = nlohmann::json::parse(read_file(b));
    CHECK(j2["key_order"] == "9");
    fs::remove(cfg);
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("attack command recovers the key and honors the exit-code contract") {
    const fs::path t = temp_file("nilnike_t3.json");
    run_cli("exchange --platform heisenberg --p 101 --seed 3 --test-mode --out " + t.string());
    const fs::path rep = temp_file("nilnike_r3.json");
    const auto r = run_cli("attack --transcript " + t.string() +
                           " --attack all --no-timing --report " + rep.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(rep));
    REQUIRE(j["results"].size() == 2);
    for (const auto& res : j["results"]) {
        CHECK(res["success"] == true);
        CHECK(res["millis"] == 0.0);
        CHECK(res.contains("key_hex"));
    }
    fs::remove(rep);

    // truncate a share: the attack must fail with MissingShare
    auto doc = nlohmann::json::parse(read_file(t));
    doc["shares"].erase(0);
    const fs::path trunc = temp_file("nilnike_t3_trunc.json");
    {
        std::ofstream out(trunc);
        out << doc.dump(2) << "\n";
    }
    const auto r2 = run_cli("attack --transcript " + trunc.string() + " --attack generic");
    CHECK(r2.exit_code != 0);
    CHECK(r2.output.find("MissingShare") != std::string::npos);
    fs::remove(trunc);
    fs::remove(t);
}

TEST_CASE("attack round trips through transcript files on every platform") {
    struct Case {
        std::string exchange_args;
        std::string attacks;
    };
    const Case cases[] = {
        {"--platform quaternion --p 5 --alpha 2 --n 3 --seed 11", "--attack all"},
        {"--platform cyclic-triple --p 3 --alpha 3 --seed 12", "--attack generic"},
        {"--platform heisenberg --p 101 --m 3 --seed 13", "--attack all"},
    };
    for (const auto& c : cases) {
        const fs::path t = temp_file("nilnike_rt.json");
        const auto ex = run_cli("exchange " + c.exchange_args + " --test-mode --out " +
                                t.string());
        REQUIRE(ex.exit_code == 0);
        const auto at = run_cli("attack --transcript " + t.string() + " " + c.attacks);
        CHECK(at.exit_code == 0);
        const auto j = nlohmann::json::parse(at.output);
        for (const auto& res : j["results"]) CHECK(res["success"] == true);
        fs::remove(t);
    }
}

TEST_CASE("at a 61-bit prime the linear attack wins where the generic budget refuses") {
    const fs::path t = temp_file("nilnike_t61.json");
    const auto ex = run_cli("exchange --platform heisenberg --p 2305843009213693951 "
                            "--seed 4 --test-mode --out " +
                            t.string());
    REQUIRE(ex.exit_code == 0);
    const auto linear =
        run_cli("attack --transcript " + t.string() + " --attack heisenberg-linear");
    CHECK(linear.exit_code == 0);
    const auto generic = run_cli("attack --transcript " + t.string() + " --attack generic");
    CHECK(generic.exit_code != 0);
    const auto j = nlohmann::json::parse(generic.output);
    CHECK(j["results"][0]["refused"] == true);
    CHECK(j["results"][0]["error"] == "BudgetExceeded");
    fs::remove(t);
}

TEST_CASE("bench emits the CSV contract") {
    const auto r = run_cli("bench --platform heisenberg --p-list 101,401 "
                           "--algorithms generic,heisenberg-linear --instances 4 --seed 2 "
                           "--no-timing");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "platform,p,alpha,n,algorithm,ops,millis,refused");
    unsigned rows = 0;
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
    // deterministic given the seed
    const auto r2 = run_cli("bench --platform heisenberg --p-list 101,401 "
                            "--algorithms generic,heisenberg-linear --instances 4 --seed 2 "
                            "--no-timing");
    CHECK(r2.output == r.output);
}

TEST_CASE("verify passes on defaults and the corrupted sign table is caught") {
    const auto ok = run_cli("verify --trials 16");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("FAIL") == std::string::npos);

    const auto tuned = run_cli("verify --p 7 --alpha 2 --kmax 3 --trials 8");
    CHECK(tuned.exit_code == 0);
    CHECK(tuned.output.find("ok   quaternion.power-congruence") != std::string::npos);

    const auto bad = run_cli("verify --trials 16 --corrupt-quaternion-sign-table");
    CHECK(bad.exit_code != 0);
    CHECK(bad.output.find("FAIL quaternion.defining-relations") != std::string::npos);
    CHECK(bad.output.find("first failing invariant: quaternion.defining-relations") !=
          std::string::npos);
}
