#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghl/serialize.hpp"

// GHL_CLI_PATH is injected by the build as the path to the ghl binary.

namespace {

const std::string kCli = GHL_CLI_PATH;

int run_cli(const std::string& args, bool quiet = true) {
    std::string cmd = "\"" + kCli + "\" " + args;
    if (quiet) cmd += " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

int run_env(const std::string& env, const std::string& args) {
    const std::string cmd = env + " \"" + kCli + "\" " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

nlohmann::json manifest(const std::string& stem) {
    return nlohmann::json::parse(ghl::read_file(stem + ".manifest.json"));
}

std::size_t column_index(const ghl::Table& t, const std::string& name) {
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        if (t.columns[j] == name) return j;
    const std::string msg = "missing column " + name;
    REQUIRE_MESSAGE(false, msg);
    return 0;
}

double cell(const ghl::Table& t, std::size_t i, const std::string& name) {
    return std::stod(t.rows.at(i).at(column_index(t, name)));
}

void drop(const std::string& stem) {
    for (const char* suffix : {".csv", ".json", ".manifest.json"})
        std::remove((stem + suffix).c_str());
}

}  // namespace

TEST_CASE("validate subcommand runs its checks clean") {
    REQUIRE(run_cli("validate --out cli_val") == 0);
    const auto m = manifest("cli_val");
    CHECK(m.at("kind") == "validate");
    CHECK(m.at("checks_failed").get<int>() == 0);
    CHECK(m.at("wall_time_ms").get<double>() >= 0.0);
    CHECK(m.contains("library_version"));
    const auto t = ghl::read_csv(ghl::read_file("cli_val.csv"));
    CHECK(t.rows.size() >= 7);
    for (const auto& row : t.rows) CHECK(row.at(1) == "pass");
    drop("cli_val");
}

TEST_CASE("identical configuration gives byte-identical outputs") {
    const std::string args = "zn --rule lattice --points 512 --shifts 4 --hops 2 --seed 7";
    REQUIRE(run_cli(args + " --threads 1 --out cli_rep_a") == 0);
    REQUIRE(run_cli(args + " --threads 1 --out cli_rep_b") == 0);
    CHECK(ghl::read_file("cli_rep_a.csv") == ghl::read_file("cli_rep_b.csv"));
    auto ma = manifest("cli_rep_a");
    auto mb = manifest("cli_rep_b");
    ma["wall_time_ms"] = 0;
    mb["wall_time_ms"] = 0;
    CHECK(ma == mb);

    // The declared worker count must not leak into the numbers.
    REQUIRE(run_cli(args + " --threads 4 --out cli_rep_c") == 0);
    CHECK(ghl::read_file("cli_rep_a.csv") == ghl::read_file("cli_rep_c.csv"));
    drop("cli_rep_a");
    drop("cli_rep_b");
    drop("cli_rep_c");
}

TEST_CASE("csv output round-trips through the reader") {
    REQUIRE(run_cli("zn --points 512 --hops 2 --seed 3 --out cli_rt") == 0);
    const std::string text = ghl::read_file("cli_rt.csv");
    const ghl::Table t = ghl::read_csv(text);
    CHECK(t.to_csv() == text);
    const std::vector<std::string> expect = {"z",     "conditional", "conditional_se",
                                             "total", "total_se",    "void0",
                                             "void0_se", "void1",    "void1_se", "samples"};
    CHECK(t.columns == expect);
    drop("cli_rt");
}

TEST_CASE("emitted probabilities stay inside the unit interval") {
    REQUIRE(run_cli("zn --points 512 --hops 2 --seed 3 --out cli_pz") == 0);
    const auto tz = ghl::read_csv(ghl::read_file("cli_pz.csv"));
    for (std::size_t i = 0; i < tz.rows.size(); ++i) {
        for (const char* col : {"conditional", "total", "void0", "void1"}) {
            const double v = cell(tz, i, col);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    drop("cli_pz");

    REQUIRE(run_cli("hops --points 1024 --max-n 8 --seed 3 --out cli_ph") == 0);
    const auto th = ghl::read_csv(ghl::read_file("cli_ph.csv"));
    REQUIRE(th.rows.size() == 8);
    double prev = 0.0;
    for (std::size_t i = 0; i < th.rows.size(); ++i) {
        const double v = cell(th, i, "p_cum");
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v >= prev);
        prev = v;
    }
    drop("cli_ph");
}

TEST_CASE("single-hop law table spans the forwarding band") {
    REQUIRE(run_cli("single-hop --runs 0 --out cli_sh") == 0);
    const auto t = ghl::read_csv(ghl::read_file("cli_sh.csv"));
    REQUIRE(t.rows.size() == 201);
    CHECK(t.columns == std::vector<std::string>{"u", "cdf"});
    CHECK(cell(t, 0, "u") == 9.0);
    CHECK(cell(t, 0, "cdf") == 0.0);
    CHECK(cell(t, 200, "u") == 10.0);
    CHECK(cell(t, 200, "cdf") == 1.0);
    drop("cli_sh");
}

TEST_CASE("measure comparison table keeps the evaluation modes consistent") {
    REQUIRE(run_cli("measure-compare --out cli_mc") == 0);
    const auto t = ghl::read_csv(ghl::read_file("cli_mc.csv"));
    REQUIRE(t.rows.size() == 51);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double exact = cell(t, i, "exact");
        const double quad = cell(t, i, "quadrature");
        CHECK(std::fabs(exact - quad) <= 1e-8 * std::fmax(1.0, std::fabs(exact)));
    }
    drop("cli_mc");
}

TEST_CASE("json table format emits an array of row objects") {
    REQUIRE(run_cli("moments --format json --lambda 20 --out cli_js") == 0);
    const auto arr = nlohmann::json::parse(ghl::read_file("cli_js.json"));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);  // default gamma grid x orders {1, 2}
    CHECK(arr[0].at("gamma") == "10");
    CHECK(arr[0].at("order") == "1");
    CHECK(std::stod(arr[0].at("numeric").get<std::string>()) > 0.0);
    CHECK(manifest("cli_js").at("format") == "json");
    drop("cli_js");
}

TEST_CASE("seed precedence: flag, then config, then environment") {
    REQUIRE(run_env("GHL_SEED=123", "kl --out cli_seed_env") == 0);
    CHECK(manifest("cli_seed_env").at("seed").get<std::uint64_t>() == 123);

    REQUIRE(run_env("GHL_SEED=123", "kl --seed 7 --out cli_seed_flag") == 0);
    CHECK(manifest("cli_seed_flag").at("seed").get<std::uint64_t>() == 7);

    ghl::write_file("cli_seed_cfg.json", "{\"seed\": 55}\n");
    REQUIRE(run_env("GHL_SEED=123", "kl --config cli_seed_cfg.json --out cli_seed_conf") == 0);
    CHECK(manifest("cli_seed_conf").at("seed").get<std::uint64_t>() == 55);

    CHECK(run_env("GHL_SEED=bogus", "kl --out cli_seed_bad") == 2);

    drop("cli_seed_env");
    drop("cli_seed_flag");
    drop("cli_seed_conf");
    drop("cli_seed_bad");
    std::remove("cli_seed_cfg.json");
}

TEST_CASE("failure modes map to distinct exit codes") {
    ghl::write_file("cli_bad_cfg.json", "{ this is not json\n");
    CHECK(run_cli("zn --config cli_bad_cfg.json --out cli_err1") == 2);
    std::remove("cli_bad_cfg.json");

    // Geometry that cannot host a route: source inside the transmission disk.
    CHECK(run_cli("zn --ell 0.5 --out cli_err2") == 3);

    // An error budget the configured points cannot meet.
    ghl::write_file("cli_tol_cfg.json", "{\"rule\": {\"kind\": \"halton\", \"points\": 256, \"tol\": 1e-12}}\n");
    CHECK(run_cli("zn --config cli_tol_cfg.json --out cli_err3") == 4);
    std::remove("cli_tol_cfg.json");

    CHECK(run_cli("zn --no-such-flag") != 0);
    CHECK(run_cli("") != 0);          // a subcommand is required
    CHECK(run_cli("validate --config does_not_exist.json") != 0);

    drop("cli_err1");
    drop("cli_err2");
    drop("cli_err3");
}

TEST_CASE("simulation table tracks per-hop advancement fractions") {
    REQUIRE(run_cli("simulate --runs 2000 --track 2 --seed 5 --out cli_sim") == 0);
    const auto t = ghl::read_csv(ghl::read_file("cli_sim.csv"));
    REQUIRE(t.rows.size() == 40);
    const auto m = manifest("cli_sim");
    const double delivered = m.at("extra").at("delivered_fraction").get<double>();
    CHECK(delivered > 0.5);
    CHECK(delivered <= 1.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double h1 = cell(t, i, "p_all_h1");
        const double h2 = cell(t, i, "p_all_h2");
        CHECK(h2 <= h1 + 1e-12);  // advancement only grows with the hop count
    }
    drop("cli_sim");
}
