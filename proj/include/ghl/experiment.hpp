#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghl/hop.hpp"
#include "ghl/multihop.hpp"
#include "ghl/qmc.hpp"
#include "ghl/serialize.hpp"
#include "ghl/sim.hpp"

namespace ghl {

// A fully resolved experiment: the CLI builds one of these from the JSON
// config plus flag overrides, and run_experiment turns it into files.
struct ExperimentConfig {
    std::string kind;  // single-hop | measure-compare | moments | kl | zn | hops | simulate | validate
    ModelParams params;
    MeasureMode mode = MeasureMode::ExactElliptic;
    PathModel model = PathModel::Dependent;
    QmcRule rule;
    std::uint64_t seed = 42;
    int threads = 0;
    std::string out = "ghl_out";
    std::string format = "csv";  // csv | json

    // Grids; each kind reads the ones it needs and defaults the rest.
    std::vector<double> z_grid;
    std::vector<double> gamma_grid;
    std::vector<double> u_grid;
    std::vector<double> c_grid;
    int n_hops = 2;
    int max_n = 16;
    std::vector<int> moment_orders = {1, 2};
    std::uint64_t sim_runs = 10000;
    int track_hops = 3;
    bool sleep_sim = false;
    bool conditioned = false;
};

// Parse the JSON config text (missing file/flags are handled by the CLI).
ExperimentConfig parse_config(const std::string& json_text);

MeasureMode parse_mode(const std::string& s);
PathModel parse_model(const std::string& s);
std::string mode_name(MeasureMode mode);
std::string model_name(PathModel model);

struct ExperimentResult {
    Table table;
    std::string manifest_json;
    int checks_failed = 0;  // only the validate kind uses this
};

// Run and return the table plus a manifest (config echo, seed, version,
// wall time). Writes nothing; the CLI owns file placement.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string library_version();

}  // namespace ghl
