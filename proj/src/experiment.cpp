#include "ghl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace ghl {

using nlohmann::ordered_json;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    if (n <= 1) {
        v.push_back(a);
        return v;
    }
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

// Grids accept either an explicit array or {"min","max","count"}.
std::vector<double> parse_grid(const ordered_json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) return {};
    if (it->is_array()) {
        std::vector<double> v;
        for (const auto& x : *it) v.push_back(x.get<double>());
        return v;
    }
    if (it->is_object()) {
        return linspace(it->at("min").get<double>(), it->at("max").get<double>(),
                        it->at("count").get<int>());
    }
    throw config_error(std::string(key) + ": expected array or {min,max,count}");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

const char* rule_kind_name(RuleKind k) { return k == RuleKind::Halton ? "halton" : "lattice"; }

ordered_json rule_json(const QmcRule& r) {
    ordered_json j;
    j["kind"] = rule_kind_name(r.kind);
    j["points"] = r.points;
    j["shifts"] = r.shifts;
    j["leap"] = r.leap;
    j["seed"] = r.seed;
    j["vector_file"] = r.vector_file;
    j["tol"] = r.tol;
    return j;
}

}  // namespace

MeasureMode parse_mode(const std::string& s) {
    if (s == "exact") return MeasureMode::ExactElliptic;
    if (s == "quadrature") return MeasureMode::Quadrature;
    if (s == "asym2") return MeasureMode::Asymptotic2;
    if (s == "asym3") return MeasureMode::Asymptotic3;
    throw config_error("unknown mode: " + s + " (want exact|quadrature|asym2|asym3)");
}

PathModel parse_model(const std::string& s) {
    if (s == "independent") return PathModel::Independent;
    if (s == "dependent") return PathModel::Dependent;
    throw config_error("unknown model: " + s + " (want independent|dependent)");
}

std::string mode_name(MeasureMode mode) {
    switch (mode) {
        case MeasureMode::ExactElliptic: return "exact";
        case MeasureMode::Quadrature: return "quadrature";
        case MeasureMode::Asymptotic2: return "asym2";
        case MeasureMode::Asymptotic3: return "asym3";
    }
    return "exact";
}

std::string model_name(PathModel model) {
    return model == PathModel::Independent ? "independent" : "dependent";
}

std::string library_version() { return "0.3.0"; }

ExperimentConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config parse failure: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config root must be an object");

    ExperimentConfig c;
    c.kind = j.value("kind", std::string("single-hop"));
    static const char* kinds[] = {"single-hop", "measure-compare", "moments", "kl",
                                  "zn",         "hops",            "simulate", "validate"};
    if (std::find_if(std::begin(kinds), std::end(kinds),
                     [&](const char* k) { return c.kind == k; }) == std::end(kinds))
        throw config_error("unknown experiment kind: " + c.kind);

    if (j.contains("params")) {
        const auto& p = j.at("params");
        c.params.lambda = p.value("lambda", c.params.lambda);
        c.params.r = p.value("r", c.params.r);
        c.params.ell = p.value("ell", c.params.ell);
        c.params.p = p.value("p", c.params.p);
        c.params.alpha = p.value("alpha", c.params.alpha);
    }
    if (j.contains("mode"))
        c.mode = parse_mode(j.at("mode").get<std::string>());
    else
        c.mode = (c.kind == "zn" || c.kind == "hops") ? MeasureMode::Asymptotic3
                                                      : MeasureMode::ExactElliptic;
    if (j.contains("model")) c.model = parse_model(j.at("model").get<std::string>());

    if (j.contains("rule")) {
        const auto& r = j.at("rule");
        if (r.contains("kind")) {
            const std::string rk = r.at("kind").get<std::string>();
            if (rk == "halton")
                c.rule.kind = RuleKind::Halton;
            else if (rk == "lattice")
                c.rule.kind = RuleKind::Lattice;
            else
                throw config_error("unknown rule kind: " + rk);
        }
        c.rule.points = r.value("points", c.rule.points);
        c.rule.shifts = r.value("shifts", c.rule.shifts);
        c.rule.leap = r.value("leap", c.rule.leap);
        c.rule.seed = r.value("seed", c.rule.seed);
        c.rule.vector_file = r.value("vector_file", c.rule.vector_file);
        c.rule.tol = r.value("tol", c.rule.tol);
        if (!c.rule.vector_file.empty()) c.rule.kind = RuleKind::Lattice;
    }

    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
    if (c.format != "csv" && c.format != "json")
        throw config_error("unknown format: " + c.format + " (want csv|json)");

    c.z_grid = parse_grid(j, "z_grid");
    c.gamma_grid = parse_grid(j, "gamma_grid");
    c.u_grid = parse_grid(j, "u_grid");
    c.c_grid = parse_grid(j, "c_grid");
    c.n_hops = j.value("n_hops", c.n_hops);
    c.max_n = j.value("max_n", c.max_n);
    if (j.contains("moment_orders")) {
        c.moment_orders.clear();
        for (const auto& x : j.at("moment_orders")) c.moment_orders.push_back(x.get<int>());
    }
    c.sim_runs = j.value("sim_runs", c.sim_runs);
    c.track_hops = j.value("track_hops", c.track_hops);
    c.sleep_sim = j.value("sleep", c.sleep_sim);
    c.conditioned = j.value("conditioned", c.conditioned);

    if (c.n_hops < 1) throw config_error("n_hops must be >= 1");
    if (c.max_n < 1) throw config_error("max_n must be >= 1");
    if (c.track_hops < 1) throw config_error("track_hops must be >= 1");
    return c;
}

namespace {

void run_single_hop(const ExperimentConfig& c, Table& t, ordered_json& extra) {
    const ModelParams p = validate_params(c.params);
    std::vector<double> grid = c.u_grid;
    if (grid.empty()) grid = linspace(p.ell - p.r, p.ell, 201);

    std::vector<double> emp;
    if (c.sim_runs > 0) {
        EnsembleResult ens = ensemble(p, c.sim_runs, c.seed, 1, c.sleep_sim, c.threads, 1);
        emp = ens.z_after.at(0);
        extra["sim_runs"] = ens.runs;
        extra["mean_deployment_count"] = ens.mean_count;
    }

    t.columns = {"u", "cdf"};
    if (!emp.empty()) t.columns.push_back("empirical");
    for (double u : grid) {
        std::vector<std::string> row{fmt12(u), fmt12(clamp01(sink_cdf(p.ell, u, p, c.mode)))};
        if (!emp.empty()) row.push_back(fmt12(empirical_cdf(emp, u)));
        t.add_row(row);
    }
}

void run_measure_compare(const ExperimentConfig& c, Table& t) {
    const ModelParams p = validate_params(c.params);
    std::vector<double> gammas = c.gamma_grid;
    if (gammas.empty()) gammas = {p.ell};

    t.columns = {"gamma", "u", "exact", "quadrature", "asym2", "asym3"};
    for (double g : gammas) {
        std::vector<double> us = c.u_grid;
        if (us.empty()) us = linspace(g - p.r, g, 51);
        for (double u : us) {
            t.add_row({fmt12(g), fmt12(u), fmt12(q_rescaled(g, u, p, MeasureMode::ExactElliptic)),
                       fmt12(q_rescaled(g, u, p, MeasureMode::Quadrature)),
                       fmt12(q_rescaled(g, u, p, MeasureMode::Asymptotic2)),
                       fmt12(q_rescaled(g, u, p, MeasureMode::Asymptotic3))});
        }
    }
}

void run_moments(const ExperimentConfig& c, Table& t) {
    const ModelParams p = validate_params(c.params);
    std::vector<double> gammas = c.gamma_grid;
    if (gammas.empty()) gammas = {p.ell};

    t.columns = {"gamma", "order", "numeric", "asymptotic", "rel_error"};
    for (double g : gammas) {
        for (int m : c.moment_orders) {
            const double num = moment_numeric(g, m, p, c.mode);
            const double asym = moment_asymptotic(g, m, p);
            const double rel = num != 0.0 ? std::fabs(asym - num) / std::fabs(num) : 0.0;
            t.add_row({fmt12(g), std::to_string(m), fmt12(num), fmt12(asym), fmt12(rel)});
        }
    }
}

void run_kl(const ExperimentConfig& c, Table& t) {
    const ModelParams p = validate_params(c.params);
    std::vector<double> gammas = c.gamma_grid;
    if (gammas.empty()) gammas = linspace(p.r + 0.5, p.ell, 20);

    t.columns = {"gamma", "kl"};
    for (double g : gammas) t.add_row({fmt12(g), fmt12(kl_divergence(p.ell, g, p, c.mode))});
}

void run_zn(const ExperimentConfig& c, Table& t, ordered_json& extra) {
    const ModelParams p = validate_params(c.params);
    std::vector<double> zs = c.z_grid;
    if (zs.empty()) zs = linspace(0.1 * p.r, 2.0 * p.r, 20);

    MultihopOptions opts;
    opts.model = c.model;
    opts.mode = c.mode;
    opts.threads = c.threads;
    QmcRule rule = c.rule;
    rule.seed = c.seed;
    const ZnResult res = full_zn(zs, c.n_hops, p, rule, opts);

    t.columns = {"z", "conditional", "conditional_se", "total", "total_se"};
    for (int k = 0; k < c.n_hops; ++k) {
        t.columns.push_back("void" + std::to_string(k));
        t.columns.push_back("void" + std::to_string(k) + "_se");
    }
    t.columns.push_back("samples");
    for (std::size_t j = 0; j < zs.size(); ++j) {
        std::vector<std::string> row{fmt12(zs[j]), fmt12(clamp01(res.conditional[j].value)),
                                     fmt12(res.conditional[j].std_error),
                                     fmt12(clamp01(res.total[j].value)),
                                     fmt12(res.total[j].std_error)};
        for (int k = 0; k < c.n_hops; ++k) {
            const Estimate& e = res.void_terms[static_cast<std::size_t>(k)][j];
            row.push_back(fmt12(clamp01(e.value)));
            row.push_back(fmt12(e.std_error));
        }
        row.push_back(std::to_string(res.conditional[j].samples));
        t.add_row(row);
    }
    extra["survival"] = res.survival.value;
    extra["survival_se"] = res.survival.std_error;
}

void run_hops(const ExperimentConfig& c, Table& t) {
    const ModelParams p = validate_params(c.params);
    MultihopOptions opts;
    opts.model = c.model;
    opts.mode = c.mode;
    opts.threads = c.threads;
    QmcRule rule = c.rule;
    rule.seed = c.seed;
    const std::vector<Estimate> cdf = hops_cdf(c.max_n, p, rule, opts, c.conditioned);

    t.columns = {"n", "p_cum", "std_error", "samples"};
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        t.add_row({std::to_string(i + 1), fmt12(clamp01(cdf[i].value)),
                   fmt12(cdf[i].std_error), std::to_string(cdf[i].samples)});
    }
}

void run_simulate(const ExperimentConfig& c, Table& t, ordered_json& extra) {
    const ModelParams p = validate_params(c.params);
    const EnsembleResult ens =
        ensemble(p, c.sim_runs, c.seed, c.track_hops, c.sleep_sim, c.threads);

    std::vector<double> zs = c.z_grid;
    if (zs.empty()) zs = linspace(0.05 * p.r, c.track_hops * p.r, 40);

    t.columns = {"z"};
    for (int k = 1; k <= c.track_hops; ++k) {
        t.columns.push_back("p_all_h" + std::to_string(k));
        t.columns.push_back("p_reach_h" + std::to_string(k));
    }
    const double runs = static_cast<double>(ens.runs);
    for (double z : zs) {
        std::vector<std::string> row{fmt12(z)};
        for (int k = 1; k <= c.track_hops; ++k) {
            const auto& us = ens.z_after[static_cast<std::size_t>(k - 1)];
            std::uint64_t all = 0, reach = 0, hit = 0;
            for (std::size_t i = 0; i < us.size(); ++i) {
                const bool below = p.ell - us[i] <= z;
                all += below;
                if (ens.relay_hops[i] >= k) {
                    ++reach;
                    hit += below;
                }
            }
            row.push_back(fmt12(all / runs));
            row.push_back(fmt12(reach ? static_cast<double>(hit) / reach
                                      : std::numeric_limits<double>::quiet_NaN()));
        }
        t.add_row(row);
    }
    extra["delivered_fraction"] = static_cast<double>(ens.delivered) / runs;
    extra["voided_fraction"] = static_cast<double>(ens.voided) / runs;
    extra["mean_deployment_count"] = ens.mean_count;
}

int run_validate(const ExperimentConfig& c, Table& t) {
    const ModelParams p = validate_params(c.params);
    int failed = 0;
    auto report = [&](const std::string& name, bool ok, double detail) {
        t.add_row({name, ok ? "pass" : "fail", fmt12(detail)});
        if (!ok) ++failed;
    };
    t.columns = {"check", "status", "detail"};

    {  // closed form vs adaptive quadrature of the defining integral; the
       // innermost 2% of the annulus is excluded -- there the difference of
       // O(1) elliptic terms cannot resolve Q ~ t^{3/2} to 1e-8 in doubles
        double worst = 0.0;
        for (double g : {2.0, 5.0, 10.0}) {
            for (double u : linspace(g - p.r + 0.02 * p.r, g, 11)) {
                const double qe = q_rescaled(g, u, p, MeasureMode::ExactElliptic);
                const double qq = q_rescaled(g, u, p, MeasureMode::Quadrature);
                worst = std::max(worst, std::fabs(qe - qq) / std::max(1e-300, qq));
            }
        }
        report("exact_vs_quadrature", worst <= 1e-8, worst);
    }
    {  // three-term boundary-layer expansion at gamma = 10
        double worst = 0.0;
        for (double u : linspace(9.0 + 1e-6, 10.0, 21)) {
            const double qe = q_rescaled(10.0, u, p, MeasureMode::ExactElliptic);
            const double qa = q_rescaled(10.0, u, p, MeasureMode::Asymptotic3);
            worst = std::max(worst, std::fabs(qa - qe) / std::max(1e-300, qe));
        }
        report("asym3_within_1pct", worst <= 0.01, worst);
    }
    {  // divergence of a law from itself
        const double d = kl_divergence(p.ell, p.ell, p);
        report("kl_self_zero", std::fabs(d) <= 1e-10, d);
    }
    {  // importance sampler inverse round trip
        const ExpansionCoeffs ec = expansion_coeffs(p.ell, p.r);
        const ImportanceSampler is(p.lambda, p.r, ec.q0);
        double worst = 0.0;
        for (double tq : linspace(1e-6, 1.0 - 1e-6, 101)) {
            const double cq = is.sample(tq);
            worst = std::max(worst, std::fabs(is.cdf(cq) - tq));
        }
        report("importance_round_trip", worst <= 1e-10, worst);
    }
    {  // CSV round trip
        Table small;
        small.columns = {"a", "b"};
        small.add_row({fmt12(1.0 / 3.0), fmt12(2026.0)});
        small.add_row({fmt12(-1e-9), fmt12(0.125)});
        const std::string once = small.to_csv();
        const std::string twice = read_csv(once).to_csv();
        report("csv_round_trip", once == twice, once == twice ? 0.0 : 1.0);
    }
    {  // farther nodes advance stochastically less: their hop CDF dominates
        Rng rng(c.seed);
        bool ok = true;
        for (int i = 0; i < 20 && ok; ++i) {
            const double g2 = 2.0 * p.r + 0.1 + rng.u01() * (p.ell - 2.0 * p.r - 0.1);
            const double g1 = g2 + rng.u01() * (p.ell - g2);
            const double cc = rng.u01() * p.r;
            const auto d1 = hop_distribution(g1, p);
            const auto d2 = hop_distribution(g2, p);
            ok = d1.cdf(cc) >= d2.cdf(cc) - 1e-12;
        }
        report("hop_cdf_ordering", ok, ok ? 0.0 : 1.0);
    }
    {  // one-hop law totals 1 at z = r through the path integrator
        QmcRule rule = c.rule;
        rule.points = std::min<std::uint64_t>(rule.points, 1u << 10);
        rule.seed = c.seed;
        MultihopOptions opts;
        opts.threads = c.threads;
        const ZnResult res = full_zn({p.r}, 1, p, rule, opts);
        const double total = res.total.at(0).value;
        report("one_hop_mass", std::fabs(total - 1.0) <= 0.01, total);
    }
    return failed;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    ordered_json extra = ordered_json::object();

    if (config.kind == "single-hop")
        run_single_hop(config, res.table, extra);
    else if (config.kind == "measure-compare")
        run_measure_compare(config, res.table);
    else if (config.kind == "moments")
        run_moments(config, res.table);
    else if (config.kind == "kl")
        run_kl(config, res.table);
    else if (config.kind == "zn")
        run_zn(config, res.table, extra);
    else if (config.kind == "hops")
        run_hops(config, res.table);
    else if (config.kind == "simulate")
        run_simulate(config, res.table, extra);
    else if (config.kind == "validate")
        res.checks_failed = run_validate(config, res.table);
    else
        throw config_error("unknown experiment kind: " + config.kind);

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

    const ModelParams p = validate_params(config.params);
    ordered_json manifest;
    manifest["kind"] = config.kind;
    manifest["params"] = {{"lambda", p.lambda}, {"r", p.r}, {"ell", p.ell},
                          {"p", p.p},           {"alpha", p.alpha}};
    manifest["mode"] = mode_name(config.mode);
    manifest["model"] = model_name(config.model);
    manifest["rule"] = rule_json(config.rule);
    manifest["seed"] = config.seed;
    manifest["threads"] = config.threads;
    manifest["format"] = config.format;
    manifest["n_hops"] = config.n_hops;
    manifest["max_n"] = config.max_n;
    manifest["moment_orders"] = config.moment_orders;
    manifest["sim_runs"] = config.sim_runs;
    manifest["track_hops"] = config.track_hops;
    manifest["sleep"] = config.sleep_sim;
    manifest["conditioned"] = config.conditioned;
    manifest["grids"] = {{"z", config.z_grid},
                         {"gamma", config.gamma_grid},
                         {"u", config.u_grid},
                         {"c", config.c_grid}};
    manifest["rows"] = res.table.rows.size();
    manifest["columns"] = res.table.columns;
    manifest["checks_failed"] = res.checks_failed;
    manifest["extra"] = extra;
    manifest["library_version"] = library_version();
    manifest["wall_time_ms"] = ms;
    res.manifest_json = manifest.dump(2) + "\n";
    return res;
}

}  // namespace ghl
