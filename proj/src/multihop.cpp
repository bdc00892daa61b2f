#include "ghl/multihop.hpp"

#include <algorithm>
#include <cmath>

#include "ghl/geometry.hpp"

namespace ghl {

namespace {

// Accumulator layout for one path sweep. A walk contributes, depending on
// which horizons are set, the surviving weight after n_z hops with the
// advancement indicators, the void-terminated terms, and delivered mass
// bucketed by hop count.
struct Layout {
    int n_z = 0;     // z-horizon (0 = no zn accumulation): acc[0] = W_n,
                     // acc[1+j] = W_n 1(Z_n <= z_j),
                     // acc[1 + z_count + k*z_count + j] = void term k
    int z_count = 0;
    int max_n = 0;   // hops horizon (0 = none); buckets follow the zn block
    int steps = 0;   // hops to walk
    std::size_t hop_base = 0;  // acc offset of the N = m+2 bucket m

    std::size_t width() const {
        std::size_t w = 0;
        if (n_z > 0) w += 1 + static_cast<std::size_t>(z_count) * (1 + n_z);
        if (max_n > 1) w += static_cast<std::size_t>(max_n - 1);
        return w;
    }
};

struct PathContext {
    ModelParams params;
    PathModel model = PathModel::Dependent;
    MeasureMode mode = MeasureMode::Asymptotic3;
    Layout layout;
    std::vector<double> z_grid;
};

// One importance-sampled forwarding path driven by the QMC coordinates x:
// hop i consumes x[2(i-1)], x[2i-1] under the dependent model (advancement
// and relative angle) or x[i-1] alone under the independent one.
void walk_path(const double* x, const PathContext& ctx, double* acc) {
    const ModelParams& mp = ctx.params;
    const double lam = mp.lambda, r = mp.r, ell = mp.ell, p = mp.p;
    const Layout& L = ctx.layout;
    const int zc = L.z_count;
    const bool dep = ctx.model == PathModel::Dependent;

    // Void at the source: advancement stays at zero, below every z >= 0.
    if (L.n_z > 0) {
        const double void0 = std::exp(-lam * q_rescaled(ell, ell, mp, ctx.mode));
        for (int j = 0; j < zc; ++j)
            if (0.0 <= ctx.z_grid[static_cast<std::size_t>(j)]) acc[1 + zc + j] += void0;
    }

    PolarPoint prev2{0.0, 0.0};
    PolarPoint prev{ell, 0.0};
    bool have_prev2 = false;
    double w_total = 1.0;

    for (int i = 1; i <= L.steps; ++i) {
        const double g = prev.u;
        const ImportanceSampler is(lam, r, expansion_coeffs(g, r).q0);

        const double t = x[dep ? 2 * (i - 1) : i - 1];
        double c = is.sample(t);
        c = std::fmin(std::fmax(c, 1e-13 * r), r * (1.0 - 1e-13));
        const double u = g - c;
        const double fhat = is.pdf(c);
        const double psi = sink_angle(g, u, r);

        double w;
        PolarPoint cur{u, prev.theta};
        if (dep) {
            const double v = x[2 * i - 1];
            cur.theta = prev.theta + (2.0 * v - 1.0) * psi;
            double dens = lam;
            double qb = q_rescaled(g, u, mp, ctx.mode);
            if (have_prev2) {
                // Awake intensity drops to lambda (1-p) inside the overlap
                // with the predecessor's already-probed region.
                const double dx = cur.u * std::cos(cur.theta) - prev2.u * std::cos(prev2.theta);
                const double dy = cur.u * std::sin(cur.theta) - prev2.u * std::sin(prev2.theta);
                if (dx * dx + dy * dy <= r * r) dens = lam * (1.0 - p);
                const double qc = intersection_q(prev2, prev, u, mp, ctx.mode);
                qb = std::fmax(qb - p * qc, 0.0);
            }
            w = dens * 2.0 * psi * std::exp(-lam * qb) / fhat;
        } else {
            w = 2.0 * lam * psi * std::exp(-lam * q_rescaled(g, u, mp, ctx.mode)) / fhat;
        }

        if (u <= r) {
            // Within reach: one final hop to the sink, N = i + 1.
            if (L.max_n > 1 && i + 1 <= L.max_n) acc[L.hop_base + (i - 1)] += w_total * w;
            return;
        }

        w_total *= w;
        const double advanced = ell - u;

        if (L.n_z > 0 && i == L.n_z) {
            acc[0] += w_total;
            for (int j = 0; j < zc; ++j)
                if (advanced <= ctx.z_grid[static_cast<std::size_t>(j)]) acc[1 + j] += w_total;
        }
        if (L.n_z > 0 && i <= L.n_z - 1) {
            // Void at the next attempt: the current node's region, thinned by
            // the overlap with its own predecessor, holds nobody.
            double qv = q_rescaled(u, u, mp, ctx.mode);
            if (dep) {
                const double qcv = intersection_q(prev, cur, u, mp, ctx.mode);
                qv = std::fmax(qv - p * qcv, 0.0);
            }
            const double voidw = w_total * std::exp(-lam * qv);
            for (int j = 0; j < zc; ++j)
                if (advanced <= ctx.z_grid[static_cast<std::size_t>(j)])
                    acc[1 + zc + i * zc + j] += voidw;
        }

        prev2 = prev;
        have_prev2 = dep;
        prev = cur;
    }
}

ReplicateSums sweep(const PathContext& ctx, const QmcRule& rule, int threads) {
    const int per_hop = ctx.model == PathModel::Dependent ? 2 : 1;
    const int dim = std::max(1, per_hop * ctx.layout.steps);
    return replicate_accumulate(
        rule, dim, ctx.layout.width(),
        [&](const double* x, double* acc) { walk_path(x, ctx, acc); }, threads);
}

Estimate mean_se(const std::vector<double>& vals, std::uint64_t samples) {
    Estimate e;
    e.samples = samples;
    const std::size_t s = vals.size();
    double m = 0.0;
    for (double v : vals) m += v;
    m /= static_cast<double>(s);
    double var = 0.0;
    for (double v : vals) var += (v - m) * (v - m);
    e.value = m;
    e.std_error = s > 1 ? std::sqrt(var / (static_cast<double>(s) - 1.0) / static_cast<double>(s))
                        : 0.0;
    return e;
}

// Per-replicate ratio of two accumulated columns; the natural estimator for
// conditional quantities under randomized QMC.
Estimate ratio_estimate(const ReplicateSums& sums, std::size_t num_idx, std::size_t den_idx) {
    std::vector<double> ratios(static_cast<std::size_t>(sums.replicates));
    for (int i = 0; i < sums.replicates; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * sums.stride();
        const double den = sums.sums[row + den_idx];
        if (!(den > 0.0))
            throw nonconvergence("multihop: a replicate lost all path mass; raise the budget");
        ratios[static_cast<std::size_t>(i)] = sums.sums[row + num_idx] / den;
    }
    return mean_se(ratios, sums.per_replicate * static_cast<std::uint64_t>(sums.replicates));
}

Estimate combo_estimate(const ReplicateSums& sums, const std::vector<std::size_t>& cols) {
    std::vector<double> vals(static_cast<std::size_t>(sums.replicates), 0.0);
    for (int i = 0; i < sums.replicates; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * sums.stride();
        for (std::size_t c : cols) vals[static_cast<std::size_t>(i)] += sums.sums[row + c];
    }
    return mean_se(vals, sums.per_replicate * static_cast<std::uint64_t>(sums.replicates));
}

PathContext make_zn_context(int n, const std::vector<double>& z_grid, const ModelParams& params,
                            const MultihopOptions& opts) {
    if (n < 1) throw config_error("multihop: hop count must be positive");
    if (z_grid.empty()) throw config_error("multihop: z grid must not be empty");
    PathContext ctx;
    ctx.params = validate_params(params);
    ctx.model = opts.model;
    ctx.mode = opts.mode;
    ctx.layout.n_z = n;
    ctx.layout.z_count = static_cast<int>(z_grid.size());
    ctx.layout.steps = n;
    ctx.z_grid = z_grid;
    return ctx;
}

}  // namespace

ZnResult full_zn(const std::vector<double>& z_grid, int n, const ModelParams& params,
                 const QmcRule& rule, const MultihopOptions& opts) {
    const PathContext ctx = make_zn_context(n, z_grid, params, opts);
    const ReplicateSums sums = sweep(ctx, rule, opts.threads);
    const int zc = ctx.layout.z_count;

    ZnResult out;
    out.z_grid = z_grid;
    out.survival = sums.component(0);
    out.conditional.resize(static_cast<std::size_t>(zc));
    out.total.resize(static_cast<std::size_t>(zc));
    out.void_terms.assign(static_cast<std::size_t>(n),
                          std::vector<Estimate>(static_cast<std::size_t>(zc)));
    for (int j = 0; j < zc; ++j) {
        out.conditional[static_cast<std::size_t>(j)] =
            ratio_estimate(sums, static_cast<std::size_t>(1 + j), 0);
        std::vector<std::size_t> cols{static_cast<std::size_t>(1 + j)};
        for (int k = 0; k < n; ++k) {
            const std::size_t col = static_cast<std::size_t>(1 + zc + k * zc + j);
            out.void_terms[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                sums.component(col);
            cols.push_back(col);
        }
        out.total[static_cast<std::size_t>(j)] = combo_estimate(sums, cols);
    }
    if (rule.tol > 0.0)
        for (const Estimate& e : out.conditional)
            if (e.std_error > rule.tol)
                throw budget_exceeded("full_zn: std error misses the requested tolerance");
    return out;
}

Estimate conditional_zn(double z, int n, const ModelParams& params, const QmcRule& rule,
                        const MultihopOptions& opts) {
    return full_zn({z}, n, params, rule, opts).conditional[0];
}

Estimate independent_zn(double z, int n, const ModelParams& params, const QmcRule& rule,
                        MeasureMode mode, int threads) {
    MultihopOptions opts;
    opts.model = PathModel::Independent;
    opts.mode = mode;
    opts.threads = threads;
    return full_zn({z}, n, params, rule, opts).conditional[0];
}

Estimate void_terminated_zn(double z, int n, int k, const ModelParams& params,
                            const QmcRule& rule, const MultihopOptions& opts) {
    if (k >= n) throw config_error("void_terminated_zn: need k < n");
    const ZnResult res = full_zn({z}, n, params, rule, opts);
    if (k >= 0) return res.void_terms[static_cast<std::size_t>(k)][0];
    Estimate sum;  // k = -1: all void terms combined
    double var = 0.0;
    for (const auto& term : res.void_terms) {
        sum.value += term[0].value;
        var += term[0].std_error * term[0].std_error;
        sum.samples = term[0].samples;
    }
    sum.std_error = std::sqrt(var);
    return sum;
}

std::vector<Estimate> hops_cdf(int max_n, const ModelParams& params, const QmcRule& rule,
                               const MultihopOptions& opts, bool conditioned) {
    if (max_n < 1) throw config_error("hops_cdf: max_n must be positive");
    std::vector<Estimate> out(static_cast<std::size_t>(max_n));
    if (max_n == 1) return out;  // the source is never within reach (ell > r)

    PathContext ctx;
    ctx.params = validate_params(params);
    ctx.model = opts.model;
    ctx.mode = opts.mode;
    ctx.layout.max_n = max_n;
    ctx.layout.steps = max_n - 1;
    const ReplicateSums sums = sweep(ctx, rule, opts.threads);
    const std::uint64_t samples = sums.per_replicate * static_cast<std::uint64_t>(sums.replicates);

    // Per-replicate prefix masses P(N <= n); conditioning divides by the
    // delivered mass within the horizon, replicate by replicate.
    const int s = sums.replicates;
    std::vector<double> prefix(static_cast<std::size_t>(s));
    std::vector<double> horizon(static_cast<std::size_t>(s), 0.0);
    if (conditioned)
        for (int i = 0; i < s; ++i) {
            const std::size_t row = static_cast<std::size_t>(i) * sums.stride();
            for (int m = 0; m <= max_n - 2; ++m) horizon[static_cast<std::size_t>(i)] += sums.sums[row + static_cast<std::size_t>(m)];
            if (!(horizon[static_cast<std::size_t>(i)] > 0.0))
                throw nonconvergence("hops_cdf: no delivered mass in a replicate; raise the budget");
        }
    std::fill(prefix.begin(), prefix.end(), 0.0);
    for (int n = 2; n <= max_n; ++n) {
        std::vector<double> vals(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            const std::size_t row = static_cast<std::size_t>(i) * sums.stride();
            prefix[static_cast<std::size_t>(i)] += sums.sums[row + static_cast<std::size_t>(n - 2)];
            vals[static_cast<std::size_t>(i)] =
                conditioned ? prefix[static_cast<std::size_t>(i)] / horizon[static_cast<std::size_t>(i)]
                            : prefix[static_cast<std::size_t>(i)];
        }
        out[static_cast<std::size_t>(n - 1)] = mean_se(vals, samples);
    }
    return out;
}

}  // namespace ghl
