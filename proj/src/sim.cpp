#include "ghl/sim.hpp"

#include <algorithm>
#include <cmath>

#include "ghl/parallel.hpp"
#include "ghl/rng.hpp"

namespace ghl {

Deployment sample_deployment(double density, double ell, Rng& rng) {
    if (!(density > 0.0) || !(ell > 0.0))
        throw domain_error("sample_deployment: density and ell must be positive");
    Deployment dep;
    const double mean = 2.0 * density * kPi * ell;
    const std::uint64_t count = rng.poisson(mean);

    // Sorted U[0, ell] distances via the exponential-spacings construction:
    // normalized partial sums of count+1 exponentials are the order
    // statistics of count uniforms. O(n) instead of a sort.
    dep.u.resize(count);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        acc += rng.exponential();
        dep.u[i] = acc;
    }
    acc += rng.exponential();
    const double scale = ell / acc;
    for (double& v : dep.u) v *= scale;

    dep.theta.resize(count);
    dep.px.resize(count);
    dep.py.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double th = rng.uniform(-kPi, kPi);
        dep.theta[i] = th == -kPi ? kPi : th;  // keep angles in (-pi, pi]
        dep.px[i] = dep.u[i] * std::cos(dep.theta[i]);
        dep.py[i] = dep.u[i] * std::sin(dep.theta[i]);
    }
    return dep;
}

namespace {

// Index of the greedy choice among awake nodes in [uc - r, uc) within radius
// r of (xc, yc), or -1. Minimum sink distance; ties prefer the smaller
// |relative angle|, then the smaller index.
int greedy_step(const Deployment& dep, double uc, double thc, double xc, double yc,
                const ModelParams& params, double awake_p, Rng& rng) {
    const double r = params.r;
    const auto lo_it = std::lower_bound(dep.u.begin(), dep.u.end(), uc - r);
    const auto hi_it = std::lower_bound(dep.u.begin(), dep.u.end(), uc);
    const std::size_t lo = static_cast<std::size_t>(lo_it - dep.u.begin());
    const std::size_t hi = static_cast<std::size_t>(hi_it - dep.u.begin());

    int best = -1;
    double best_u = 0.0, best_ang = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
        const double dx = dep.px[j] - xc, dy = dep.py[j] - yc;
        if (dx * dx + dy * dy > r * r) continue;
        if (awake_p < 1.0 && !(rng.u01() < awake_p)) continue;
        if (best >= 0 && dep.u[j] > best_u) continue;
        const double ang = std::fabs(wrap_angle(dep.theta[j] - thc));
        if (best >= 0 && dep.u[j] == best_u && ang >= best_ang) continue;
        best = static_cast<int>(j);
        best_u = dep.u[j];
        best_ang = ang;
    }
    return best;
}

}  // namespace

RouteRecord route_greedy(const Deployment& dep, const ModelParams& params, Rng& rng,
                         double awake_p, int max_hops) {
    RouteRecord rec;
    double uc = params.ell, thc = 0.0, xc = params.ell, yc = 0.0;
    while (rec.hops < max_hops) {
        const int j = greedy_step(dep, uc, thc, xc, yc, params, awake_p, rng);
        if (j < 0) {
            rec.voided = true;
            return rec;
        }
        uc = dep.u[static_cast<std::size_t>(j)];
        thc = dep.theta[static_cast<std::size_t>(j)];
        xc = dep.px[static_cast<std::size_t>(j)];
        yc = dep.py[static_cast<std::size_t>(j)];
        rec.u_after.push_back(uc);
        rec.hops += 1;
        if (uc <= params.r) {
            rec.delivered = true;
            rec.hops += 1;  // the final hop straight to the sink
            return rec;
        }
    }
    return rec;  // hop budget exhausted; neither delivered nor voided
}

EnsembleResult ensemble(const ModelParams& raw, std::uint64_t runs, std::uint64_t seed,
                        int track_hops, bool sleep, int threads, int max_hops) {
    const ModelParams params = validate_params(raw);
    if (track_hops < 1) throw config_error("ensemble: track_hops must be positive");

    EnsembleResult res;
    res.runs = runs;
    res.z_after.assign(static_cast<std::size_t>(track_hops), std::vector<double>(runs, 0.0));
    res.relay_hops.assign(runs, 0);
    res.delivery_hops.assign(runs, 0);

    // Each run draws from its own substream, so the ensemble is reproducible
    // for any thread count; counters are reduced deterministically after.
    const double density = sleep ? params.alpha : params.lambda;
    const double awake_p = sleep ? params.p : 1.0;

    std::vector<double> counters(3, 0.0);
    par::blocked_accumulate(
        runs, 3, counters.data(),
        [&](std::size_t run, double* acc) {
            Rng rng = Rng::substream(seed, run);
            const Deployment dep = sample_deployment(density, params.ell, rng);
            const RouteRecord rec = route_greedy(dep, params, rng, awake_p, max_hops);
            for (int h = 0; h < track_hops; ++h) {
                const std::size_t idx = static_cast<std::size_t>(h);
                const double frozen =
                    rec.u_after.empty()
                        ? params.ell
                        : rec.u_after[std::min(idx, rec.u_after.size() - 1)];
                res.z_after[idx][run] = frozen;
            }
            res.relay_hops[run] = static_cast<int>(rec.u_after.size());
            res.delivery_hops[run] = rec.delivered ? rec.hops : 0;
            acc[0] += rec.delivered ? 1.0 : 0.0;
            acc[1] += rec.voided ? 1.0 : 0.0;
            acc[2] += static_cast<double>(dep.u.size());
        },
        threads);

    res.delivered = static_cast<std::uint64_t>(counters[0] + 0.5);
    res.voided = static_cast<std::uint64_t>(counters[1] + 0.5);
    res.mean_count = runs > 0 ? counters[2] / static_cast<double>(runs) : 0.0;
    return res;
}

double empirical_cdf(const std::vector<double>& sample, double x) {
    if (sample.empty()) throw domain_error("empirical_cdf: empty sample");
    std::size_t count = 0;
    for (double v : sample) count += v <= x;
    return static_cast<double>(count) / static_cast<double>(sample.size());
}

}  // namespace ghl
