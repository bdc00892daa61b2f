#pragma once

#include <cstdint>
#include <vector>

#include "ghl/params.hpp"

namespace ghl {

// One sampled deployment inside the sink-centred disk of radius ell. In
// (u, theta) coordinates a density lambda/u process is homogeneous, so the
// count is Poisson(2 pi ell density), distances are iid U[0, ell] (stored
// sorted) and angles iid U(-pi, pi].
struct Deployment {
    std::vector<double> u;      // ascending
    std::vector<double> theta;  // matched to u
    std::vector<double> px, py; // Cartesian cache for distance tests
};

class Rng;

Deployment sample_deployment(double density, double ell, Rng& rng);

// Outcome of greedy forwarding on one deployment: sink distances after each
// hop, starting from the source at (ell, 0). A hop goes to the awake node
// strictly closer to the sink within radius r (minimum distance; ties by
// smaller |relative angle|, then index). Forwarding stops on delivery (node
// within r of the sink hands straight to it) or on a void (no candidate).
struct RouteRecord {
    std::vector<double> u_after;  // u_1, u_2, ... relay distances
    bool delivered = false;
    int hops = 0;        // total hops on delivery (includes the final one), else 0
    bool voided = false; // stranded before reaching the sink
};

// Route on an explicit deployment. `awake_p < 1` re-draws each candidate's
// awake state independently on every attempt (sleep scheduling); the
// deployment must then have been sampled at the underlying density alpha.
RouteRecord route_greedy(const Deployment& dep, const ModelParams& params, Rng& rng,
                         double awake_p = 1.0, int max_hops = 1 << 20);

// Ensemble over independent deployments, one RNG substream per run.
// z_after[h][run] is the sink distance after hop h+1, frozen at the last
// node when the walk stopped earlier (void or delivery); relay_hops says how
// many real relay hops the run took, so conditional statistics can filter.
struct EnsembleResult {
    std::vector<std::vector<double>> z_after;
    std::vector<int> relay_hops;
    std::vector<int> delivery_hops;  // 0 when not delivered
    std::uint64_t delivered = 0;
    std::uint64_t voided = 0;
    std::uint64_t runs = 0;
    double mean_count = 0.0;  // average deployment size
};

EnsembleResult ensemble(const ModelParams& params, std::uint64_t runs, std::uint64_t seed,
                        int track_hops = 3, bool sleep = false, int threads = 0,
                        int max_hops = 1 << 20);

// P(X <= x) of a sample; the sample need not be sorted.
double empirical_cdf(const std::vector<double>& sample, double x);

}  // namespace ghl
