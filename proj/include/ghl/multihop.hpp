#pragma once

#include <vector>

#include "ghl/hop.hpp"
#include "ghl/qmc.hpp"

namespace ghl {

// How successive hops interact:
//  - Independent: every hop draws from the one-hop law at the current sink
//    distance, forgetting that the previous relay saw an empty overlap.
//  - Dependent: the feasible region is thinned by the predecessor's observed
//    empty region (fully for p = 1, by the awake fraction p under sleep
//    scheduling, where sleeping nodes are re-drawn on each attempt).
enum class PathModel { Independent, Dependent };

// Quantities for the remaining distance Z_n after n relay hops at the z-grid
// points, all computed in one sweep over the QMC point set:
//  - conditional[j]   = P(Z_n <= z_j | every hop so far found a relay)
//  - void_terms[k][j] = P(first empty feasible region occurs at the node
//    reached by hop k, and its distance is <= z_j), k = 0 being the source
//  - total[j] = unconditional P(Z_n <= z_j): conditional numerator + voids.
struct ZnResult {
    std::vector<double> z_grid;
    std::vector<Estimate> conditional;
    std::vector<std::vector<Estimate>> void_terms;
    std::vector<Estimate> total;
    Estimate survival;  // P(no void among the first n hops), the denominator
};

struct MultihopOptions {
    PathModel model = PathModel::Dependent;
    MeasureMode mode = MeasureMode::Asymptotic3;
    int threads = 0;
};

// CDF of the remaining distance conditioned on n successful hops.
Estimate conditional_zn(double z, int n, const ModelParams& params, const QmcRule& rule,
                        const MultihopOptions& opts = {});

// Same under the independent model (kept as a named entry point because the
// two integrals have different dimension: n vs 2n coordinates per path).
Estimate independent_zn(double z, int n, const ModelParams& params, const QmcRule& rule,
                        MeasureMode mode = MeasureMode::Asymptotic3, int threads = 0);

// Probability that progress terminates at the node reached by hop k with
// remaining distance <= z; k = -1 sums over all k < n.
Estimate void_terminated_zn(double z, int n, int k, const ModelParams& params,
                            const QmcRule& rule, const MultihopOptions& opts = {});

// Everything at once over a z-grid; the cheap way to get the full law.
ZnResult full_zn(const std::vector<double>& z_grid, int n, const ModelParams& params,
                 const QmcRule& rule, const MultihopOptions& opts = {});

// P(N <= n) for n = 1..max_n, where N counts hops until the sink is within
// reach (delivery) -- paths that die in a void never deliver and contribute
// nothing at any n. If `conditioned`, divides by the delivered mass within
// the horizon, giving the hop-count law of successful paths.
std::vector<Estimate> hops_cdf(int max_n, const ModelParams& params, const QmcRule& rule,
                               const MultihopOptions& opts = {}, bool conditioned = false);

}  // namespace ghl
