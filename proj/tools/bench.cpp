// Timing harness: the parallel kernels against their serial reference, plus
// per-call costs of the measure evaluation modes. The parallel and serial
// paths must agree bit-for-bit (blocked reduction, fixed fold order), so the
// value columns double as a determinism check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ghl/experiment.hpp"
#include "ghl/parallel.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
    ghl::ModelParams params;  // lambda 30, r 1, ell 10
    std::vector<double> zs;
    for (int i = 0; i < 20; ++i) zs.push_back(0.1 + 1.9 * i / 19.0);

    ghl::QmcRule rule;
    rule.kind = ghl::RuleKind::Lattice;
    rule.points = 1u << 12;
    rule.shifts = 8;

    std::printf("%-28s %10s %10s %8s %12s\n", "kernel", "serial ms", "omp ms", "speedup",
                "max |diff|");

    {
        ghl::MultihopOptions opts;
        opts.threads = 1;
        auto t0 = Clock::now();
        const ghl::ZnResult a = ghl::full_zn(zs, 2, params, rule, opts);
        const double serial = ms_since(t0);

        opts.threads = 0;
        t0 = Clock::now();
        const ghl::ZnResult b = ghl::full_zn(zs, 2, params, rule, opts);
        const double omp = ms_since(t0);

        double diff = 0.0;
        for (std::size_t j = 0; j < zs.size(); ++j)
            diff = std::max(diff, std::fabs(a.conditional[j].value - b.conditional[j].value));
        std::printf("%-28s %10.1f %10.1f %8.2f %12.3e\n", "two-hop path integral", serial, omp,
                    serial / omp, diff);
    }

    {
        auto t0 = Clock::now();
        const ghl::EnsembleResult a = ghl::ensemble(params, 20000, 7, 3, false, 1);
        const double serial = ms_since(t0);

        t0 = Clock::now();
        const ghl::EnsembleResult b = ghl::ensemble(params, 20000, 7, 3, false, 0);
        const double omp = ms_since(t0);

        double diff = std::fabs(double(a.delivered) - double(b.delivered));
        for (int h = 0; h < 3; ++h) {
            double sa = 0.0, sb = 0.0;
            for (std::size_t i = 0; i < a.z_after[h].size(); ++i) {
                sa += a.z_after[h][i];
                sb += b.z_after[h][i];
            }
            diff = std::max(diff, std::fabs(sa - sb));
        }
        std::printf("%-28s %10.1f %10.1f %8.2f %12.3e\n", "routing ensemble (2e4 runs)", serial,
                    omp, serial / omp, diff);
    }

    {
        const int evals = 20000;
        volatile double sink = 0.0;
        for (ghl::MeasureMode mode : {ghl::MeasureMode::ExactElliptic,
                                      ghl::MeasureMode::Quadrature,
                                      ghl::MeasureMode::Asymptotic3}) {
            auto t0 = Clock::now();
            double acc = 0.0;
            for (int i = 0; i < evals; ++i) {
                const double u = 9.0 + (i + 0.5) / evals;
                acc += ghl::q_rescaled(10.0, u, params, mode);
            }
            sink = sink + acc;
            const double total = ms_since(t0);
            std::printf("measure eval %-15s %10.0f ns/call\n", ghl::mode_name(mode).c_str(),
                        1e6 * total / evals);
        }
        (void)sink;
    }
    return 0;
}
