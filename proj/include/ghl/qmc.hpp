#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ghl/params.hpp"
#include "ghl/parallel.hpp"
#include "ghl/rng.hpp"

namespace ghl {

// Point-set generators for quasi-Monte Carlo integration over [0,1)^dim.

// Digit-reversal (radical inverse) sequences in the first `dim` prime bases,
// with index leaping to decorrelate high dimensions: point k uses index
// (k+1) * leap. The leap must be coprime to every base in use.
class HaltonSequence {
  public:
    explicit HaltonSequence(int dim, std::uint64_t leap = 409);
    void point(std::uint64_t k, double* out) const;
    int dim() const { return dim_; }

  private:
    int dim_;
    std::uint64_t leap_;
    std::vector<std::uint32_t> bases_;
};

double radical_inverse(std::uint64_t index, std::uint32_t base);

// Rank-1 lattice: x_k = frac(k * z / n + shift) for k = 1..n. The generating
// vector either comes from a file (one integer per line, first line = n) or
// falls back to a Korobov construction z_j = a^j mod n with a near the
// golden-section fraction of n.
class Rank1Lattice {
  public:
    Rank1Lattice(std::uint64_t n, int dim);                 // Korobov fallback
    Rank1Lattice(const std::string& vector_file, int dim);  // from file
    // k is the 1-based lattice index (k = n wraps to the shift itself).
    void point(std::uint64_t k, const double* shift, double* out) const;
    std::uint64_t n() const { return n_; }
    int dim() const { return dim_; }
    const std::vector<std::uint64_t>& z() const { return z_; }

  private:
    void korobov(std::uint64_t n, int dim);
    std::uint64_t n_ = 0;
    int dim_ = 0;
    std::vector<std::uint64_t> z_;
};

std::uint32_t nth_prime(int j);  // j >= 0: 2, 3, 5, ...

// Proxy for the star discrepancy: largest gap between the empirical measure
// of boxes [0, a) anchored at the origin and their volume, probing only the
// boxes cornered at the points themselves (the classical lower bound). Good
// enough to rank point sets in a few dimensions.
double star_discrepancy_proxy(const std::vector<double>& points, int dim);

enum class RuleKind { Halton, Lattice };

struct QmcRule {
    RuleKind kind = RuleKind::Halton;
    std::uint64_t points = 1u << 13;  // Halton: total points; Lattice: n per shift
    int shifts = 10;                  // lattice randomization count
    std::uint64_t leap = 409;         // Halton leap
    std::uint64_t seed = 2026;        // shift stream
    std::string vector_file;          // optional lattice generating vector
    double tol = 0.0;                 // >0: required std error on the lead component
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Per-component means and standard errors across randomization replicates
// (lattice shifts, or 16 contiguous batches of the Halton stream).
struct ReplicateSums {
    std::vector<double> sums;      // replicate-major: [rep * width + j], mean per point
    std::uint64_t per_replicate = 0;
    int replicates = 0;

    Estimate component(std::size_t j) const {
        Estimate e;
        e.samples = per_replicate * static_cast<std::uint64_t>(replicates);
        double m = 0.0;
        for (int s = 0; s < replicates; ++s) m += sums[static_cast<std::size_t>(s) * stride() + j];
        m /= replicates;
        double v = 0.0;
        for (int s = 0; s < replicates; ++s) {
            const double d = sums[static_cast<std::size_t>(s) * stride() + j] - m;
            v += d * d;
        }
        e.value = m;
        e.std_error = replicates > 1 ? std::sqrt(v / (replicates - 1.0) / replicates) : 0.0;
        return e;
    }

    std::size_t stride() const { return sums.size() / static_cast<std::size_t>(replicates); }
};

// Evaluate eval(x, acc) over the rule's point set, replicate by replicate.
// eval must add its width contributions into acc; each replicate's sums are
// normalized to means over that replicate's points.
template <class Eval>
ReplicateSums replicate_accumulate(const QmcRule& rule, int dim, std::size_t width,
                                   Eval&& eval, int threads = 0) {
    if (dim < 1 || dim > 64) throw config_error("replicate_accumulate: dim must be in [1, 64]");
    ReplicateSums out;
    if (rule.kind == RuleKind::Lattice) {
        Rank1Lattice lat = rule.vector_file.empty()
                               ? Rank1Lattice(rule.points, dim)
                               : Rank1Lattice(rule.vector_file, dim);
        const int S = rule.shifts > 0 ? rule.shifts : 1;
        out.replicates = S;
        out.per_replicate = lat.n();
        out.sums.assign(static_cast<std::size_t>(S) * width, 0.0);
        std::vector<double> shift(static_cast<std::size_t>(dim));
        std::vector<double> row(width);
        for (int s = 0; s < S; ++s) {
            Rng rng = Rng::substream(rule.seed, static_cast<std::uint64_t>(s));
            for (int j = 0; j < dim; ++j) shift[static_cast<std::size_t>(j)] = rng.u01();
            par::blocked_accumulate(
                lat.n(), width, row.data(),
                [&](std::size_t i, double* acc) {
                    double x[64];
                    lat.point(static_cast<std::uint64_t>(i) + 1, shift.data(), x);
                    eval(x, acc);
                },
                threads);
            for (std::size_t j = 0; j < width; ++j)
                out.sums[static_cast<std::size_t>(s) * width + j] =
                    row[j] / static_cast<double>(lat.n());
        }
    } else {
        constexpr int kBatches = 16;
        std::uint64_t m = rule.points / kBatches;
        if (m == 0) m = 1;
        HaltonSequence seq(dim, rule.leap);
        out.replicates = kBatches;
        out.per_replicate = m;
        out.sums.assign(static_cast<std::size_t>(kBatches) * width, 0.0);
        std::vector<double> row(width);
        for (int s = 0; s < kBatches; ++s) {
            const std::uint64_t base = static_cast<std::uint64_t>(s) * m;
            par::blocked_accumulate(
                m, width, row.data(),
                [&](std::size_t i, double* acc) {
                    double x[64];
                    seq.point(base + i, x);
                    eval(x, acc);
                },
                threads);
            for (std::size_t j = 0; j < width; ++j)
                out.sums[static_cast<std::size_t>(s) * width + j] =
                    row[j] / static_cast<double>(m);
        }
    }
    return out;
}

// Scalar convenience wrapper. Throws budget_exceeded when rule.tol > 0 and
// the replicate spread misses it at the configured point budget.
template <class F>
Estimate randomized_estimate(const QmcRule& rule, int dim, F&& f, int threads = 0) {
    auto sums = replicate_accumulate(
        rule, dim, 1, [&](const double* x, double* acc) { acc[0] += f(x); }, threads);
    Estimate e = sums.component(0);
    if (rule.tol > 0.0 && e.std_error > rule.tol)
        throw budget_exceeded("randomized_estimate: std error " + std::to_string(e.std_error) +
                              " exceeds tolerance at the configured point budget");
    return e;
}

// Importance law for the hop advancement used by the path integrals: a
// stretched-exponential tail F(c) ~ exp(-lambda q0 (r-c)^{3/2}) matching the
// near-boundary decay of the true hop law, truncated to [0, c_max].
struct ImportanceSampler {
    double lambda, r, q0, c_max;
    double f_lo, delta;  // normalization cache

    ImportanceSampler(double lambda_, double r_, double q0_, double c_max_ = -1.0);
    double cdf(double c) const;
    double pdf(double c) const;
    double sample(double t) const;  // inverse CDF, t in [0,1)
};

}  // namespace ghl
