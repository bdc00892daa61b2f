#include "ghl/qmc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace ghl {

namespace {

const std::vector<std::uint32_t>& prime_table() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<std::uint32_t> out;
        std::vector<bool> composite(2048, false);
        for (std::uint32_t i = 2; i < composite.size(); ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = 2 * i; j < composite.size(); j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace

std::uint32_t nth_prime(int j) {
    const auto& p = prime_table();
    if (j < 0 || static_cast<std::size_t>(j) >= p.size())
        throw config_error("nth_prime: index out of range");
    return p[static_cast<std::size_t>(j)];
}

double radical_inverse(std::uint64_t index, std::uint32_t base) {
    const double inv = 1.0 / base;
    double f = inv, v = 0.0;
    while (index) {
        v += static_cast<double>(index % base) * f;
        index /= base;
        f *= inv;
    }
    return v;
}

HaltonSequence::HaltonSequence(int dim, std::uint64_t leap) : dim_(dim), leap_(leap) {
    if (dim < 1) throw config_error("HaltonSequence: dim must be positive");
    if (leap == 0) throw config_error("HaltonSequence: leap must be positive");
    bases_.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        bases_[static_cast<std::size_t>(j)] = nth_prime(j);
        if (std::gcd(leap, static_cast<std::uint64_t>(bases_[static_cast<std::size_t>(j)])) != 1)
            throw config_error("HaltonSequence: leap shares a factor with base " +
                               std::to_string(bases_[static_cast<std::size_t>(j)]));
    }
}

void HaltonSequence::point(std::uint64_t k, double* out) const {
    const std::uint64_t index = (k + 1) * leap_;
    for (int j = 0; j < dim_; ++j)
        out[j] = radical_inverse(index, bases_[static_cast<std::size_t>(j)]);
}

Rank1Lattice::Rank1Lattice(std::uint64_t n, int dim) {
    if (n < 2) throw config_error("Rank1Lattice: n must be at least 2");
    if (dim < 1) throw config_error("Rank1Lattice: dim must be positive");
    korobov(n, dim);
}

Rank1Lattice::Rank1Lattice(const std::string& vector_file, int dim) {
    if (dim < 1) throw config_error("Rank1Lattice: dim must be positive");
    std::ifstream in(vector_file);
    if (!in) throw config_error("Rank1Lattice: cannot open " + vector_file);
    std::uint64_t n = 0;
    if (!(in >> n) || n < 2) throw config_error("Rank1Lattice: bad point count in " + vector_file);
    n_ = n;
    dim_ = dim;
    z_.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        std::uint64_t zj = 0;
        if (!(in >> zj))
            throw config_error("Rank1Lattice: generating vector shorter than dimension");
        z_[static_cast<std::size_t>(j)] = zj % n;
    }
}

void Rank1Lattice::korobov(std::uint64_t n, int dim) {
    n_ = n;
    dim_ = dim;
    // Golden-section Korobov parameter, forced odd so that even n does not
    // collapse the later coordinates onto coarse sublattices.
    std::uint64_t a =
        static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * 0.61803398874989485));
    if (a % 2 == 0) a += 1;
    a %= n;
    z_.resize(static_cast<std::size_t>(dim));
    std::uint64_t zj = 1;
    for (int j = 0; j < dim; ++j) {
        z_[static_cast<std::size_t>(j)] = zj;
        zj = (zj * a) % n;  // n < 2^32 in practice; products stay in range
    }
}

void Rank1Lattice::point(std::uint64_t k, const double* shift, double* out) const {
    const std::uint64_t km = k % n_;
    for (int j = 0; j < dim_; ++j) {
        const std::uint64_t num = (km * z_[static_cast<std::size_t>(j)]) % n_;
        double v = static_cast<double>(num) / static_cast<double>(n_) + shift[j];
        if (v >= 1.0) v -= 1.0;
        out[j] = v;
    }
}

double star_discrepancy_proxy(const std::vector<double>& points, int dim) {
    if (dim < 1) throw config_error("star_discrepancy_proxy: dim must be positive");
    const std::size_t n = points.size() / static_cast<std::size_t>(dim);
    if (n == 0 || points.size() != n * static_cast<std::size_t>(dim))
        throw config_error("star_discrepancy_proxy: point array does not match dim");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* a = points.data() + i * static_cast<std::size_t>(dim);
        double vol = 1.0;
        for (int j = 0; j < dim; ++j) vol *= a[j];
        std::size_t open = 0, closed = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double* x = points.data() + k * static_cast<std::size_t>(dim);
            bool lt = true, le = true;
            for (int j = 0; j < dim; ++j) {
                lt = lt && x[j] < a[j];
                le = le && x[j] <= a[j];
            }
            open += lt;
            closed += le;
        }
        const double fn = static_cast<double>(n);
        worst = std::max({worst, std::fabs(static_cast<double>(open) / fn - vol),
                          std::fabs(static_cast<double>(closed) / fn - vol)});
    }
    return worst;
}

ImportanceSampler::ImportanceSampler(double lambda_, double r_, double q0_, double c_max_)
    : lambda(lambda_), r(r_), q0(q0_), c_max(c_max_ < 0.0 ? r_ : c_max_) {
    if (!(lambda > 0.0) || !(r > 0.0) || !(q0 > 0.0))
        throw domain_error("ImportanceSampler: parameters must be positive");
    if (!(c_max > 0.0) || c_max > r)
        throw domain_error("ImportanceSampler: c_max must lie in (0, r]");
    const double t = r - c_max;
    f_lo = std::exp(-lambda * q0 * r * std::sqrt(r));
    delta = std::exp(-lambda * q0 * t * std::sqrt(t)) - f_lo;
    if (!(delta > 0.0)) throw domain_error("ImportanceSampler: degenerate truncation");
}

double ImportanceSampler::cdf(double c) const {
    if (c <= 0.0) return 0.0;
    if (c >= c_max) return 1.0;
    const double t = r - c;
    return (std::exp(-lambda * q0 * t * std::sqrt(t)) - f_lo) / delta;
}

double ImportanceSampler::pdf(double c) const {
    if (c < 0.0 || c > c_max) return 0.0;
    const double t = r - c;
    return 1.5 * lambda * q0 * std::sqrt(t) * std::exp(-lambda * q0 * t * std::sqrt(t)) / delta;
}

double ImportanceSampler::sample(double t01) const {
    const double target = t01 * delta + f_lo;
    const double t = std::pow(-std::log(target) / (lambda * q0), 2.0 / 3.0);
    const double c = r - t;
    return std::fmin(std::fmax(c, 0.0), c_max);
}

}  // namespace ghl
