#include "zero_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "philox_rng.hpp"

namespace zerocorr {

namespace {

constexpr double kPi = 3.141592653589793238462643;

void validate_window(const ScaledWindow& w) {
    if (!(w.radius > 0.0)) throw std::invalid_argument("window radius must be > 0");
}

void validate_window_for_degree(const ScaledWindow& w, int degree) {
    validate_window(w);
    if (w.radius > 0.5 * std::sqrt(static_cast<double>(degree)))
        throw std::invalid_argument("window radius " + std::to_string(w.radius) +
                                    " exceeds sqrt(N)/2 chart validity bound");
}

}  // namespace

PointSet rescale_roots(const RootSet& rs, int degree, const ScaledWindow& w) {
    if (degree != rs.degree)
        throw std::invalid_argument("rescale_roots: degree does not match root set");
    validate_window_for_degree(w, degree);
    const double scale = std::sqrt(static_cast<double>(degree));
    PointSet out;
    for (const auto& z : rs.roots) {
        const auto scaled = scale * z;
        if (std::abs(scaled) <= w.radius) out.push_back(scaled);
    }
    return out;
}

double disc_set_covariance(double d, double radius) {
    if (d <= 0.0) return kPi * radius * radius;
    if (d >= 2.0 * radius) return 0.0;
    const double half = 0.5 * d;
    return 2.0 * radius * radius * std::acos(half / radius) -
           half * std::sqrt(4.0 * radius * radius - d * d);
}

PairCorrelationResult pair_correlation_estimate(const std::vector<PointSet>& point_sets,
                                                const ScaledWindow& w,
                                                const std::vector<double>& edges,
                                                uint64_t min_samples, int workers) {
    validate_window(w);
    if (min_samples < 2) min_samples = 2;
    if (point_sets.size() < min_samples)
        throw std::invalid_argument("pair_correlation_estimate: need at least " +
                                    std::to_string(min_samples) + " samples, got " +
                                    std::to_string(point_sets.size()));
    if (edges.size() < 2)
        throw std::invalid_argument("pair_correlation_estimate: need at least one bin");
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw std::invalid_argument("pair_correlation_estimate: edges must ascend");
    if (!(edges.front() >= 0.0) || edges.back() > w.radius)
        throw std::invalid_argument("pair_correlation_estimate: bins must lie in (0, radius]");

    const size_t n_bins = edges.size() - 1;
    const uint64_t n_samples = point_sets.size();

    struct Chunk {
        std::vector<double> sum, sum_sq;
        std::vector<uint64_t> pairs;
        uint64_t points = 0;
    };
    const auto chunks = map_chunks<Chunk>(
        n_samples, 64, workers, [&](uint64_t begin, uint64_t end) {
            Chunk acc;
            acc.sum.assign(n_bins, 0.0);
            acc.sum_sq.assign(n_bins, 0.0);
            acc.pairs.assign(n_bins, 0);
            std::vector<double> y(n_bins);
            for (uint64_t s = begin; s < end; ++s) {
                const auto& pts = point_sets[s];
                acc.points += pts.size();
                std::fill(y.begin(), y.end(), 0.0);
                for (size_t i = 0; i < pts.size(); ++i) {
                    for (size_t j = i + 1; j < pts.size(); ++j) {
                        const double d = std::abs(pts[i] - pts[j]);
                        if (d < edges.front() || d >= edges.back()) continue;
                        const size_t b =
                            std::upper_bound(edges.begin(), edges.end(), d) - edges.begin() - 1;
                        y[b] += 2.0 / disc_set_covariance(d, w.radius);
                        ++acc.pairs[b];
                    }
                }
                for (size_t b = 0; b < n_bins; ++b) {
                    acc.sum[b] += y[b];
                    acc.sum_sq[b] += y[b] * y[b];
                }
            }
            return acc;
        });

    std::vector<double> sum(n_bins, 0.0), sum_sq(n_bins, 0.0);
    std::vector<uint64_t> pairs(n_bins, 0);
    uint64_t total_points = 0;
    for (const auto& c : chunks) {
        for (size_t b = 0; b < n_bins; ++b) {
            sum[b] += c.sum[b];
            sum_sq[b] += c.sum_sq[b];
            pairs[b] += c.pairs[b];
        }
        total_points += c.points;
    }

    const double area = kPi * w.radius * w.radius;
    const double density =
        static_cast<double>(total_points) / (static_cast<double>(n_samples) * area);
    if (!(density > 0.0))
        throw std::invalid_argument("pair_correlation_estimate: no points in any sample");

    PairCorrelationResult out;
    out.samples = n_samples;
    out.density = density;
    out.pair_counts = std::move(pairs);
    out.empty_bin.assign(n_bins, 0);
    out.curve.r.resize(n_bins);
    out.curve.value.resize(n_bins);
    out.curve.std_error.resize(n_bins);
    const double s_count = static_cast<double>(n_samples);
    for (size_t b = 0; b < n_bins; ++b) {
        const double lo = edges[b], hi = edges[b + 1];
        const double annulus = kPi * (hi * hi - lo * lo);
        const double norm = density * density * annulus;
        const double mean = sum[b] / s_count;
        const double var =
            std::max(0.0, (sum_sq[b] - s_count * mean * mean) / (s_count - 1.0));
        out.curve.r[b] = std::sqrt(0.5 * (lo * lo + hi * hi));
        out.curve.value[b] = mean / norm;
        out.curve.std_error[b] = std::sqrt(var / s_count) / norm;
        out.empty_bin[b] = out.pair_counts[b] == 0 ? 1 : 0;
    }
    return out;
}

MCEstimate density_estimate(const std::vector<PointSet>& point_sets, const ScaledWindow& w) {
    validate_window(w);
    if (point_sets.empty())
        throw std::invalid_argument("density_estimate: need at least one sample");
    const double area = kPi * w.radius * w.radius;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& pts : point_sets) {
        const double c = static_cast<double>(pts.size());
        sum += c;
        sum_sq += c * c;
    }
    const double n = static_cast<double>(point_sets.size());
    MCEstimate est;
    est.samples = point_sets.size();
    est.value = sum / n / area;
    if (point_sets.size() > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        est.std_error = std::sqrt(var / n) / area;
    }
    return est;
}

std::vector<PointSet> sample_scaled_roots(int degree, uint64_t samples, uint64_t seed,
                                          const ScaledWindow& w, int workers) {
    if (samples < 1) throw std::invalid_argument("sample_scaled_roots: samples must be >= 1");
    validate_window_for_degree(w, degree);
    std::vector<PointSet> out(samples);
    EnsembleParams params{1, degree, seed};
    map_chunks<int>(samples, 8, workers, [&](uint64_t begin, uint64_t end) {
        for (uint64_t s = begin; s < end; ++s) {
            // Resample on the probability-zero degenerate draws.
            for (uint64_t attempt = 0;; ++attempt) {
                const auto section = sample_section(params, s + (attempt << 48));
                if (std::abs(section.coefficients.back()) == 0.0) continue;
                out[s] = rescale_roots(find_roots(section), degree, w);
                break;
            }
        }
        return 0;
    });
    return out;
}

std::vector<PointSet> sample_poisson_disc(double intensity, uint64_t samples, uint64_t seed,
                                          const ScaledWindow& w) {
    if (!(intensity > 0.0)) throw std::invalid_argument("sample_poisson_disc: intensity > 0");
    if (samples < 1) throw std::invalid_argument("sample_poisson_disc: samples must be >= 1");
    validate_window(w);
    const double mean = intensity * kPi * w.radius * w.radius;
    std::vector<PointSet> out(samples);
    for (uint64_t s = 0; s < samples; ++s) {
        RandomStream rng(seed, s);
        const uint64_t count = rng.next_poisson(mean);
        PointSet pts;
        pts.reserve(count);
        for (uint64_t i = 0; i < count; ++i) {
            const double r = w.radius * std::sqrt(rng.next_uniform_half_open());
            const double phi = 2.0 * kPi * rng.next_uniform_half_open();
            pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
        }
        out[s] = std::move(pts);
    }
    return out;
}

}  // namespace zerocorr
