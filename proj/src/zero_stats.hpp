#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "formulas.hpp"
#include "reduction.hpp"
#include "roots.hpp"

namespace zerocorr {

// Observation disc centered at the chart origin, in scaled coordinates.
struct ScaledWindow {
    double radius = 5.0;
};

using PointSet = std::vector<std::complex<double>>;

// Map roots to sqrt(N)-scaled coordinates and clip to the window.
// Enforces the chart-validity guard radius <= sqrt(N)/2.
PointSet rescale_roots(const RootSet& rs, int degree, const ScaledWindow& w);

// Area of the intersection of the window disc with itself shifted by d
// (the translation edge-correction weight denominator).
double disc_set_covariance(double d, double radius);

struct PairCorrelationResult {
    CorrelationCurve curve;              // r = per-bin representative radius
    std::vector<uint64_t> pair_counts;   // raw pairs per bin (diagnostics)
    std::vector<uint8_t> empty_bin;      // warning flags
    double density = 0.0;                // pooled intensity estimate
    uint64_t samples = 0;
};

// Translation-corrected pair-correlation estimator.  Unordered pairs are
// counted once with weight 2 (symmetric-product normalization); self-pairs
// are excluded by construction, so the m = 1 diagonal atom never enters.
// For each bin, value = sum_s sum_pairs 2/A(d) / (S * density^2 * annulus)
// with A the disc set covariance; std_error from across-sample variance.
// The representative radius is sqrt((r_lo^2 + r_hi^2)/2), which removes the
// annulus-averaging bias at quadratic order.
// Requires point_sets.size() >= min_samples (>= 2) and edges ascending in
// (0, radius].
PairCorrelationResult pair_correlation_estimate(const std::vector<PointSet>& point_sets,
                                                const ScaledWindow& w,
                                                const std::vector<double>& edges,
                                                uint64_t min_samples = 2, int workers = 0);

// Mean count / window area with across-sample standard error.
MCEstimate density_estimate(const std::vector<PointSet>& point_sets, const ScaledWindow& w);

// Composite pipeline: sample degree-N sections (streams 0..samples-1), find
// roots, rescale and clip.  Deterministic per (seed, stream) regardless of
// the worker count.
std::vector<PointSet> sample_scaled_roots(int degree, uint64_t samples, uint64_t seed,
                                          const ScaledWindow& w, int workers = 0);

// Homogeneous Poisson configurations on the window disc: the complete
// spatial randomness baseline (g == 1) for estimator calibration.
std::vector<PointSet> sample_poisson_disc(double intensity, uint64_t samples, uint64_t seed,
                                          const ScaledWindow& w);

}  // namespace zerocorr
