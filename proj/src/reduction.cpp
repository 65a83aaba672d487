#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "philox_rng.hpp"
#include "quadrature.hpp"

namespace zerocorr {

namespace {

constexpr double kGramTolerance = 1e-9;

void validate_gram(const GramMatrix& g) {
    if (g.n < 1) throw std::invalid_argument("gram_to_xi: n must be >= 1");
    if (g.entries.size() != static_cast<size_t>(g.n) * g.n)
        throw std::invalid_argument("gram_to_xi: entry count does not match n");
    for (int j = 0; j < g.n; ++j) {
        if (std::abs(g.at(j, j) - cdouble(1.0, 0.0)) > kGramTolerance)
            throw std::invalid_argument("gram_to_xi: diagonal entry " + std::to_string(j) +
                                        " is not 1 (vectors must be unit norm)");
        for (int k = 0; k < j; ++k) {
            if (std::abs(g.at(j, k) - std::conj(g.at(k, j))) > kGramTolerance)
                throw std::invalid_argument("gram_to_xi: matrix is not Hermitian at (" +
                                            std::to_string(j) + "," + std::to_string(k) + ")");
            if (std::abs(g.at(j, k)) > 1.0 + kGramTolerance)
                throw std::invalid_argument("gram_to_xi: off-diagonal modulus exceeds 1 at (" +
                                            std::to_string(j) + "," + std::to_string(k) + ")");
        }
    }
}

struct MCAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
};

MCEstimate finalize_mc(const std::vector<MCAccumulator>& chunks, uint64_t samples,
                       uint64_t seed) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& c : chunks) {
        sum += c.sum;
        sum_sq += c.sum_sq;
    }
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.value = sum / static_cast<double>(samples);
    if (samples > 1) {
        const double n = static_cast<double>(samples);
        const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

constexpr uint64_t kMCChunk = 8192;

// Product of log-moduli of the linear forms rows x c; rows are the first
// `width(j)+1` entries of row j.  Draws are indexed so a defensive resample
// (exact-zero dot product) advances to a fresh counter block.
template <class RowDot>
double sample_log_product(uint64_t seed, uint64_t stream, int n_coords, int n_rows, RowDot dot,
                          std::vector<cdouble>& scratch) {
    for (uint64_t attempt = 0;; ++attempt) {
        const uint64_t base = attempt << 32;
        for (int k = 0; k < n_coords; ++k)
            scratch[k] = complex_gaussian(seed, stream, base + static_cast<uint64_t>(k));
        double product = 1.0;
        bool degenerate = false;
        for (int j = 0; j < n_rows; ++j) {
            const double mod = std::abs(dot(j, scratch));
            if (mod == 0.0) {
                degenerate = true;  // probability zero; resample defensively
                break;
            }
            product *= std::log(mod);
        }
        if (!degenerate) return product;
    }
}

}  // namespace

GramMatrix gram_from_vectors(const std::vector<cdouble>& vectors, int n, int d) {
    if (n < 1 || d < n) throw std::invalid_argument("gram_from_vectors: need d >= n >= 1");
    if (vectors.size() != static_cast<size_t>(n) * d)
        throw std::invalid_argument("gram_from_vectors: vector data does not match n x d");
    GramMatrix g;
    g.n = n;
    g.entries.assign(static_cast<size_t>(n) * n, cdouble(0.0));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            cdouble s(0.0);
            for (int i = 0; i < d; ++i)
                s += vectors[static_cast<size_t>(j) * d + i] *
                     std::conj(vectors[static_cast<size_t>(k) * d + i]);
            g.entries[static_cast<size_t>(j) * n + k] = s;
        }
    }
    return g;
}

XiMatrix gram_to_xi(const GramMatrix& g) {
    validate_gram(g);
    XiMatrix xi;
    xi.n = g.n;
    xi.entries.assign(static_cast<size_t>(g.n) * g.n, cdouble(0.0));
    for (int j = 0; j < g.n; ++j) {
        for (int k = 0; k < j; ++k) {
            cdouble s = g.at(j, k);
            for (int i = 0; i < k; ++i) s -= xi.at(j, i) * std::conj(xi.at(k, i));
            xi.at(j, k) = s / xi.at(k, k).real();
        }
        double pivot = g.at(j, j).real();
        for (int i = 0; i < j; ++i) pivot -= std::norm(xi.at(j, i));
        if (pivot < kRankTolerance) throw rank_deficiency_error(j, pivot);
        xi.at(j, j) = std::sqrt(pivot);
    }
    return xi;
}

G2Result g2_quadrature(double c, double abs_tol) {
    if (!(c >= 0.0 && c <= 1.0))
        throw std::domain_error("g2_quadrature: cos theta must lie in [0, 1]");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("g2_quadrature: abs_tol must be > 0");

    // In the squared-radius variables u = r1^2, v = r2^2 the integral is
    //   (1/4) \int\int e^{-u-v} log u  log max(u c^2, v s^2) du dv,
    // and the max switches along v = u c^2/s^2.  Each side of the switch is
    // smooth; the inner integral is done piecewise and the log u endpoint
    // singularity is left to the adaptive refinement.
    const double c2 = c * c;
    const double s2 = 1.0 - c2;
    const double cutoff = 45.0;  // e^{-45} is below double noise here
    const double inner_tol = abs_tol * 1e-3;

    G2Result out;
    size_t evals = 0;
    double inner_error = 0.0;

    auto inner = [&](double u) {
        // \int_0^inf e^{-v} log max(u c^2, v s^2) dv, split at the switch.
        const double log_uc2 = std::log(u * c2);  // -inf only if c == 0
        double vstar = 0.0;
        if (c2 == 1.0) {
            vstar = cutoff;
        } else if (c2 > 0.0) {
            vstar = std::min(u * c2 / s2, cutoff);
        }
        double total = 0.0;
        if (vstar > 0.0) total += log_uc2 * (-std::expm1(-vstar));
        if (vstar < cutoff) {
            const auto piece = integrate_adaptive(
                [&](double v) { return std::exp(-v) * std::log(v * s2); }, vstar, cutoff,
                inner_tol);
            total += piece.value;
            inner_error = std::max(inner_error, piece.error_estimate);
            evals += piece.evaluations;
        }
        return total;
    };

    const auto outer = integrate_adaptive(
        [&](double u) { return 0.25 * std::exp(-u) * std::log(u) * inner(u); }, 0.0, cutoff,
        abs_tol * 0.5);

    out.value = outer.value;
    out.error_estimate = outer.error_estimate + inner_error;
    out.converged = outer.converged;
    if (!out.converged)
        throw convergence_error("g2_quadrature: adaptive quadrature did not converge; achieved " +
                                    std::to_string(out.error_estimate),
                                out.error_estimate);
    return out;
}

MCEstimate gn_monte_carlo(const XiMatrix& xi, uint64_t samples, uint64_t seed, int workers) {
    const int n = xi.n;
    if (n < 1) throw std::invalid_argument("gn_monte_carlo: xi must be at least 1 x 1");
    if (samples < 1) throw std::invalid_argument("gn_monte_carlo: samples must be >= 1");
    if (xi.entries.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("gn_monte_carlo: xi entry count does not match n");

    const auto chunks = map_chunks<MCAccumulator>(
        samples, kMCChunk, workers, [&](uint64_t begin, uint64_t end) {
            MCAccumulator acc;
            std::vector<cdouble> scratch(n);
            for (uint64_t s = begin; s < end; ++s) {
                const double x = sample_log_product(
                    seed, s, n, n,
                    [&](int j, const std::vector<cdouble>& cvec) {
                        cdouble dot(0.0);
                        for (int k = 0; k <= j; ++k) dot += cvec[k] * xi.at(j, k);
                        return dot;
                    },
                    scratch);
                acc.sum += x;
                acc.sum_sq += x * x;
            }
            return acc;
        });
    return finalize_mc(chunks, samples, seed);
}

MCEstimate g_full_mc(const std::vector<cdouble>& vectors, int n, int d, uint64_t samples,
                     uint64_t seed, int workers) {
    if (n < 1 || d < n) throw std::invalid_argument("g_full_mc: need d >= n >= 1");
    if (samples < 1) throw std::invalid_argument("g_full_mc: samples must be >= 1");
    if (vectors.size() != static_cast<size_t>(n) * d)
        throw std::invalid_argument("g_full_mc: vector data does not match n x d");
    for (int j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (int i = 0; i < d; ++i) norm2 += std::norm(vectors[static_cast<size_t>(j) * d + i]);
        if (std::fabs(norm2 - 1.0) > 1e-9)
            throw std::invalid_argument("g_full_mc: vector " + std::to_string(j) +
                                        " is not unit norm");
    }

    const auto chunks = map_chunks<MCAccumulator>(
        samples, kMCChunk, workers, [&](uint64_t begin, uint64_t end) {
            MCAccumulator acc;
            std::vector<cdouble> scratch(d);
            for (uint64_t s = begin; s < end; ++s) {
                const double x = sample_log_product(
                    seed, s, d, n,
                    [&](int j, const std::vector<cdouble>& cvec) {
                        cdouble dot(0.0);
                        for (int i = 0; i < d; ++i)
                            dot += cvec[i] * vectors[static_cast<size_t>(j) * d + i];
                        return dot;
                    },
                    scratch);
                acc.sum += x;
                acc.sum_sq += x * x;
            }
            return acc;
        });
    return finalize_mc(chunks, samples, seed);
}

DerivativeResult radial_derivative(const CorrelationCurve& curve, int order, double r) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("radial_derivative: order must be 1 or 2");
    const size_t n = curve.r.size();
    if (n < 5 || curve.value.size() != n)
        throw std::invalid_argument("radial_derivative: curve needs >= 5 matching grid points");

    const double h = curve.r[1] - curve.r[0];
    if (!(h > 0.0)) throw std::invalid_argument("radial_derivative: grid must be ascending");
    for (size_t i = 1; i + 1 < n; ++i) {
        if (std::fabs((curve.r[i + 1] - curve.r[i]) - h) > 1e-9 * h)
            throw std::invalid_argument("radial_derivative: grid must be uniformly spaced");
    }

    const double pos = (r - curve.r[0]) / h;
    const long idx = std::lround(pos);
    if (std::fabs(pos - static_cast<double>(idx)) > 1e-6)
        throw std::domain_error("radial_derivative: r does not lie on the grid (spacing " +
                                std::to_string(h) + ")");
    if (idx < 2 || idx + 2 >= static_cast<long>(n))
        throw std::domain_error(
            "radial_derivative: grid too coarse around r; need two points on each side, spacing "
            "<= " +
            std::to_string(std::min(r - curve.r.front(), curve.r.back() - r) / 2.0));

    const double* f = curve.value.data() + idx;
    DerivativeResult out;
    out.step = h;
    if (order == 1) {
        const double d1 = (f[1] - f[-1]) / (2.0 * h);
        const double d2 = (f[2] - f[-2]) / (4.0 * h);
        out.value = (4.0 * d1 - d2) / 3.0;
        out.error_estimate = std::fabs(d1 - d2) / 3.0;
    } else {
        const double s1 = (f[1] - 2.0 * f[0] + f[-1]) / (h * h);
        const double s2 = (f[2] - 2.0 * f[0] + f[-2]) / (4.0 * h * h);
        out.value = (4.0 * s1 - s2) / 3.0;
        out.error_estimate = std::fabs(s1 - s2) / 3.0;
    }
    return out;
}

}  // namespace zerocorr
