#include "ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "philox_rng.hpp"

namespace zerocorr {

namespace {

void validate_params(int m, int degree) {
    if (m < 1) throw std::invalid_argument("ensemble: m must be >= 1");
    if (degree < 1) throw std::invalid_argument("ensemble: degree must be >= 1");
}

}  // namespace

uint64_t basis_dimension(int m, int degree) {
    validate_params(m, degree);
    // binomial(N + m, m) with overflow checks at each multiply.
    uint64_t result = 1;
    for (int i = 1; i <= m; ++i) {
        const uint64_t num = static_cast<uint64_t>(degree) + i;
        if (result > std::numeric_limits<uint64_t>::max() / num)
            throw std::overflow_error("basis_dimension: binomial(N+m, m) overflows");
        result = result * num / i;  // product of i consecutive ints is divisible by i!
    }
    return result;
}

void for_each_multi_index(int m, int degree,
                          const std::function<void(const std::vector<int>&, uint64_t)>& fn) {
    validate_params(m, degree);
    std::vector<int> alpha(m, 0);
    uint64_t flat = 0;
    // Graded order: total degree ell = 0..N; lexicographic within a grade.
    for (int ell = 0; ell <= degree; ++ell) {
        // enumerate alpha with |alpha| == ell, lex descending in alpha[0], ...
        std::function<void(int, int)> rec = [&](int pos, int remaining) {
            if (pos + 1 == m) {
                alpha[pos] = remaining;
                fn(alpha, flat++);
                return;
            }
            for (int v = remaining; v >= 0; --v) {
                alpha[pos] = v;
                rec(pos + 1, remaining - v);
            }
        };
        rec(0, ell);
    }
}

PolynomialSection sample_section(const EnsembleParams& params, uint64_t stream) {
    validate_params(params.m, params.degree);
    const uint64_t d_n = basis_dimension(params.m, params.degree);

    PolynomialSection s;
    s.m = params.m;
    s.degree = params.degree;
    s.coefficients.resize(d_n);

    const int n = params.degree;
    const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);

    std::vector<double> log_weights(d_n);
    double max_log = -std::numeric_limits<double>::infinity();
    for_each_multi_index(params.m, n, [&](const std::vector<int>& alpha, uint64_t idx) {
        int total = 0;
        double lg_denom = 0.0;
        for (int a : alpha) {
            total += a;
            lg_denom += std::lgamma(static_cast<double>(a) + 1.0);
        }
        lg_denom += std::lgamma(static_cast<double>(n - total) + 1.0);
        const double lw = 0.5 * (lg_n - lg_denom);
        log_weights[idx] = lw;
        max_log = std::max(max_log, lw);
    });

    // Weights are emitted unscaled whenever exp() is safe; otherwise one
    // global factor exp(-max_log) is applied, which changes neither the
    // zero set nor the normalized kernel.
    const double shift = max_log > 700.0 ? max_log : 0.0;
    for (uint64_t idx = 0; idx < d_n; ++idx) {
        const auto c = complex_gaussian(params.seed, stream, idx);
        s.coefficients[idx] = c * std::exp(log_weights[idx] - shift);
    }
    return s;
}

double fs_cos_theta(int m, int degree, const std::vector<std::complex<double>>& z,
                    const std::vector<std::complex<double>>& w) {
    validate_params(m, degree);
    if (z.size() != static_cast<size_t>(m) || w.size() != static_cast<size_t>(m))
        throw std::invalid_argument("fs_cos_theta: points must be in C^m");
    if (z == w) return 1.0;

    std::complex<double> s(0.0);
    double nz = 0.0, nw = 0.0;
    for (int i = 0; i < m; ++i) {
        s += z[i] * std::conj(w[i]);
        nz += std::norm(z[i]);
        nw += std::norm(w[i]);
    }
    // |1 + s|^2 = 1 + (2 Re s + |s|^2); all three logs via log1p.
    const double cross = 2.0 * s.real() + std::norm(s);
    if (cross <= -1.0) return 0.0;  // 1 + z.conj(w) == 0
    const double log_ct =
        0.5 * degree * (std::log1p(cross) - std::log1p(nz) - std::log1p(nw));
    return std::min(1.0, std::exp(log_ct));
}

double szego_scaling_error(int m, int degree, double grid_radius, double grid_step, int workers) {
    validate_params(m, degree);
    if (degree < 4) throw std::invalid_argument("szego_scaling_error: degree must be >= 4");
    if (!(grid_step > 0.0) || !(grid_radius > 0.0))
        throw std::invalid_argument("szego_scaling_error: radius and step must be > 0");
    if (grid_radius > 0.5 * std::sqrt(static_cast<double>(degree)))
        throw std::invalid_argument(
            "szego_scaling_error: grid_radius exceeds sqrt(N)/2 chart validity bound");

    // Lattice points of spacing grid_step in R^{2m} with |z| <= grid_radius.
    const int dims = 2 * m;
    const int half = static_cast<int>(std::floor(grid_radius / grid_step + 1e-12));
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(dims, -half);
    const double r2max = grid_radius * grid_radius * (1.0 + 1e-12);
    for (;;) {
        double n2 = 0.0;
        for (int i : idx) n2 += (i * grid_step) * (i * grid_step);
        if (n2 <= r2max) {
            std::vector<double> p(dims);
            for (int i = 0; i < dims; ++i) p[i] = idx[i] * grid_step;
            pts.push_back(std::move(p));
        }
        int d = dims - 1;
        while (d >= 0 && idx[d] == half) idx[d--] = -half;
        if (d < 0) break;
        ++idx[d];
    }

    const size_t count = pts.size();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(degree));
    // Precompute scaled coordinates and log(1 + |z/sqrt(N)|^2).
    std::vector<double> scaled(count * dims);
    std::vector<double> log_norm(count);
    for (size_t p = 0; p < count; ++p) {
        double n2 = 0.0;
        for (int i = 0; i < dims; ++i) {
            const double v = pts[p][i] * inv_sqrt_n;
            scaled[p * dims + i] = v;
            n2 += v * v;
        }
        log_norm[p] = std::log1p(n2);
    }

    const auto chunk_max = map_chunks<double>(
        count, 64, workers, [&](uint64_t begin, uint64_t end) {
            double worst = 0.0;
            for (uint64_t p = begin; p < end; ++p) {
                const double* zp = &scaled[p * dims];
                for (size_t q = p + 1; q < count; ++q) {
                    const double* wq = &scaled[q * dims];
                    double re = 0.0, im = 0.0, d2 = 0.0;
                    for (int i = 0; i < m; ++i) {
                        const double zr = zp[2 * i], zi = zp[2 * i + 1];
                        const double wr = wq[2 * i], wi = wq[2 * i + 1];
                        re += zr * wr + zi * wi;
                        im += zi * wr - zr * wi;
                        const double dr = pts[p][2 * i] - pts[q][2 * i];
                        const double di = pts[p][2 * i + 1] - pts[q][2 * i + 1];
                        d2 += dr * dr + di * di;
                    }
                    const double cross = 2.0 * re + re * re + im * im;
                    double fs = 0.0;
                    if (cross > -1.0)
                        fs = std::exp(0.5 * degree *
                                      (std::log1p(cross) - log_norm[p] - log_norm[q]));
                    const double err = std::fabs(fs - std::exp(-0.5 * d2));
                    worst = std::max(worst, err);
                }
            }
            return worst;
        });
    double sup = 0.0;
    for (double v : chunk_max) sup = std::max(sup, v);
    return sup;
}

}  // namespace zerocorr
