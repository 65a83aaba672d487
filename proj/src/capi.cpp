#include "zerocorr.h"

#include <complex>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "formulas.hpp"
#include "reduction.hpp"
#include "roots.hpp"
#include "zero_stats.hpp"

namespace {

thread_local std::string t_last_error = "";

zc_status fail(zc_status code, const char* what) {
    t_last_error = what ? what : "unknown error";
    return code;
}

zc_status translate_current_exception() {
    try {
        throw;
    } catch (const zerocorr::rank_deficiency_error& e) {
        return fail(ZC_ERR_RANK_DEFICIENT, e.what());
    } catch (const zerocorr::convergence_error& e) {
        return fail(ZC_ERR_NO_CONVERGENCE, e.what());
    } catch (const zerocorr::degree_deflation_error& e) {
        return fail(ZC_ERR_NO_CONVERGENCE, e.what());
    } catch (const std::domain_error& e) {
        return fail(ZC_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(ZC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::overflow_error& e) {
        return fail(ZC_ERR_OVERFLOW, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ZC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ZC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ZC_ERR_INTERNAL, "unknown exception");
    }
}

#define ZC_TRY try {
#define ZC_CATCH                            \
    }                                       \
    catch (...) {                           \
        return translate_current_exception(); \
    }

zc_status require(bool ok, const char* what) {
    return ok ? ZC_OK : fail(ZC_ERR_INVALID_ARGUMENT, what);
}

std::vector<std::complex<double>> to_complex(const double* data, size_t count) {
    std::vector<std::complex<double>> out(count);
    for (size_t i = 0; i < count; ++i) out[i] = {data[2 * i], data[2 * i + 1]};
    return out;
}

void from_complex(const std::vector<std::complex<double>>& in, double* out) {
    for (size_t i = 0; i < in.size(); ++i) {
        out[2 * i] = in[i].real();
        out[2 * i + 1] = in[i].imag();
    }
}

zc_mc_estimate convert(const zerocorr::MCEstimate& e) {
    return {e.value, e.std_error, e.samples, e.seed};
}

}  // namespace

struct zc_point_sets {
    std::vector<zerocorr::PointSet> sets;
};

struct zc_curve {
    zerocorr::PairCorrelationResult result;
};

extern "C" {

const char* zc_version(void) { return "zerocorr 1.0.0"; }

const char* zc_status_name(zc_status code) {
    switch (code) {
        case ZC_OK: return "ok";
        case ZC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case ZC_ERR_DOMAIN: return "domain error";
        case ZC_ERR_RANK_DEFICIENT: return "rank-deficient configuration";
        case ZC_ERR_NO_CONVERGENCE: return "no convergence";
        case ZC_ERR_OVERFLOW: return "overflow";
        default: return "internal error";
    }
}

const char* zc_last_error(void) { return t_last_error.c_str(); }

zc_status zc_hannay_h(double t, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::hannay_h(t);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_gamma_m(int32_t m, double t, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::gamma_m(m, t);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_expected_density(int32_t m, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::expected_density(m);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_limit_pair_density(int32_t m, double r, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::limit_pair_density(m, r);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_pair_diagonal_atom(int32_t m, double* mass) {
    if (zc_status s = require(mass != nullptr, "mass is NULL")) return s;
    ZC_TRY
    *mass = zerocorr::pair_diagonal_atom(m).mass;
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_limit_kernel_modulus(int32_t m, const double* z, const double* w, double* out) {
    if (zc_status s = require(out && z && w && m >= 1, "need m >= 1 and non-NULL pointers"))
        return s;
    ZC_TRY
    *out = zerocorr::limit_kernel_modulus(to_complex(z, m), to_complex(w, m));
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_laplacian_g(int32_t m, double r, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::laplacian_g(m, r);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_bilaplacian_g(double r, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::bilaplacian_g(r);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_gram_to_xi(int32_t n, const double* gram, double* xi) {
    if (zc_status s = require(gram && xi && n >= 1, "need n >= 1 and non-NULL pointers"))
        return s;
    ZC_TRY
    zerocorr::GramMatrix g;
    g.n = n;
    g.entries = to_complex(gram, static_cast<size_t>(n) * n);
    const auto factor = zerocorr::gram_to_xi(g);
    from_complex(factor.entries, xi);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_gram_from_vectors(int32_t n, int32_t d, const double* vectors, double* gram) {
    if (zc_status s = require(vectors && gram && n >= 1 && d >= n, "need d >= n >= 1")) return s;
    ZC_TRY
    const auto g = zerocorr::gram_from_vectors(
        to_complex(vectors, static_cast<size_t>(n) * d), n, d);
    from_complex(g.entries, gram);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_g2_quadrature(double cos_theta, double abs_tol, double* value,
                           double* err_estimate) {
    if (zc_status s = require(value != nullptr, "value is NULL")) return s;
    ZC_TRY
    const auto r = zerocorr::g2_quadrature(cos_theta, abs_tol > 0 ? abs_tol : 1e-10);
    *value = r.value;
    if (err_estimate) *err_estimate = r.error_estimate;
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_gn_monte_carlo(int32_t n, const double* xi, uint64_t samples, uint64_t seed,
                            int32_t workers, zc_mc_estimate* out) {
    if (zc_status s = require(xi && out && n >= 1, "need n >= 1 and non-NULL pointers")) return s;
    ZC_TRY
    zerocorr::XiMatrix factor;
    factor.n = n;
    factor.entries = to_complex(xi, static_cast<size_t>(n) * n);
    *out = convert(zerocorr::gn_monte_carlo(factor, samples, seed, workers));
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_g_full_mc(int32_t n, int32_t d, const double* vectors, uint64_t samples,
                       uint64_t seed, int32_t workers, zc_mc_estimate* out) {
    if (zc_status s = require(vectors && out, "vectors/out is NULL")) return s;
    ZC_TRY
    *out = convert(zerocorr::g_full_mc(to_complex(vectors, static_cast<size_t>(n) * d), n, d,
                                       samples, seed, workers));
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_basis_dimension(int32_t m, int32_t degree, uint64_t* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::basis_dimension(m, degree);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_sample_section(int32_t m, int32_t degree, uint64_t seed, uint64_t stream,
                            double* coeffs) {
    if (zc_status s = require(coeffs != nullptr, "coeffs is NULL")) return s;
    ZC_TRY
    const auto section = zerocorr::sample_section({m, degree, seed}, stream);
    from_complex(section.coefficients, coeffs);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_fs_cos_theta(int32_t m, int32_t degree, const double* z, const double* w,
                          double* out) {
    if (zc_status s = require(z && w && out && m >= 1, "need m >= 1 and non-NULL pointers"))
        return s;
    ZC_TRY
    *out = zerocorr::fs_cos_theta(m, degree, to_complex(z, m), to_complex(w, m));
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_szego_scaling_error(int32_t m, int32_t degree, double grid_radius, double grid_step,
                                 int32_t workers, double* out) {
    if (zc_status s = require(out != nullptr, "out is NULL")) return s;
    ZC_TRY
    *out = zerocorr::szego_scaling_error(m, degree, grid_radius, grid_step, workers);
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_find_roots(int32_t degree, const double* coeffs, double* roots, double* residuals,
                        uint8_t* clustered) {
    if (zc_status s = require(coeffs && roots && degree >= 1, "need degree >= 1 and buffers"))
        return s;
    ZC_TRY
    const auto rs =
        zerocorr::find_roots(to_complex(coeffs, static_cast<size_t>(degree) + 1));
    from_complex(rs.roots, roots);
    if (residuals)
        std::memcpy(residuals, rs.residuals.data(), rs.residuals.size() * sizeof(double));
    if (clustered)
        std::memcpy(clustered, rs.clustered.data(), rs.clustered.size() * sizeof(uint8_t));
    return ZC_OK;
    ZC_CATCH
}

zc_point_sets* zc_point_sets_create(void) { return new (std::nothrow) zc_point_sets; }

void zc_point_sets_destroy(zc_point_sets* sets) { delete sets; }

size_t zc_point_sets_count(const zc_point_sets* sets) { return sets ? sets->sets.size() : 0; }

size_t zc_point_sets_total_points(const zc_point_sets* sets) {
    if (!sets) return 0;
    size_t total = 0;
    for (const auto& s : sets->sets) total += s.size();
    return total;
}

zc_status zc_point_sets_add(zc_point_sets* sets, const double* points, size_t count) {
    if (zc_status s = require(sets && (points || count == 0), "sets/points is NULL")) return s;
    ZC_TRY
    sets->sets.push_back(to_complex(points, count));
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_point_sets_sample_scaled_roots(zc_point_sets* sets, int32_t degree,
                                            uint64_t samples, uint64_t seed,
                                            double window_radius, int32_t workers) {
    if (zc_status s = require(sets != nullptr, "sets is NULL")) return s;
    ZC_TRY
    auto configs = zerocorr::sample_scaled_roots(degree, samples, seed, {window_radius}, workers);
    for (auto& c : configs) sets->sets.push_back(std::move(c));
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_point_sets_sample_poisson(zc_point_sets* sets, double intensity, uint64_t samples,
                                       uint64_t seed, double window_radius) {
    if (zc_status s = require(sets != nullptr, "sets is NULL")) return s;
    ZC_TRY
    auto configs = zerocorr::sample_poisson_disc(intensity, samples, seed, {window_radius});
    for (auto& c : configs) sets->sets.push_back(std::move(c));
    return ZC_OK;
    ZC_CATCH
}

void zc_curve_destroy(zc_curve* curve) { delete curve; }

size_t zc_curve_size(const zc_curve* curve) {
    return curve ? curve->result.curve.r.size() : 0;
}

zc_status zc_curve_row(const zc_curve* curve, size_t index, double* r, double* value,
                       double* std_error) {
    if (zc_status s = require(curve && index < curve->result.curve.r.size(), "bad curve index"))
        return s;
    if (r) *r = curve->result.curve.r[index];
    if (value) *value = curve->result.curve.value[index];
    if (std_error) *std_error = curve->result.curve.std_error[index];
    return ZC_OK;
}

zc_status zc_curve_pairs(const zc_curve* curve, size_t index, uint64_t* pair_count,
                         int32_t* empty_flag) {
    if (zc_status s = require(curve && index < curve->result.pair_counts.size(),
                              "bad curve index"))
        return s;
    if (pair_count) *pair_count = curve->result.pair_counts[index];
    if (empty_flag) *empty_flag = curve->result.empty_bin[index];
    return ZC_OK;
}

zc_status zc_curve_density(const zc_curve* curve, double* density) {
    if (zc_status s = require(curve && density, "curve/density is NULL")) return s;
    *density = curve->result.density;
    return ZC_OK;
}

zc_status zc_pair_correlation(const zc_point_sets* sets, double window_radius,
                              const double* edges, size_t n_edges, int32_t workers,
                              zc_curve** out) {
    if (zc_status s = require(sets && edges && out && n_edges >= 2, "need sets, edges, out"))
        return s;
    ZC_TRY
    auto curve = std::make_unique<zc_curve>();
    curve->result = zerocorr::pair_correlation_estimate(
        sets->sets, {window_radius}, std::vector<double>(edges, edges + n_edges), 2, workers);
    *out = curve.release();
    return ZC_OK;
    ZC_CATCH
}

zc_status zc_density_estimate(const zc_point_sets* sets, double window_radius,
                              zc_mc_estimate* out) {
    if (zc_status s = require(sets && out, "sets/out is NULL")) return s;
    ZC_TRY
    *out = convert(zerocorr::density_estimate(sets->sets, {window_radius}));
    return ZC_OK;
    ZC_CATCH
}

} /* extern "C" */
