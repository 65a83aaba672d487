#include "roots.hpp"

#include <algorithm>
#include <cmath>

#include "reduction.hpp"

namespace zerocorr {

namespace {

using cdouble = std::complex<double>;

struct EvalResult {
    cdouble newton;   // p / p'
    double residual;  // |p| / sum |a_k| |z|^k
    bool dp_zero;
};

// Horner evaluation returning the Newton ratio and backward residual.  For
// |z| > 1 the reversed polynomial q(u) = z^{-N} p(z), u = 1/z, is used so
// powers never overflow: p/p' = z q / (N q - u q').
EvalResult evaluate(const std::vector<cdouble>& a, const std::vector<cdouble>& rev, cdouble z) {
    const int n = static_cast<int>(a.size()) - 1;
    EvalResult out{};
    if (std::abs(z) <= 1.0) {
        cdouble p = a[n], dp = 0.0;
        double s = std::abs(a[n]);
        const double az = std::abs(z);
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + a[k];
            s = s * az + std::abs(a[k]);
        }
        out.residual = s > 0.0 ? std::abs(p) / s : 0.0;
        out.dp_zero = (dp == cdouble(0.0));
        if (!out.dp_zero) out.newton = p / dp;
        return out;
    }
    const cdouble u = 1.0 / z;
    cdouble q = rev[n], dq = 0.0;
    double s = std::abs(rev[n]);
    const double au = std::abs(u);
    for (int k = n - 1; k >= 0; --k) {
        dq = dq * u + q;
        q = q * u + rev[k];
        s = s * au + std::abs(rev[k]);
    }
    out.residual = s > 0.0 ? std::abs(q) / s : 0.0;
    const cdouble denom = static_cast<double>(n) * q - u * dq;
    out.dp_zero = (denom == cdouble(0.0));
    if (!out.dp_zero) out.newton = z * q / denom;
    return out;
}

// Newton-polygon starting radii: upper convex hull of (k, log|a_k|); each
// hull segment of width d contributes d circle radii exp(slope).
std::vector<double> initial_radii(const std::vector<cdouble>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<std::pair<int, double>> pts;
    for (int k = 0; k <= n; ++k) {
        const double m = std::abs(a[k]);
        if (m > 0.0) pts.emplace_back(k, std::log(m));
    }
    std::vector<std::pair<int, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& q1 = hull[hull.size() - 2];
            const auto& q2 = hull[hull.size() - 1];
            const double cross = (q2.first - q1.first) * (p.second - q1.second) -
                                 (p.first - q1.first) * (q2.second - q1.second);
            if (cross >= 0.0) hull.pop_back();  // keep the upper hull
            else break;
        }
        hull.push_back(p);
    }
    std::vector<double> radii;
    radii.reserve(n);
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        const int k1 = hull[e].first, k2 = hull[e + 1].first;
        const double rho = std::exp((hull[e].second - hull[e + 1].second) / (k2 - k1));
        for (int i = k1; i < k2; ++i) radii.push_back(rho);
    }
    while (static_cast<int>(radii.size()) < n) radii.push_back(1.0);
    return radii;
}

}  // namespace

RootSet find_roots(const std::vector<cdouble>& coefficients) {
    if (coefficients.size() < 2)
        throw std::invalid_argument("find_roots: polynomial degree must be >= 1");

    double max_mag = 0.0;
    for (const auto& c : coefficients) max_mag = std::max(max_mag, std::abs(c));
    if (!(max_mag > 0.0)) throw std::invalid_argument("find_roots: zero polynomial");
    if (std::abs(coefficients.back()) / max_mag < 1e-300)
        throw degree_deflation_error(
            "find_roots: leading coefficient underflows after normalization");

    // Normalize by the largest coefficient magnitude; zeros are unchanged.
    std::vector<cdouble> a(coefficients.size());
    for (size_t k = 0; k < a.size(); ++k) a[k] = coefficients[k] / max_mag;

    RootSet out;
    out.degree = static_cast<int>(a.size()) - 1;

    // Exact trailing zeros are roots at the origin.
    size_t zeros_at_origin = 0;
    while (zeros_at_origin + 1 < a.size() && a[zeros_at_origin] == cdouble(0.0))
        ++zeros_at_origin;
    if (zeros_at_origin > 0) a.erase(a.begin(), a.begin() + zeros_at_origin);

    const int n = static_cast<int>(a.size()) - 1;
    std::vector<cdouble> roots;
    std::vector<double> residuals;
    std::vector<uint8_t> clustered;

    if (n >= 1) {
        std::vector<cdouble> rev(a.rbegin(), a.rend());
        const auto radii = initial_radii(a);
        roots.resize(n);
        // Golden-angle spread keeps the start distinct and asymmetric.
        constexpr double kGolden = 0.6180339887498949;
        for (int i = 0; i < n; ++i) {
            const double theta =
                6.283185307179586 * std::fmod(kGolden * (i + 1), 1.0) + 0.35;
            roots[i] = std::polar(radii[i] * (1.0 + 1e-3 * ((i % 7) - 3)), theta);
        }

        std::vector<uint8_t> settled(n, 0);
        residuals.assign(n, 1.0);
        const int max_sweeps = 200;
        int sweep = 0;
        for (; sweep < max_sweeps; ++sweep) {
            bool all_settled = true;
            for (int i = 0; i < n; ++i) {
                if (settled[i]) continue;
                const EvalResult ev = evaluate(a, rev, roots[i]);
                residuals[i] = ev.residual;
                if (ev.residual <= kRootResidualTol) {
                    settled[i] = 1;
                    continue;
                }
                if (ev.dp_zero) {
                    // Nudge off a critical point, deterministically.
                    roots[i] += 1e-8 * (std::abs(roots[i]) + 1.0) * cdouble(0.7, 0.7);
                    all_settled = false;
                    continue;
                }
                cdouble repulsion(0.0);
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const cdouble d = roots[i] - roots[j];
                    const double n2 = std::norm(d);
                    if (n2 > 0.0) repulsion += std::conj(d) / n2;
                }
                const cdouble denom = 1.0 - ev.newton * repulsion;
                const cdouble step = std::abs(denom) > 1e-12 ? ev.newton / denom : ev.newton;
                roots[i] -= step;
                if (std::abs(step) <= 4e-16 * (1.0 + std::abs(roots[i])))
                    settled[i] = 1;  // stagnated (clustered root); flagged below
                else
                    all_settled = false;
            }
            if (all_settled) break;
        }

        // Newton polish on the full-precision normalized polynomial.
        for (int i = 0; i < n; ++i) {
            for (int pass = 0; pass < 2; ++pass) {
                const EvalResult ev = evaluate(a, rev, roots[i]);
                residuals[i] = ev.residual;
                if (ev.residual <= kRootResidualTol || ev.dp_zero) break;
                const cdouble step = ev.newton;
                if (!(std::abs(step) < 1.0 + std::abs(roots[i]))) break;
                roots[i] -= step;
            }
            residuals[i] = evaluate(a, rev, roots[i]).residual;
        }

        clustered.assign(n, 0);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, residuals[i]);
            if (residuals[i] > kRootResidualTol) clustered[i] = 1;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (std::abs(roots[i] - roots[j]) <
                    1e-6 * (1.0 + std::abs(roots[i]))) {
                    clustered[i] = clustered[j] = 1;
                }
            }
        }
        if (worst > kRootClusteredTol)
            throw convergence_error("find_roots: iteration stalled; worst relative residual " +
                                        std::to_string(worst),
                                    worst);
    }

    for (size_t i = 0; i < zeros_at_origin; ++i) {
        out.roots.push_back(cdouble(0.0));
        out.residuals.push_back(0.0);
        out.clustered.push_back(0);
    }
    out.roots.insert(out.roots.end(), roots.begin(), roots.end());
    out.residuals.insert(out.residuals.end(), residuals.begin(), residuals.end());
    out.clustered.insert(out.clustered.end(), clustered.begin(), clustered.end());
    return out;
}

RootSet find_roots(const PolynomialSection& p) {
    if (p.m != 1) throw std::invalid_argument("find_roots: only m = 1 sections have roots here");
    if (p.degree < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
    return find_roots(p.coefficients);
}

}  // namespace zerocorr
