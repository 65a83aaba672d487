#include "formulas.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zerocorr {

namespace {

constexpr double kPi = 3.141592653589793238462643;

void require_dimension(int m) {
    if (m < 1) throw std::invalid_argument("dimension m must be >= 1, got " + std::to_string(m));
}

}  // namespace

double hannay_h(double t) {
    if (!(t >= 0.0)) throw std::domain_error("hannay_h: t must be >= 0");
    if (t < kSeriesCrossoverT) {
        const double t2 = t * t;
        return t * (1.0 + t2 * (-2.0 / 9.0 + t2 * (2.0 / 45.0)));
    }
    // Evaluate in v = e^{-2t} so large t neither overflows nor cancels.
    const double v = std::exp(-2.0 * t);
    const double w = -std::expm1(-2.0 * t);  // 1 - v, full relative precision
    const double num = w * w * (1.0 + v) + 4.0 * t * t * v * (1.0 + v) - 8.0 * t * v * w;
    return num / (w * w * w);
}

double gamma_m(int m, double t) {
    require_dimension(m);
    if (m == 1) {
        if (!(t >= 0.0)) throw std::domain_error("gamma_m: t must be >= 0 for m = 1");
    } else if (!(t > 0.0)) {
        throw std::domain_error("gamma_m: t must be > 0 for m > 1 (pole at t = 0)");
    }
    const double dm = static_cast<double>(m);
    if (t < kSeriesCrossoverT) {
        const double a = (dm - 1.0) / (2.0 * dm);
        const double c1 = (dm + 1.0) * (dm + 2.0) / (6.0 * dm * dm);
        const double c3 = -((dm + 3.0) * (dm + 4.0)) / (90.0 * dm * dm);
        const double c5 = (dm + 5.0) * (dm + 6.0) / (945.0 * dm * dm);
        const double t2 = t * t;
        const double smooth = a + t * (c1 + t2 * (c3 + t2 * c5));
        if (m == 1) return smooth;  // a == 0, no pole
        return a / t + smooth;
    }
    const double v = std::exp(-2.0 * t);
    const double w = -std::expm1(-2.0 * t);
    const double num = 0.5 * (dm * dm + dm) * (w * w * (1.0 + v)) + 4.0 * t * t * v * (1.0 + v) -
                       4.0 * (dm + 1.0) * t * v * w;
    return num / (dm * dm * (w * w * w)) + (dm - 1.0) / (2.0 * dm);
}

double limit_kernel_modulus(const std::vector<std::complex<double>>& z,
                            const std::vector<std::complex<double>>& w) {
    if (z.size() != w.size())
        throw std::invalid_argument("limit_kernel_modulus: points must have equal dimension");
    double d2 = 0.0;
    for (size_t i = 0; i < z.size(); ++i) d2 += std::norm(z[i] - w[i]);
    return std::exp(-0.5 * d2);
}

double laplacian_g(int m, double r) {
    require_dimension(m);
    if (!(r > 0.0)) throw std::domain_error("laplacian_g: r must be > 0");
    const double x = r * r;
    const double u = std::exp(-x);
    const double w = -std::expm1(-x);  // 1 - e^{-x}
    return static_cast<double>(m) * std::log(w) + x * u / w;
}

double bilaplacian_g(double r) {
    if (!(r > 0.0)) throw std::domain_error("bilaplacian_g: r must be > 0");
    const double x = r * r;
    if (x < 4e-4) {
        // Taylor branch in x = r^2; the rational form cancels near zero.
        return -4.0 + x * (2.0 - x * x * (1.0 / 9.0 - x * x / 180.0));
    }
    // Rational form scaled by e^{-3 r^2} so large r cannot overflow.
    const double u = std::exp(-x);
    const double w = -std::expm1(-x);
    const double num = u * (8.0 * w * w - 16.0 * x * w + 4.0 * x * x * (1.0 + u));
    return num / (w * w * w);
}

double expected_density(int m) {
    require_dimension(m);
    return static_cast<double>(m) / kPi;
}

double limit_pair_density(int m, double r) {
    require_dimension(m);
    if (!(r > 0.0)) throw std::domain_error("limit_pair_density: r must be > 0");
    const double t = 0.5 * r * r;
    return m == 1 ? hannay_h(t) : gamma_m(m, t);
}

DiagonalAtom pair_diagonal_atom(int m) {
    require_dimension(m);
    return {m == 1, m == 1 ? kPi : 0.0};
}

}  // namespace zerocorr
