#pragma once

#include <complex>
#include <vector>

namespace zerocorr {

// Universal scaling-limit formulas for zero correlations of Gaussian random
// polynomial ensembles.  All functions are pure and thread-safe.
//
// Radial arguments follow the fixed convention t = r^2 / 2 where r is the
// scaled Euclidean separation |z - w|.

// Radial curve: strictly ascending grid with values and standard errors
// (std_error identically zero for closed-form curves).
struct CorrelationCurve {
    std::vector<double> r;
    std::vector<double> value;
    std::vector<double> std_error;
};

// Closed-form/series crossover for hannay_h and gamma_m.  Below this the
// sinh^3 denominator cancels catastrophically and the Taylor branch is used.
inline constexpr double kSeriesCrossoverT = 1e-2;

// Hannay's limit pair-correlation function for dimension one,
//   H(t) = ((sinh^2 t + t^2) cosh t - 2 t sinh t) / sinh^3 t,
// continuously extended by H(0) = 0.  Series branch below the crossover.
double hannay_h(double t);

// Limit pair-correlation density in complex dimension m,
//   gamma_m(t) = ([ (m^2+m)/2 sinh^2 t + t^2 ] cosh t - (m+1) t sinh t)
//                / (m^2 sinh^3 t) + (m-1)/(2m).
// Singular like ((m-1)/2m) / t at t = 0 when m > 1; gamma_1 == hannay_h.
// Throws std::domain_error for t <= 0 when m > 1 (t = 0 allowed for m = 1).
double gamma_m(int m, double t);

// exp(-|z-w|^2 / 2), the universal scaled kernel modulus.  z and w are
// points in C^m (equal lengths).
double limit_kernel_modulus(const std::vector<std::complex<double>>& z,
                            const std::vector<std::complex<double>>& w);

// Constant-free radial Laplacian of the pair potential,
//   m log(1 - e^{-r^2}) + r^2 / (e^{r^2} - 1),
// with the additive constant fixed to zero by convention; only differences
// and derivatives of this function are meaningful.  Requires r > 0.
double laplacian_g(int m, double r);

// Smooth part of the radial bilaplacian of the pair potential in dimension
// one.  The delta atom at r = 0 is excluded (see pair_diagonal_atom);
// requires r > 0.  Satisfies 1 + bilaplacian_g(r)/4 = hannay_h(r^2/2).
double bilaplacian_g(double r);

// Expected scaled density of zeros per unit Euclidean volume: m / pi.
double expected_density(int m);

// Normalized off-diagonal pair-correlation value at scaled separation r > 0:
// hannay_h(r^2/2) for m = 1, gamma_m(r^2/2) for m > 1.
double limit_pair_density(int m, double r);

// The m = 1 two-point measure carries a self-pair atom on the diagonal; it
// is reported as structured metadata, never as a value on a radial grid.
struct DiagonalAtom {
    bool present;
    double mass;  // per unit density^2
};
DiagonalAtom pair_diagonal_atom(int m);

}  // namespace zerocorr
