#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "formulas.hpp"

namespace zerocorr {

using cdouble = std::complex<double>;

// Hermitian unit-diagonal matrix of inner products of unit vectors.
struct GramMatrix {
    int n = 0;
    std::vector<cdouble> entries;  // row-major n x n

    cdouble at(int j, int k) const { return entries[static_cast<size_t>(j) * n + k]; }
};

// Lower-triangular factor with positive real diagonal and unit row norms;
// xi * xi^H reproduces the Gram matrix.
struct XiMatrix {
    int n = 0;
    std::vector<cdouble> entries;  // row-major n x n, upper part zero

    cdouble at(int j, int k) const { return entries[static_cast<size_t>(j) * n + k]; }
    cdouble& at(int j, int k) { return entries[static_cast<size_t>(j) * n + k]; }
};

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;  // sample std / sqrt(samples)
    uint64_t samples = 0;
    uint64_t seed = 0;
};

// Raised when a configuration is numerically coincident: a diagonal pivot
// 1 - sum |xi_jk|^2 fell below tolerance during factorization.
class rank_deficiency_error : public std::runtime_error {
  public:
    rank_deficiency_error(int index, double pivot)
        : std::runtime_error("rank-deficient Gram matrix at row " + std::to_string(index) +
                             " (pivot " + std::to_string(pivot) + ")"),
          index_(index) {}
    int index() const { return index_; }

  private:
    int index_;
};

// Raised when an iteration fails to meet its tolerance; carries the
// achieved accuracy.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

  private:
    double achieved_;
};

inline constexpr double kRankTolerance = 1e-12;

// Build a Gram matrix from unit vectors in C^d (row-major n x d).
GramMatrix gram_from_vectors(const std::vector<cdouble>& vectors, int n, int d);

// Cholesky-type factorization with the positive-diagonal phase convention.
// Throws std::invalid_argument on malformed input and rank_deficiency_error
// when a pivot falls below kRankTolerance.
XiMatrix gram_to_xi(const GramMatrix& g);

struct G2Result {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// G(cos theta): the two-point Gaussian log-modulus integral, evaluated by
// adaptive 2-D quadrature of the Jensen-reduced max-form integrand.  The
// domain is split along the max switch curve so each piece is smooth.
// c = cos theta in [0, 1]; absolute accuracy target abs_tol.
// Throws convergence_error when the estimate cannot meet tolerance.
G2Result g2_quadrature(double c, double abs_tol = 1e-10);

// Unbiased Monte Carlo estimate of the reduced n-dimensional integral
//   (1/pi^n) \int e^{-|c|^2} prod_j log |c . xi_row_j| dc
// with standard complex Gaussian c in C^n.
MCEstimate gn_monte_carlo(const XiMatrix& xi, uint64_t samples, uint64_t seed, int workers = 0);

// Direct Monte Carlo in ambient dimension d over the given unit vectors
// (row-major n x d); the oracle route for the unitary reduction.
MCEstimate g_full_mc(const std::vector<cdouble>& vectors, int n, int d, uint64_t samples,
                     uint64_t seed, int workers = 0);

struct DerivativeResult {
    double value = 0.0;
    double step = 0.0;
    double error_estimate = 0.0;
};

// Richardson-extrapolated central finite difference of the given order
// (1 or 2) of a uniformly gridded curve at grid point r.  Throws
// std::domain_error (with the required spacing) when the grid cannot
// support the stencil.
DerivativeResult radial_derivative(const CorrelationCurve& curve, int order, double r);

}  // namespace zerocorr
