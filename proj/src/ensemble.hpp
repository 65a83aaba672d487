#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace zerocorr {

// Gaussian random sections of the degree-N projective ensemble in the
// affine chart: coefficients c_alpha * w_alpha over monomial multi-indices
// |alpha| <= N, with i.i.d. standard complex Gaussian c_alpha and
// square-root multinomial weights w_alpha (up to one global constant, which
// moves neither zeros nor the normalized kernel).

struct EnsembleParams {
    int m = 1;         // complex dimension
    int degree = 1;    // N
    uint64_t seed = 0;
};

struct PolynomialSection {
    int m = 1;
    int degree = 0;
    std::vector<std::complex<double>> coefficients;  // graded-lex multi-index order
};

// binomial(N + m, m); throws std::overflow_error if it exceeds uint64.
uint64_t basis_dimension(int m, int degree);

// Visit all multi-indices alpha in N^m with |alpha| <= degree in graded
// lexicographic order; fn receives (alpha, flat_index).
void for_each_multi_index(int m, int degree,
                          const std::function<void(const std::vector<int>&, uint64_t)>& fn);

// Draw a section; deterministic in (params.seed, stream).
PolynomialSection sample_section(const EnsembleParams& params, uint64_t stream);

// Normalized kernel modulus of the degree-N projective model,
//   ( |1 + z.conj(w)|^2 / ((1+|z|^2)(1+|w|^2)) )^{N/2},
// evaluated in log space.  Returns a value in [0, 1]; exactly 1 when z == w.
double fs_cos_theta(int m, int degree, const std::vector<std::complex<double>>& z,
                    const std::vector<std::complex<double>>& w);

// Sup over lattice pairs |z|,|w| <= grid_radius (spacing grid_step in
// R^{2m}) of |fs_cos_theta(m, N, z/sqrt(N), w/sqrt(N)) - exp(-|z-w|^2/2)|.
// Requires degree >= 4 and grid_radius <= sqrt(N)/2.
double szego_scaling_error(int m, int degree, double grid_radius, double grid_step,
                           int workers = 0);

}  // namespace zerocorr
