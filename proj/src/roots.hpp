#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ensemble.hpp"

namespace zerocorr {

// All roots of a sampled one-variable section, with per-root backward
// residuals |p(root)| / sum_k |a_k| |root|^k on max-normalized coefficients.
struct RootSet {
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals;
    std::vector<uint8_t> clustered;  // relaxed-tolerance / near-multiple flags
    int degree = 0;
};

class degree_deflation_error : public std::runtime_error {
  public:
    explicit degree_deflation_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kRootResidualTol = 1e-12;   // strict acceptance
inline constexpr double kRootClusteredTol = 1e-7;   // relaxed, flagged

// Simultaneous Aberth-Ehrlich iteration from Newton-polygon initial radii,
// followed by Newton polishing.  Deterministic for fixed input.  Throws
// degree_deflation_error when the leading coefficient underflows and
// convergence_error (with the worst achieved residual) when the iteration
// stalls above the relaxed tolerance.
RootSet find_roots(const PolynomialSection& p);

// Same entry point for a raw coefficient array (ascending powers).
RootSet find_roots(const std::vector<std::complex<double>>& coefficients);

}  // namespace zerocorr
