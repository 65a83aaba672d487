#pragma once

#include <cstddef>
#include <functional>

namespace zerocorr {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    size_t evaluations = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod (G7, K15) on [a, b].  Bisects until the local
// error estimate meets the tolerance share of the subinterval; handles
// integrable endpoint singularities (log-type) by depth-limited refinement.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth = 52);

}  // namespace zerocorr
