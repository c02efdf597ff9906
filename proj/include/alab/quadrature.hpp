#pragma once

#include <functional>

namespace alab {

// Adaptive Simpson integration on [a, b]. Recurses until the local error
// estimate is below tol (absolute) or max_depth is hit.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 60);

}  // namespace alab
