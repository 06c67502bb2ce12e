#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace relsim {

// Adaptive Simpson on [a,b], absolute tolerance.  The integrand must be
// smooth on the interval; discontinuities are handled by the piecewise
// wrapper below.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 50);

// Integrate over [a,b] split at the given interior points (sorted,
// strictly inside (a,b)); each piece gets the full tolerance divided by
// the number of pieces.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> interior_breaks, double abs_tol);

// Solve g(t) = target for increasing continuous g on [0, inf).
// Brackets by doubling from t=1, bisects, then polishes with secant steps.
double solve_increasing(const std::function<double(double)>& g, double target,
                        double time_tol = 1e-10);

}  // namespace relsim
