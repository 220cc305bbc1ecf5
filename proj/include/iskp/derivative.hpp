#pragma once

#include <functional>
#include <stdexcept>

namespace iskp {

struct DerivativeSettings {
    double h0_rel = 1e-3; // h0 = h0_rel * max(1, |x|)
    int levels = 3;       // step halvings, so levels+1 rows in the tableau
    double tol = 1e-6;    // relative convergence tolerance of the last Richardson step
    double lower_bound = -1e300; // x - h must stay above this (beta > 0)
};

struct DerivativeResult {
    double value = 0.0;
    double error = 0.0;     // |last - previous| on the tableau diagonal
    double plain = 0.0;     // central difference at the smallest step, no extrapolation
    bool converged = false;
};

class StepCollapseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Central differences with Richardson extrapolation in h^2.
DerivativeResult richardson_first(const std::function<double(double)>& f, double x, const DerivativeSettings& s = {});
DerivativeResult richardson_second(const std::function<double(double)>& f, double x,
                                   const DerivativeSettings& s = {});

// Throwing variants: StepCollapseError when the tableau does not settle within tol.
double derivative(const std::function<double(double)>& f, double x, const DerivativeSettings& s = {});
double second_derivative(const std::function<double(double)>& f, double x, const DerivativeSettings& s = {});

} // namespace iskp
