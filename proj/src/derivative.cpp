#include "iskp/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace iskp {

namespace {

template <class Stencil>
DerivativeResult tableau(Stencil stencil, double x, const DerivativeSettings& s) {
    if (s.levels < 1) throw std::invalid_argument("derivative: need at least one Richardson level");
    double h = s.h0_rel * std::max(1.0, std::fabs(x));
    // keep the stencil inside the domain
    while (x - h <= s.lower_bound) h *= 0.5;
    if (h <= 0 || x - h == x) throw StepCollapseError("derivative: step underflow at x = " + std::to_string(x));

    const int rows = s.levels + 1;
    std::vector<std::vector<double>> T(rows);
    for (int i = 0; i < rows; ++i) {
        T[i].resize(i + 1);
        T[i][0] = stencil(h);
        double p = 4.0;
        for (int j = 1; j <= i; ++j) {
            T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (p - 1.0);
            p *= 4.0;
        }
        h *= 0.5;
    }
    DerivativeResult r;
    r.value = T[rows - 1][rows - 1];
    r.error = std::fabs(T[rows - 1][rows - 1] - T[rows - 2][rows - 2]);
    r.plain = T[rows - 1][0];
    r.converged = std::isfinite(r.value) && r.error <= s.tol * std::max(1.0, std::fabs(r.value));
    return r;
}

} // namespace

DerivativeResult richardson_first(const std::function<double(double)>& f, double x, const DerivativeSettings& s) {
    return tableau([&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }, x, s);
}

DerivativeResult richardson_second(const std::function<double(double)>& f, double x, const DerivativeSettings& s) {
    const double f0 = f(x);
    return tableau([&](double h) { return (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h); }, x, s);
}

double derivative(const std::function<double(double)>& f, double x, const DerivativeSettings& s) {
    const auto r = richardson_first(f, x, s);
    if (!r.converged)
        throw StepCollapseError("first derivative did not converge at x = " + std::to_string(x) +
                                " (error " + std::to_string(r.error) + ")");
    return r.value;
}

double second_derivative(const std::function<double(double)>& f, double x, const DerivativeSettings& s) {
    const auto r = richardson_second(f, x, s);
    if (!r.converged)
        throw StepCollapseError("second derivative did not converge at x = " + std::to_string(x) +
                                " (error " + std::to_string(r.error) + ")");
    return r.value;
}

} // namespace iskp
