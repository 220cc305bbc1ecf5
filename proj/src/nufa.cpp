#include "iskp/nufa.hpp"

#include <cmath>
#include <string>

namespace iskp {

double solve_lambda(const NufaProblem& p) {
    const double d = (1.0 - p.a1) * (1.0 - p.a1) + 4.0 * p.xi3;
    if (d < 0) throw NegativeDiscriminantError("lambda: negative discriminant " + std::to_string(d));
    return 0.5 * (1.0 - p.a1) + 0.5 * std::sqrt(d);
}

double solve_nu(const NufaProblem& p) {
    if (p.a3 == 0.0) throw std::invalid_argument("nu: a3 must be nonzero");
    const double lin = p.a3 + p.a1 * p.a3 - p.a2;
    const double d = lin * lin + 4.0 * (p.xi1 / p.a3 + p.a3 * p.xi3 - p.xi2);
    if (d < 0) throw NegativeDiscriminantError("nu: negative discriminant " + std::to_string(d));
    return 0.5 * (lin + std::sqrt(d));
}

double quantization_residual(const NufaProblem& p, double lambda, double nu, int n) {
    const double r = p.a2 / p.a3 - 1.0;
    const double t = nu + r + n / std::sqrt(p.a3);
    return lambda * lambda + 2.0 * lambda * t + t * t - r * r - p.xi1 / (p.a3 * p.a3);
}

NufaSolution hypergeometric_abc(const NufaProblem& p, double lambda, double nu, XiOneScaling scaling) {
    const double r = p.a2 / p.a3 - 1.0;
    const double x1 = scaling == XiOneScaling::over_a3_squared ? p.xi1 / (p.a3 * p.a3) : p.xi1 / p.a3;
    const double d = r * r + x1;
    if (d < 0) throw NegativeDiscriminantError("hypergeometric parameters: negative discriminant");
    const double root = std::sqrt(d);
    const double sa3 = std::sqrt(p.a3);
    NufaSolution s;
    s.lambda = lambda;
    s.nu = nu;
    s.hyp_a = sa3 * (lambda + nu + r + root);
    s.hyp_b = sa3 * (lambda + nu + r - root);
    s.hyp_c = p.a1 + 2.0 * lambda;
    return s;
}

NufaSolution solve(const NufaProblem& p, XiOneScaling scaling) {
    return hypergeometric_abc(p, solve_lambda(p), solve_nu(p), scaling);
}

double find_energy_root(const std::function<NufaProblem(double)>& problem_at, int n, double lo, double hi,
                        double tol, int max_iter) {
    auto g = [&](double e) {
        const NufaProblem p = problem_at(e);
        return quantization_residual(p, solve_lambda(p), solve_nu(p), n);
    };
    double flo = g(lo);
    double fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::domain_error("energy root not bracketed");
    for (int it = 0; it < max_iter && hi - lo > tol * std::max(1.0, std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace iskp
