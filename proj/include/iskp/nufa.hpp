#pragma once

#include <functional>
#include <stdexcept>

namespace iskp {

// Coefficients of psi'' + (a1 - a2 s)/(s(1 - a3 s)) psi' + (-xi1 s^2 + xi2 s - xi3)/(s^2 (1 - a3 s)^2) psi = 0.
struct NufaProblem {
    double xi1 = 0.0, xi2 = 0.0, xi3 = 0.0;
    double a1 = 1.0, a2 = 1.0, a3 = 1.0;
};

struct NufaSolution {
    double lambda = 0.0;
    double nu = 0.0;
    double hyp_a = 0.0, hyp_b = 0.0, hyp_c = 0.0;
};

class NegativeDiscriminantError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The hypergeometric inner root can be written with xi1/a3^2 or xi1/a3; both agree at a3 = 1.
enum class XiOneScaling { over_a3_squared, over_a3 };

double solve_lambda(const NufaProblem& p);
double solve_nu(const NufaProblem& p);

double quantization_residual(const NufaProblem& p, double lambda, double nu, int n);

NufaSolution hypergeometric_abc(const NufaProblem& p, double lambda, double nu,
                                XiOneScaling scaling = XiOneScaling::over_a3_squared);

// Plus-branch lambda, nu and the hypergeometric parameters in one call.
NufaSolution solve(const NufaProblem& p, XiOneScaling scaling = XiOneScaling::over_a3_squared);

// Bracketed bisection for the energy root of the quantization condition when no closed
// form is available. problem_at maps a trial energy to the NUFA coefficients.
double find_energy_root(const std::function<NufaProblem(double)>& problem_at, int n, double lo, double hi,
                        double tol = 1e-13, int max_iter = 200);

} // namespace iskp
