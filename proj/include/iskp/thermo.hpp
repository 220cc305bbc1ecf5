#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iskp/derivative.hpp"
#include "iskp/spectrum.hpp"

namespace iskp {

struct SpectrumRecast {
    double Q = 0.0;   // eV
    double R = 0.0;
    double phi = 0.0; // eV
    double omega = 0.0;
    int n_max = 0;
    bool bound = false;
};

class RecastInconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Q, R, phi, Omega and n_max for one m; checked against energy() for n = 0..n_max.
SpectrumRecast recast(const SpectrumContext& ctx, int m);

// Same, with n_max imposed (derivatives are taken at a frozen level count).
SpectrumRecast recast_frozen(const SpectrumContext& ctx, int m, int n_max);

double recast_energy(const SpectrumRecast& r, int n);
std::vector<double> recast_levels(const SpectrumRecast& r);

// Z = sum_{n=0}^{n_max} exp(-beta (E_n - E_0)).
double partition_direct(const SpectrumRecast& r, double beta);

enum class EmEnds { lower_only, both_ends };

struct EmResult {
    double Z = 0.0;
    double imag = 0.0; // imaginary part left over by the complex assembly
    double integral = 0.0;
    bool fallback = false;
    std::string warning;
};

// Euler-Maclaurin with B2, B4 and the closed-form integral through erf of complex argument.
// lower_only keeps only the n = 0 endpoint terms; both_ends adds the n = n_max ones.
EmResult partition_euler_maclaurin(const SpectrumRecast& r, double beta, EmEnds ends = EmEnds::both_ends);

enum class PartitionMethod { direct, euler_maclaurin };

struct ThermoSettings {
    // 1e-3 steps leave C rounding-limited near 1e-5 relative; 0.1 max(1, beta) keeps the
    // truncation error below 1e-10 on the default beta range
    DerivativeSettings beta_deriv{0.1, 3, 1e-6, 0.0};
    DerivativeSettings field_deriv{1e-2, 3, 1e-6, -1e300};
    PartitionMethod method = PartitionMethod::direct;
    EmEnds ends = EmEnds::both_ends;
    bool magnetic = true;
};

struct ThermoPoint {
    double beta = 0.0;
    FieldConfig field;
    int m = 0;
    double Z = 0.0;
    double F = 0.0; // eV
    double U = 0.0; // eV
    double S = 0.0; // k_B
    double C = 0.0; // k_B
    double M = 0.0; // eV per unit w
    double chi = 0.0;
    double C_fluct = 0.0; // beta^2 Var(E) from the level list
    bool derivatives_converged = false;
    double dlnZ_err = 0.0, d2lnZ_err = 0.0;
    double dlnZ_plain = 0.0, d2lnZ_plain = 0.0;
    std::string warning;
};

double log_partition(const SpectrumRecast& r, double beta, const ThermoSettings& s);

// ln(Z / (n_max + 1)): the beta- and field-dependent part of ln Z.
double log_partition_excess(const SpectrumRecast& r, double beta, const ThermoSettings& s);

// beta^2 Var(E) over the Boltzmann weights of the levels.
double fluctuation_heat_capacity(const SpectrumRecast& r, double beta);

ThermoPoint observables(const SpectrumContext& ctx, int m, double beta, const ThermoSettings& s = {});

enum class SweepVariable { beta, B, Phi };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& s);

struct SweepSpec {
    SweepVariable variable = SweepVariable::beta;
    std::vector<double> grid;
    double beta = 1.0; // fixed when sweeping a field
    double B = 0.0;    // fixed when not sweeping B
    double Phi = 0.0;  // fixed when not sweeping Phi
    std::string convention = "flux-quantum";
    FieldCalibration calibration;
    int m = 0;
};

struct SweepRow {
    double x = 0.0;
    std::optional<ThermoPoint> point;
    std::string error;
};

// One row per grid node in grid order; failures are recorded per row.
std::vector<SweepRow> sweep(const SpectrumContext& base, const SweepSpec& spec, const ThermoSettings& s = {});
std::vector<SweepRow> sweep_parallel(const SpectrumContext& base, const SweepSpec& spec,
                                     const ThermoSettings& s = {});

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

// 30 log-spaced points on [0.1, 5] 1/eV.
std::vector<double> default_beta_grid();

} // namespace iskp
