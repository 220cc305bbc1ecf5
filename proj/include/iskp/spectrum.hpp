#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iskp/nufa.hpp"
#include "iskp/potential.hpp"
#include "iskp/units.hpp"

namespace iskp {

// All B dependence goes through the signed w = eta B / (hbar (alpha+delta)).
// z1 = 2 m w, z2 = w^2, z3 = ab_coupling * xi * w (ab_coupling = -2 for the flux-quantum mapping).
struct FieldConfig {
    double w = 0.0;
    double xi = 0.0;
    double ab_coupling = -2.0;
    std::optional<double> B_raw;
    std::optional<double> Phi_raw;
    std::string convention = "direct";
};

// Per-unit-B factor eta/hbar in 1/Angstrom, so w = w_scale * B_raw / (alpha+delta).
struct FieldCalibration {
    std::optional<double> w_scale;
    std::optional<double> table_coupling;
};

class UnknownConventionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CalibrationMissingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateScreeningError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ComplexOmegaError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Conventions: "flux-quantum" (xi = Phi_raw, coupling -2) and "table" (xi = Phi_raw,
// coupling taken from the calibration). Both need w_scale when B_raw != 0.
FieldConfig field_from_raw(double B_raw, double Phi_raw, const PotentialParams& p, const std::string& convention,
                           const FieldCalibration& cal);

enum class DeltaMode { zero, equal_alpha, bond_length, explicit_value };
enum class OmegaForm { derived, tabulated };

struct SpectrumConvention {
    DeltaMode delta_mode = DeltaMode::zero;
    double delta_value = 0.0; // used by explicit_value
    OmegaForm omega_form = OmegaForm::derived;
};

std::string to_string(DeltaMode m);
std::string to_string(OmegaForm f);
DeltaMode parse_delta_mode(const std::string& s);
OmegaForm parse_omega_form(const std::string& s);

double resolve_delta(const SpectrumConvention& c, const Molecule& mol);

struct DimensionlessParams {
    double eps = 0.0; // E = -(s^2/k) eps
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
    double z1 = 0.0, z2 = 0.0, z3 = 0.0;
    double gamma = 0.0;
    double k = 0.0; // 2 mu / hbar^2
    double s = 0.0; // alpha + delta
};

DimensionlessParams dimensionless_params(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                                         const FieldConfig& f, int m);

// Radicand of Omega - 1/2. The derived form uses (m+xi)^2; the tabulated form uses (m+xi).
double omega_radicand(const DimensionlessParams& d, int m, const FieldConfig& f,
                      OmegaForm form = OmegaForm::derived);
double omega(const DimensionlessParams& d, int m, const FieldConfig& f, OmegaForm form = OmegaForm::derived);

// 1/2 + sqrt((m+xi-w)^2 + d2 + d4); equals the derived omega when ab_coupling = -2.
double omega_completed_square(const DimensionlessParams& d, int m, const FieldConfig& f);

// E(n) = Q - phi ((R - rho^2)/rho)^2, rho = n + Omega.
struct QRPhi {
    double Q = 0.0;   // eV
    double R = 0.0;
    double phi = 0.0; // eV
};

QRPhi qr_phi(const DimensionlessParams& d);

struct NMax {
    int n = 0;
    bool bound = false;
};

NMax n_max(const QRPhi& q, double omega);

struct EnergyLevel {
    int n = 0;
    int m = 0;
    double E = 0.0;
    double omega = 0.0;
    double lambda = 0.0;        // signed (R - rho^2)/(2 rho); > 0 for a normalizable state
    bool normalizable = false;
    bool beyond_nmax = false;
};

EnergyLevel energy(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int n,
                   int m, OmegaForm form = OmegaForm::derived);

// Same level computed through eps = d1 - d2 - gamma + lambda^2 and E = -(s^2/k) eps.
double energy_via_epsilon(const DimensionlessParams& d, double omega, int n);

// NUFA coefficients of the radial equation at the energy d.eps.
NufaProblem nufa_problem(const DimensionlessParams& d, double omega_radicand);

// alpha+delta -> 0 limit, cbar = -1: E = -k P3^2 / (4 rho^2). Requires w = 0.
EnergyLevel kratzer_limit_energy(double De, double re, double k, int n, int m, const FieldConfig& f,
                                 OmegaForm form = OmegaForm::derived);

struct RadialWavefunction {
    EnergyLevel level;
    double lam = 0.0;
    double nu = 0.0;
    double hyp_a = 0.0, hyp_b = 0.0, hyp_c = 0.0;
    double s = 0.0;
};

// Built for the derived Omega form at a normalizable level. hyp_b = -n terminates the series.
RadialWavefunction wavefunction(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                                const FieldConfig& f, int n, int m);

// Unnormalized R(y) = y^lam (1-y)^nu 2F1(-n, a; c; y), y = exp(-(alpha+delta) r).
std::vector<double> sample(const RadialWavefunction& wf, const std::vector<double>& r_grid);

// Everything needed to evaluate levels of one (molecule, potential, field) point.
struct SpectrumContext {
    Molecule mol;
    UnitSystem units;
    PotentialParams pot;
    FieldConfig field;
    OmegaForm form = OmegaForm::derived;

    EnergyLevel level(int n, int m) const { return energy(mol, units, pot, field, n, m, form); }
    DimensionlessParams params(int m) const { return dimensionless_params(mol, units, pot, field, m); }
};

SpectrumContext make_context(const Molecule& mol, const UnitSystem& u, int cbar, const SpectrumConvention& conv,
                             const FieldConfig& f = {});

} // namespace iskp
