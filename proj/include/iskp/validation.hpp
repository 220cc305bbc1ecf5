#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iskp/spectrum.hpp"
#include "iskp/thermo.hpp"

namespace iskp {

// Interior points r_i = r_min + i h, i = 1..N, h = (r_max - r_min)/(N + 1); Dirichlet at both ends.
struct RadialGrid {
    double r_min = 1e-4;
    double r_max = 15.0;
    int N = 8000;
    double spacing() const { return (r_max - r_min) / (N + 1); }
    double r(int i) const { return r_min + (i + 1) * spacing(); }
};

// greene_aldrich solves the approximated radial equation whose exact spectrum is the closed
// form; exact keeps the true 1/r and 1/r^2 terms (zero field only) to expose the approximation.
enum class OracleMode { greene_aldrich, exact };

class UnresolvedGridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Default box for a potential: r_max = 30/(alpha+delta), r_min = 1e-4.
RadialGrid default_grid(const PotentialParams& p, int N = 8000);

// Effective potential U(r) in 1/Angstrom^2 of -R'' + U R = (2 mu E / hbar^2) R.
double effective_potential(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f,
                           int m, double r, OracleMode mode = OracleMode::greene_aldrich);

// Lowest k eigenvalues (eV) on one grid, no extrapolation.
std::vector<double> fd_eigensolve(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                                  const FieldConfig& f, int m, int k, const RadialGrid& grid,
                                  OracleMode mode = OracleMode::greene_aldrich);

struct FdResult {
    std::vector<double> E;     // Richardson value from grids N and 2N
    std::vector<double> drift; // |E(N,2N) - E(2N,4N)| per level, eV
};

// Richardson-extrapolated eigenvalues; UnresolvedGridError when a drift exceeds tol (eV).
FdResult fd_eigensolve_refined(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                               const FieldConfig& f, int m, int k, const RadialGrid& grid, double tol = 1e-6,
                               OracleMode mode = OracleMode::greene_aldrich);

// Number of eigenvalues strictly below E (eV), by Sturm count.
int fd_count_below(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int m,
                   double E, const RadialGrid& grid, OracleMode mode = OracleMode::greene_aldrich);

// Interior sign changes of the j-th eigenvector (inverse iteration).
int fd_node_count(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int m,
                  int j, const RadialGrid& grid, OracleMode mode = OracleMode::greene_aldrich);

struct VerifyScope {
    std::vector<std::string> molecules;
    std::vector<int> cbars;
    std::vector<int> ms;
    std::vector<FieldConfig> fields;
    int n_top = 3;
    SpectrumConvention convention;
    bool include_unbound = false; // compare non-normalizable closed-form levels too
    double tolerance = 1e-4;      // relative
    double omega_fault = 0.0;     // added to Omega in the closed form, for fault injection
    int N = 8000;
    double drift_tol = 1e-6;
};

struct VerifyEntry {
    std::string molecule;
    int cbar = 0;
    int m = 0;
    int n = 0;
    double w = 0.0, xi = 0.0;
    double E_closed = 0.0;
    double E_fd = 0.0;
    double rel_err = 0.0;
    double drift = 0.0;
    bool normalizable = false;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;
    int skipped = 0; // non-normalizable levels left out
    int failures() const;
    bool ok() const { return failures() == 0; }
    std::string text() const;
    std::string csv() const;
};

VerifyReport verify_closed_form(const VerifyScope& scope, const MoleculeDatabase& db, const UnitSystem& u);
VerifyReport verify_closed_form_parallel(const VerifyScope& scope, const MoleculeDatabase& db, const UnitSystem& u);

// Direct sum redone in 50-digit arithmetic from Q, R, phi, Omega.
double partition_high_precision(const SpectrumRecast& r, double beta);
std::string partition_high_precision_string(const SpectrumRecast& r, double beta, int digits = 40);

} // namespace iskp
