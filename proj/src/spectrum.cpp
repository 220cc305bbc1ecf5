#include "iskp/spectrum.hpp"

#include <cmath>

#include "iskp/special_functions.hpp"

namespace iskp {

FieldConfig field_from_raw(double B_raw, double Phi_raw, const PotentialParams& p, const std::string& convention,
                           const FieldCalibration& cal) {
    FieldConfig f;
    f.B_raw = B_raw;
    f.Phi_raw = Phi_raw;
    f.convention = convention;
    if (convention == "flux-quantum") {
        f.ab_coupling = -2.0;
    } else if (convention == "table") {
        if (!cal.table_coupling)
            throw CalibrationMissingError("convention 'table' needs a calibrated flux coupling");
        f.ab_coupling = *cal.table_coupling;
    } else {
        throw UnknownConventionError("unknown field convention '" + convention +
                                     "'; expected flux-quantum or table");
    }
    f.xi = Phi_raw;
    if (B_raw != 0.0) {
        if (!cal.w_scale) throw CalibrationMissingError("B != 0 needs a calibrated field scale (w*)");
        if (!(p.screening() > 0)) throw DegenerateScreeningError("field mapping needs alpha + delta > 0");
        f.w = *cal.w_scale * B_raw / p.screening();
    }
    return f;
}

std::string to_string(DeltaMode m) {
    switch (m) {
    case DeltaMode::zero: return "zero";
    case DeltaMode::equal_alpha: return "equal-alpha";
    case DeltaMode::bond_length: return "bond-length";
    case DeltaMode::explicit_value: return "explicit";
    }
    return "?";
}

std::string to_string(OmegaForm f) { return f == OmegaForm::derived ? "derived" : "tabulated"; }

DeltaMode parse_delta_mode(const std::string& s) {
    if (s == "zero") return DeltaMode::zero;
    if (s == "equal-alpha") return DeltaMode::equal_alpha;
    if (s == "bond-length") return DeltaMode::bond_length;
    if (s == "explicit") return DeltaMode::explicit_value;
    throw std::invalid_argument("unknown delta mode '" + s + "'; expected zero, equal-alpha, bond-length, explicit");
}

OmegaForm parse_omega_form(const std::string& s) {
    if (s == "derived") return OmegaForm::derived;
    if (s == "tabulated") return OmegaForm::tabulated;
    throw std::invalid_argument("unknown omega form '" + s + "'; expected derived or tabulated");
}

double resolve_delta(const SpectrumConvention& c, const Molecule& mol) {
    switch (c.delta_mode) {
    case DeltaMode::zero: return 0.0;
    case DeltaMode::equal_alpha: return mol.alpha;
    case DeltaMode::bond_length: return mol.re;
    case DeltaMode::explicit_value: return c.delta_value;
    }
    return 0.0;
}

DimensionlessParams dimensionless_params(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                                         const FieldConfig& f, int m) {
    const double s = p.screening();
    if (!(s > 0)) throw DegenerateScreeningError("alpha + delta must be positive; use kratzer_limit_energy");
    const double k = two_mu_over_hbar2(mol, u);
    const StrengthConstants P = derive_strengths(p);
    DimensionlessParams d;
    d.k = k;
    d.s = s;
    d.d1 = k * P.P1 / s;
    d.d2 = k * P.P2;
    d.d3 = k * P.P3 / s;
    d.d4 = k * P.P4;
    const double mx = m + f.xi;
    d.gamma = mx * mx - 0.25;
    d.z1 = 2.0 * m * f.w;
    d.z2 = f.w * f.w;
    d.z3 = f.ab_coupling * f.xi * f.w;
    return d;
}

double omega_radicand(const DimensionlessParams& d, int m, const FieldConfig& f, OmegaForm form) {
    const double mx = m + f.xi;
    const double centrifugal = form == OmegaForm::derived ? mx * mx : mx;
    return centrifugal - d.z1 + d.z2 + d.z3 + d.d4 + d.d2;
}

double omega(const DimensionlessParams& d, int m, const FieldConfig& f, OmegaForm form) {
    const double rad = omega_radicand(d, m, f, form);
    if (rad < 0) throw ComplexOmegaError("Omega radicand is negative: " + std::to_string(rad));
    return 0.5 + std::sqrt(rad);
}

double omega_completed_square(const DimensionlessParams& d, int m, const FieldConfig& f) {
    const double t = m + f.xi - f.w;
    const double rad = t * t + d.d2 + d.d4;
    if (rad < 0) throw ComplexOmegaError("Omega radicand is negative");
    return 0.5 + std::sqrt(rad);
}

QRPhi qr_phi(const DimensionlessParams& d) {
    QRPhi q;
    const double s2k = d.s * d.s / d.k;
    // Q = (s^2/k)(gamma - d1 + d2): the same as s^2 gamma / k - s P1 + s^2 P2
    q.Q = s2k * (d.gamma - d.d1 + d.d2);
    q.R = d.d1 - d.d2 + d.d3 - d.gamma + d.z2;
    q.phi = s2k / 4.0;
    return q;
}

NMax n_max(const QRPhi& q, double omega) {
    NMax r;
    if (!(q.R > 0)) return r;
    const double root = std::sqrt(q.R);
    if (root <= omega) return r;
    r.n = static_cast<int>(std::floor(root - omega));
    r.bound = true;
    return r;
}

EnergyLevel energy(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int n,
                   int m, OmegaForm form) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    const DimensionlessParams d = dimensionless_params(mol, u, p, f, m);
    const QRPhi q = qr_phi(d);
    EnergyLevel lv;
    lv.n = n;
    lv.m = m;
    lv.omega = omega(d, m, f, form);
    const double rho = n + lv.omega;
    const double h = (q.R - rho * rho) / rho;
    lv.E = q.Q - q.phi * h * h;
    lv.lambda = 0.5 * h;
    lv.normalizable = lv.lambda > 0;
    const NMax nm = n_max(q, lv.omega);
    lv.beyond_nmax = !nm.bound || n > nm.n;
    return lv;
}

double energy_via_epsilon(const DimensionlessParams& d, double omega, int n) {
    const QRPhi q = qr_phi(d);
    const double rho = n + omega;
    const double lam = (q.R - rho * rho) / (2.0 * rho);
    const double eps = d.d1 - d.d2 - d.gamma + lam * lam;
    return -(d.s * d.s / d.k) * eps;
}

NufaProblem nufa_problem(const DimensionlessParams& d, double omega_radicand) {
    NufaProblem p;
    p.a1 = p.a2 = p.a3 = 1.0;
    p.xi1 = d.eps + d.d3 + d.z2;
    p.xi3 = d.eps - d.d1 + d.d2 + d.gamma;
    p.xi2 = 0.25 + p.xi1 + p.xi3 - omega_radicand;
    return p;
}

EnergyLevel kratzer_limit_energy(double De, double re, double k, int n, int m, const FieldConfig& f,
                                 OmegaForm form) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (f.w != 0.0) throw std::invalid_argument("Kratzer limit: w diverges as alpha+delta -> 0; use w = 0");
    const double P3 = 2.0 * De * re;
    const double P4 = De * re * re;
    const double mx = m + f.xi;
    const double centrifugal = form == OmegaForm::derived ? mx * mx : mx;
    const double rad = centrifugal + k * P4;
    if (rad < 0) throw ComplexOmegaError("Kratzer limit: negative radicand");
    EnergyLevel lv;
    lv.n = n;
    lv.m = m;
    lv.omega = 0.5 + std::sqrt(rad);
    const double rho = n + lv.omega;
    lv.E = -k * P3 * P3 / (4.0 * rho * rho);
    // the pure Kratzer well has infinitely many bound levels
    lv.lambda = std::sqrt(-k * lv.E);
    lv.normalizable = true;
    lv.beyond_nmax = false;
    return lv;
}

RadialWavefunction wavefunction(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                                const FieldConfig& f, int n, int m) {
    RadialWavefunction wf;
    wf.level = energy(mol, u, p, f, n, m, OmegaForm::derived);
    if (!wf.level.normalizable)
        throw std::domain_error("wavefunction: level n=" + std::to_string(n) + " is not normalizable");
    DimensionlessParams d = dimensionless_params(mol, u, p, f, m);
    d.eps = -wf.level.E * d.k / (d.s * d.s);
    const NufaProblem prob = nufa_problem(d, omega_radicand(d, m, f, OmegaForm::derived));
    const NufaSolution sol = solve(prob);
    wf.lam = sol.lambda;
    wf.nu = sol.nu;
    wf.hyp_a = sol.hyp_a;
    wf.hyp_b = sol.hyp_b;
    wf.hyp_c = sol.hyp_c;
    wf.s = d.s;
    return wf;
}

std::vector<double> sample(const RadialWavefunction& wf, const std::vector<double>& r_grid) {
    std::vector<double> out;
    out.reserve(r_grid.size());
    const double nterm = -static_cast<double>(wf.level.n);
    for (double r : r_grid) {
        const double y = std::exp(-wf.s * r);
        if (y <= 0.0 || y >= 1.0) {
            out.push_back(0.0);
            continue;
        }
        const double poly = gauss_2f1_terminating(nterm, wf.hyp_a, wf.hyp_c, y);
        out.push_back(std::pow(y, wf.lam) * std::pow(1.0 - y, wf.nu) * poly);
    }
    return out;
}

SpectrumContext make_context(const Molecule& mol, const UnitSystem& u, int cbar, const SpectrumConvention& conv,
                             const FieldConfig& f) {
    SpectrumContext c;
    c.mol = mol;
    c.units = u;
    c.pot = potential_from_molecule(mol, cbar, resolve_delta(conv, mol));
    c.field = f;
    c.form = conv.omega_form;
    return c;
}

} // namespace iskp
