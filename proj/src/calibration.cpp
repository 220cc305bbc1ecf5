#include "iskp/calibration.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace iskp {

namespace {

using nlohmann::json;

// First sign change of g on [lo, hi] scanned in `steps` pieces, then TOMS 748.
// Points where g throws (complex Omega) are skipped.
double scan_root(const std::function<double(double)>& g, double lo, double hi, int steps) {
    auto safe = [&](double x) {
        try {
            return g(x);
        } catch (const std::domain_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    double x0 = lo;
    double g0 = safe(x0);
    for (int i = 1; i <= steps; ++i) {
        const double x1 = lo + (hi - lo) * i / steps;
        const double g1 = safe(x1);
        if (g0 == 0.0) return x0;
        if (!std::isnan(g0) && !std::isnan(g1) && (g0 < 0) != (g1 < 0)) {
            boost::uintmax_t iters = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(50);
            auto r = boost::math::tools::toms748_solve(g, x0, x1, g0, g1, tol, iters);
            return 0.5 * (r.first + r.second);
        }
        x0 = x1;
        g0 = g1;
    }
    throw std::runtime_error("calibration: no root found on the scan interval");
}

} // namespace

SpectrumConvention physical_convention() {
    SpectrumConvention c;
    c.delta_mode = DeltaMode::zero;
    c.omega_form = OmegaForm::derived;
    return c;
}

Calibration calibrate(const MoleculeDatabase& db, const UnitSystem& u, const CalibrationTargets& t) {
    Calibration cal;
    const Molecule mol = lookup_molecule(cal.molecule, db);
    const int cbar = -1;

    // delta
    const DeltaMode modes[] = {DeltaMode::zero, DeltaMode::equal_alpha, DeltaMode::bond_length};
    double best = std::numeric_limits<double>::infinity();
    for (DeltaMode dm : modes) {
        SpectrumConvention c;
        c.delta_mode = dm;
        const auto ctx = make_context(mol, u, cbar, c);
        const double e = ctx.level(0, 0).E;
        cal.delta_candidates.push_back({to_string(dm), e, e - t.zero_field});
        if (std::fabs(e - t.zero_field) < best) {
            best = std::fabs(e - t.zero_field);
            cal.convention.delta_mode = dm;
        }
    }

    // Omega form
    best = std::numeric_limits<double>::infinity();
    for (OmegaForm form : {OmegaForm::derived, OmegaForm::tabulated}) {
        SpectrumConvention c = cal.convention;
        c.omega_form = form;
        const auto ctx = make_context(mol, u, cbar, c);
        const double e = ctx.level(0, -1).E;
        cal.omega_candidates.push_back({to_string(form), e, e - t.m_minus_one});
        if (std::fabs(e - t.m_minus_one) < best) {
            best = std::fabs(e - t.m_minus_one);
            cal.convention.omega_form = form;
        }
    }

    auto ctx = make_context(mol, u, cbar, cal.convention);
    cal.calibration_screening = ctx.pot.screening();

    // w*: at m = 0 only w^2 enters, so solve on w >= 0 and fix the sign with m = 1
    auto e_w = [&](double w, int m, double xi, double coupling) {
        auto c = ctx;
        c.field.w = w;
        c.field.xi = xi;
        c.field.ab_coupling = coupling;
        return c.level(0, m).E;
    };
    const double wabs = scan_root([&](double w) { return e_w(w, 0, 0.0, -2.0) - t.magnetic; }, 0.0, 400.0, 4000);
    const double rp = e_w(wabs, 1, 0.0, -2.0) - t.magnetic_m1;
    const double rm = e_w(-wabs, 1, 0.0, -2.0) - t.magnetic_m1;
    cal.w_star = std::fabs(rp) <= std::fabs(rm) ? wabs : -wabs;
    cal.w_sign_residual = std::fabs(rp) <= std::fabs(rm) ? rp : rm;
    cal.w_residual = e_w(cal.w_star, 0, 0.0, -2.0) - t.magnetic;
    cal.field.w_scale = cal.w_star * cal.calibration_screening / t.B;

    // flux coupling for the "table" convention
    const double kappa = scan_root([&](double k) { return e_w(cal.w_star, 0, t.Phi, k) - t.magnetic_flux; },
                                   -100.0, 100.0, 2000);
    cal.field.table_coupling = kappa;
    cal.coupling_residual = e_w(cal.w_star, 0, t.Phi, kappa) - t.magnetic_flux;
    return cal;
}

const Calibration& default_calibration() {
    static const Calibration c = calibrate(MoleculeDatabase::builtin(), UnitSystem{});
    return c;
}

std::string calibration_to_json(const Calibration& c) {
    json j;
    j["molecule"] = c.molecule;
    j["delta_mode"] = to_string(c.convention.delta_mode);
    j["delta_value"] = c.convention.delta_value;
    j["omega_form"] = to_string(c.convention.omega_form);
    j["w_star"] = c.w_star;
    j["calibration_screening"] = c.calibration_screening;
    j["w_scale"] = c.field.w_scale ? json(*c.field.w_scale) : json(nullptr);
    j["table_coupling"] = c.field.table_coupling ? json(*c.field.table_coupling) : json(nullptr);
    j["w_residual"] = c.w_residual;
    j["w_sign_residual"] = c.w_sign_residual;
    j["coupling_residual"] = c.coupling_residual;
    auto cand = [](const std::vector<CalibrationCandidate>& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back({{"label", x.label}, {"value", x.value}, {"residual", x.residual}});
        return a;
    };
    j["delta_candidates"] = cand(c.delta_candidates);
    j["omega_candidates"] = cand(c.omega_candidates);
    return j.dump(2) + "\n";
}

Calibration calibration_from_json(const std::string& text) {
    const json j = json::parse(text);
    Calibration c;
    c.molecule = j.value("molecule", std::string("H2"));
    c.convention.delta_mode = parse_delta_mode(j.at("delta_mode").get<std::string>());
    c.convention.delta_value = j.value("delta_value", 0.0);
    c.convention.omega_form = parse_omega_form(j.at("omega_form").get<std::string>());
    c.w_star = j.value("w_star", 0.0);
    c.calibration_screening = j.value("calibration_screening", 0.0);
    if (j.contains("w_scale") && !j["w_scale"].is_null()) c.field.w_scale = j["w_scale"].get<double>();
    if (j.contains("table_coupling") && !j["table_coupling"].is_null())
        c.field.table_coupling = j["table_coupling"].get<double>();
    c.w_residual = j.value("w_residual", 0.0);
    c.w_sign_residual = j.value("w_sign_residual", 0.0);
    c.coupling_residual = j.value("coupling_residual", 0.0);
    auto cand = [&](const char* key, std::vector<CalibrationCandidate>& out) {
        if (!j.contains(key)) return;
        for (const auto& x : j[key])
            out.push_back({x.at("label").get<std::string>(), x.at("value").get<double>(),
                           x.at("residual").get<double>()});
    };
    cand("delta_candidates", c.delta_candidates);
    cand("omega_candidates", c.omega_candidates);
    return c;
}

void save_calibration(const Calibration& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write calibration file '" + path + "'");
    f << calibration_to_json(c);
}

Calibration load_calibration(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open calibration file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return calibration_from_json(ss.str());
}

} // namespace iskp
