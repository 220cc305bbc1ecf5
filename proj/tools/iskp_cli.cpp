// iskp: energies, table regeneration, thermodynamic sweeps and oracle validation.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iskp/calibration.hpp"
#include "iskp/format.hpp"
#include "iskp/report.hpp"
#include "iskp/thermo.hpp"
#include "iskp/validation.hpp"

using namespace iskp;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::string> molecules;
    int cbar = -1;
    std::string n_spec = "0..3";
    std::string m_spec = "0";
    double w = 0.0, xi = 0.0, B = 0.0, Phi = 0.0;
    std::string convention = "flux-quantum";
    std::string delta_mode;
    double delta = 0.0;
    std::string omega_form;
    bool physical = false;
    std::string units = "physical";
    std::string format = "text";
    std::string out;
    std::string calibration;
    bool no_calibration = false;
    double w_scale = 0.0, table_coupling = 0.0;
    int id = 2;
    bool diff = false;
    std::string sweep = "beta";
    double from = 0.0, to = 0.0;
    int points = 30;
    std::string spacing;
    double beta = 1.0;
    std::string method = "direct";
    bool serial = false;
    double tolerance = 1e-4;
    double em_tolerance = 0.02;
    bool include_unbound = false;
    std::string report;
    std::string config;

    std::set<std::string> given; // keys set by the config file or on the command line
    bool has(const std::string& k) const { return given.count(k) > 0; }
};

// ---- config file ----

std::string json_position(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
void take(const json& j, const char* key, T& dst, RunConfig& cfg, const std::string& prefix = "") {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError("config field '" + prefix + key + "': wrong type (" + j.at(key).type_name() + ")");
    }
    cfg.given.insert(prefix + key);
}

void load_config(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + path + "' " + json_position(text, e.byte == 0 ? 0 : e.byte - 1) +
                         ": malformed JSON");
    }
    if (!j.is_object()) throw UsageError("config '" + path + "': top level must be an object");
    static const std::set<std::string> known = {
        "molecule", "cbar",      "n",           "m",           "w",        "xi",           "B",
        "Phi",      "convention", "delta_mode", "delta",       "omega_form", "physical",   "units",
        "format",   "out",       "calibration", "no_calibration", "w_scale", "table_coupling", "id",
        "diff",     "sweep",     "beta",        "method",      "serial",   "tolerance",    "em_tolerance",
        "include_unbound", "report"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw UsageError("config field '" + it.key() + "': unknown key");

    if (j.contains("molecule")) {
        const json& v = j["molecule"];
        if (v.is_string()) {
            cfg.molecules = {v.get<std::string>()};
        } else if (v.is_array()) {
            cfg.molecules.clear();
            for (const auto& e : v) {
                if (!e.is_string()) throw UsageError("config field 'molecule': array entries must be strings");
                cfg.molecules.push_back(e.get<std::string>());
            }
        } else {
            throw UsageError("config field 'molecule': expected string or array of strings");
        }
        cfg.given.insert("molecule");
    }
    take(j, "cbar", cfg.cbar, cfg);
    // n and m accept either a number or a range string
    for (const char* key : {"n", "m"}) {
        if (!j.contains(key)) continue;
        const json& v = j[key];
        std::string& dst = std::string(key) == "n" ? cfg.n_spec : cfg.m_spec;
        if (v.is_number_integer()) dst = std::to_string(v.get<int>());
        else if (v.is_string()) dst = v.get<std::string>();
        else throw UsageError(std::string("config field '") + key + "': expected integer or range string");
        cfg.given.insert(key);
    }
    take(j, "w", cfg.w, cfg);
    take(j, "xi", cfg.xi, cfg);
    take(j, "B", cfg.B, cfg);
    take(j, "Phi", cfg.Phi, cfg);
    take(j, "convention", cfg.convention, cfg);
    take(j, "delta_mode", cfg.delta_mode, cfg);
    take(j, "delta", cfg.delta, cfg);
    take(j, "omega_form", cfg.omega_form, cfg);
    take(j, "physical", cfg.physical, cfg);
    take(j, "units", cfg.units, cfg);
    take(j, "format", cfg.format, cfg);
    take(j, "out", cfg.out, cfg);
    take(j, "calibration", cfg.calibration, cfg);
    take(j, "no_calibration", cfg.no_calibration, cfg);
    take(j, "w_scale", cfg.w_scale, cfg);
    take(j, "table_coupling", cfg.table_coupling, cfg);
    take(j, "id", cfg.id, cfg);
    take(j, "diff", cfg.diff, cfg);
    take(j, "beta", cfg.beta, cfg);
    take(j, "method", cfg.method, cfg);
    take(j, "serial", cfg.serial, cfg);
    take(j, "tolerance", cfg.tolerance, cfg);
    take(j, "em_tolerance", cfg.em_tolerance, cfg);
    take(j, "include_unbound", cfg.include_unbound, cfg);
    take(j, "report", cfg.report, cfg);
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        if (s.is_string()) {
            cfg.sweep = s.get<std::string>();
            cfg.given.insert("sweep");
        } else if (s.is_object()) {
            for (auto it = s.begin(); it != s.end(); ++it)
                if (!std::set<std::string>{"variable", "from", "to", "points", "spacing"}.count(it.key()))
                    throw UsageError("config field 'sweep." + it.key() + "': unknown key");
            take(s, "variable", cfg.sweep, cfg, "sweep.");
            take(s, "from", cfg.from, cfg, "sweep.");
            take(s, "to", cfg.to, cfg, "sweep.");
            take(s, "points", cfg.points, cfg, "sweep.");
            take(s, "spacing", cfg.spacing, cfg, "sweep.");
            if (cfg.has("sweep.variable")) cfg.given.insert("sweep");
            if (cfg.has("sweep.from")) cfg.given.insert("from");
            if (cfg.has("sweep.to")) cfg.given.insert("to");
            if (cfg.has("sweep.points")) cfg.given.insert("points");
            if (cfg.has("sweep.spacing")) cfg.given.insert("spacing");
        } else {
            throw UsageError("config field 'sweep': expected string or object");
        }
    }
}

// "3", "0..3", "-1,0,1" or "-1..1,3"
std::vector<int> parse_int_list(const std::string& spec, const char* what) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string part;
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("--") + what + ": cannot parse '" + spec + "'");
        }
    };
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(part));
        } else {
            const int a = to_int(part.substr(0, dots)), b = to_int(part.substr(dots + 2));
            if (b < a) throw UsageError(std::string("--") + what + ": range '" + part + "' is decreasing");
            for (int i = a; i <= b; ++i) out.push_back(i);
        }
    }
    if (out.empty()) throw UsageError(std::string("--") + what + ": empty list");
    return out;
}

// ---- shared resolution ----

struct Resolved {
    MoleculeDatabase db;
    UnitSystem units;
    Calibration cal;
    std::string cal_source;
};

Resolved resolve(const RunConfig& cfg) {
    Resolved r;
    r.db = MoleculeDatabase::from_environment();
    if (cfg.units == "physical") r.units = UnitSystem{};
    else if (cfg.units == "reduced") r.units = UnitSystem::reduced();
    else throw UsageError("--units: expected physical or reduced, got '" + cfg.units + "'");

    if (cfg.no_calibration) {
        r.cal.convention = physical_convention();
        r.cal_source = "none (--no-calibration)";
    } else if (!cfg.calibration.empty()) {
        if (!std::filesystem::exists(cfg.calibration))
            throw UsageError("calibration file '" + cfg.calibration + "' not found");
        r.cal = load_calibration(cfg.calibration);
        r.cal_source = cfg.calibration;
    } else if (std::filesystem::exists("calibration.json")) {
        r.cal = load_calibration("calibration.json");
        r.cal_source = "calibration.json";
    } else if (std::getenv("ISKP_MOLECULE_DB")) {
        r.cal = calibrate(r.db, UnitSystem{});
        r.cal_source = "computed from ISKP_MOLECULE_DB";
    } else {
        r.cal = default_calibration();
        r.cal_source = "built-in";
    }

    if (cfg.physical) r.cal.convention = physical_convention();
    if (cfg.has("delta_mode")) {
        try {
            r.cal.convention.delta_mode = parse_delta_mode(cfg.delta_mode);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--delta-mode: ") + e.what());
        }
    }
    if (cfg.has("delta")) {
        r.cal.convention.delta_value = cfg.delta;
        if (!cfg.has("delta_mode")) r.cal.convention.delta_mode = DeltaMode::explicit_value;
    }
    if (cfg.has("omega_form")) {
        try {
            r.cal.convention.omega_form = parse_omega_form(cfg.omega_form);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--omega-form: ") + e.what());
        }
    }
    if (cfg.has("w_scale")) r.cal.field.w_scale = cfg.w_scale;
    if (cfg.has("table_coupling")) r.cal.field.table_coupling = cfg.table_coupling;
    return r;
}

bool direct_field(const RunConfig& cfg) {
    const bool direct = cfg.has("w") || cfg.has("xi");
    const bool raw = cfg.has("B") || cfg.has("Phi");
    if (direct && raw) throw UsageError("give the field either as --w/--xi or as --B/--Phi, not both");
    return direct;
}

FieldConfig resolve_field(const RunConfig& cfg, const Resolved& r, const PotentialParams& pot) {
    if (direct_field(cfg)) {
        FieldConfig f;
        f.w = cfg.w;
        f.xi = cfg.xi;
        return f;
    }
    return field_from_raw(cfg.B, cfg.Phi, pot, cfg.convention, r.cal.field);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream o(cfg.out, std::ios::binary);
    if (!o) throw UsageError("cannot write '" + cfg.out + "'");
    o << text;
}

std::vector<std::string> molecules_or(const RunConfig& cfg, std::vector<std::string> fallback) {
    return cfg.molecules.empty() ? fallback : cfg.molecules;
}

// ---- commands ----

int cmd_energy(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    const auto ns = parse_int_list(cfg.n_spec, "n");
    const auto ms = parse_int_list(cfg.m_spec, "m");
    std::vector<EnergyRow> rows;
    for (const auto& name : molecules_or(cfg, {"H2"})) {
        const Molecule mol = lookup_molecule(name, r.db);
        SpectrumContext ctx = make_context(mol, r.units, cfg.cbar, r.cal.convention);
        ctx.field = resolve_field(cfg, r, ctx.pot);
        for (int m : ms)
            for (int n : ns) rows.push_back({mol.name, cfg.cbar, ctx.field, ctx.level(n, m)});
    }
    if (cfg.format == "text") {
        emit(cfg, energy_text(rows));
    } else if (cfg.format == "csv") {
        emit(cfg, energy_csv(rows));
    } else if (cfg.format == "json") {
        json j = json::array();
        for (const auto& row : rows)
            j.push_back({{"molecule", row.molecule}, {"cbar", row.cbar}, {"n", row.level.n}, {"m", row.level.m},
                         {"w", row.field.w}, {"xi", row.field.xi}, {"Omega", row.level.omega},
                         {"E", row.level.E}, {"lambda", row.level.lambda},
                         {"normalizable", row.level.normalizable}});
        emit(cfg, j.dump(2) + "\n");
    } else {
        throw UsageError("--format: expected text, csv or json");
    }
    return 0;
}

int cmd_table(const RunConfig& cfg) {
    if (cfg.id < 2 || cfg.id > 12) throw UsageError("--id: table id must be in 2..12");
    const Resolved r = resolve(cfg);
    if (cfg.id <= 10 && !r.cal.field.w_scale)
        throw CalibrationMissingError("table " + std::to_string(cfg.id) +
                                      " has B=2 columns but no w scale is set; run 'iskp calibrate' or pass "
                                      "--w-scale");
    TableOptions opt;
    opt.convention = cfg.convention;
    opt.diff = cfg.diff;
    const UnitSystem u = cfg.id == 11 ? UnitSystem::reduced() : r.units;
    const TableOutput t = table_output(cfg.id, r.cal, r.db, u, opt);
    emit(cfg, t.csv);
    if (cfg.diff && cfg.id != 12) {
        std::ostream& log = (cfg.out.empty() || cfg.out == "-") ? std::cerr : std::cout;
        for (const auto& n : t.notes) log << "# " << n << "\n";
        for (size_t c = 0; c < t.max_abs_diff.size(); ++c)
            log << "max |diff| " << t.column_labels[c] << ": " << format_double(t.max_abs_diff[c]) << "\n";
    }
    return 0;
}

int cmd_thermo(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    const SweepVariable var = parse_sweep_variable(cfg.sweep);
    const bool log_spacing =
        cfg.has("spacing") ? (cfg.spacing == "log") : (var == SweepVariable::beta);
    if (cfg.has("spacing") && cfg.spacing != "log" && cfg.spacing != "linear")
        throw UsageError("--spacing: expected log or linear");
    double lo = cfg.from, hi = cfg.to;
    if (!cfg.has("from")) lo = var == SweepVariable::beta ? 0.1 : 0.0;
    if (!cfg.has("to")) hi = var == SweepVariable::beta ? 5.0 : 4.0;
    if (cfg.points < 0) throw UsageError("--points must be >= 0");
    SweepSpec spec;
    spec.variable = var;
    try {
        spec.grid = log_spacing ? log_grid(lo, hi, cfg.points) : linear_grid(lo, hi, cfg.points);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("sweep grid: ") + e.what());
    }
    spec.beta = cfg.beta;
    spec.B = cfg.B;
    spec.Phi = cfg.Phi;
    spec.convention = cfg.convention;
    spec.calibration = r.cal.field;
    const auto ms = parse_int_list(cfg.m_spec, "m");
    if (ms.size() != 1) throw UsageError("--m: thermo takes a single m");
    spec.m = ms.front();
    if (direct_field(cfg)) throw UsageError("thermo sweeps take the field as --B/--Phi");

    ThermoSettings st;
    if (cfg.method == "direct") st.method = PartitionMethod::direct;
    else if (cfg.method == "em") st.method = PartitionMethod::euler_maclaurin;
    else throw UsageError("--method: expected direct or em");

    std::vector<ThermoBlock> blocks;
    for (const auto& name : molecules_or(cfg, {"H2", "HCl", "LiH"})) {
        const Molecule mol = lookup_molecule(name, r.db);
        const SpectrumContext ctx = make_context(mol, r.units, cfg.cbar, r.cal.convention);
        ThermoBlock b;
        b.molecule = mol.name;
        b.cbar = cfg.cbar;
        b.variable = var;
        b.rows = cfg.serial ? sweep(ctx, spec, st) : sweep_parallel(ctx, spec, st);
        blocks.push_back(std::move(b));
    }
    if (blocks.empty()) blocks.push_back({"", cfg.cbar, var, {}});
    emit(cfg, thermo_csv(blocks));
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    std::ostringstream o;
    o << "calibration source: " << r.cal_source << "\n";
    o << "calibrated delta mode: " << to_string(r.cal.convention.delta_mode)
      << ", Omega form: " << to_string(r.cal.convention.omega_form) << "\n";
    o << "calibrated w* (H2, B=2): " << format_double(r.cal.w_star) << ", w scale: "
      << (r.cal.field.w_scale ? format_double(*r.cal.field.w_scale) : std::string("unset")) << "\n";

    VerifyScope scope;
    scope.molecules = molecules_or(cfg, {"H2", "HCl", "LiH"});
    scope.cbars = {-1, 0, 1};
    scope.ms = {-1, 0, 1};
    FieldConfig flux;
    flux.xi = 2.0;
    FieldConfig mag;
    mag.w = 0.5;
    scope.fields = {FieldConfig{}, flux, mag};
    scope.convention = physical_convention();
    scope.tolerance = cfg.tolerance;
    scope.include_unbound = cfg.include_unbound;
    const VerifyReport rep = cfg.serial ? verify_closed_form(scope, r.db, r.units)
                                        : verify_closed_form_parallel(scope, r.db, r.units);
    o << "\n[closed form vs finite differences, delta 0, derived Omega, tolerance " << format_double(cfg.tolerance)
      << " relative]\n";
    o << rep.text();

    o << "\n[Euler-Maclaurin (both ends) vs direct sum, m = 0, 30 beta in [0.5, 5], tolerance "
      << format_double(cfg.em_tolerance) << " relative]\n";
    int em_fail = 0, em_cases = 0, em_fallback = 0;
    double em_worst = 0.0, im_worst = 0.0;
    const auto betas = log_grid(0.5, 5.0, 30);
    for (const auto& name : scope.molecules) {
        const Molecule mol = lookup_molecule(name, r.db);
        for (int cbar : scope.cbars) {
            const SpectrumContext ctx = make_context(mol, r.units, cbar, physical_convention());
            const SpectrumRecast rc = recast(ctx, 0);
            for (double beta : betas) {
                const double zd = partition_direct(rc, beta);
                const EmResult em = partition_euler_maclaurin(rc, beta, EmEnds::both_ends);
                ++em_cases;
                if (em.fallback) {
                    ++em_fallback;
                    continue;
                }
                const double rel = std::fabs(em.Z - zd) / std::fabs(zd);
                const double im = std::fabs(em.imag) / std::fabs(em.Z);
                em_worst = std::max(em_worst, rel);
                im_worst = std::max(im_worst, im);
                if (!(rel <= cfg.em_tolerance) || !(im <= 1e-10)) {
                    ++em_fail;
                    o << "FAIL " << mol.name << " cbar " << cbar << " beta " << format_double(beta) << " rel "
                      << format_double(rel) << " |Im|/Z " << format_double(im) << "\n";
                }
            }
        }
    }
    o << "cases " << em_cases << ", direct-sum fallbacks " << em_fallback << ", worst rel "
      << format_double(em_worst) << ", worst |Im|/Z " << format_double(im_worst) << ", failures " << em_fail
      << "\n";

    const bool ok = rep.ok() && em_fail == 0;
    o << "\n" << (ok ? "PASS" : "FAIL") << "\n";
    std::cout << o.str();
    if (!cfg.report.empty()) {
        std::ofstream f(cfg.report, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + cfg.report + "'");
        f << rep.csv();
    }
    return ok ? 0 : 1;
}

int cmd_calibrate(const RunConfig& cfg) {
    const MoleculeDatabase db = MoleculeDatabase::from_environment();
    const Calibration c = calibrate(db, UnitSystem{});
    const std::string path = cfg.out.empty() ? "calibration.json" : cfg.out;
    save_calibration(c, path);
    std::cout << "delta mode " << to_string(c.convention.delta_mode) << ", Omega form "
              << to_string(c.convention.omega_form) << ", w* " << format_double(c.w_star) << ", w scale "
              << format_double(c.field.w_scale.value_or(0.0)) << ", table coupling "
              << format_double(c.field.table_coupling.value_or(0.0)) << "\nwritten to " << path << "\n";
    return 0;
}

std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Improved screened Kratzer potential in magnetic and AB fields: spectra and thermodynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "iskp 1.0");

    std::vector<std::pair<CLI::Option*, std::string>> tracked;
    auto opt = [&](CLI::App* sub, const std::string& flag, auto& var, const std::string& key, const std::string& help) {
        tracked.emplace_back(sub->add_option(flag, var, help), key);
    };
    auto flag = [&](CLI::App* sub, const std::string& name, bool& var, const std::string& key, const std::string& help) {
        tracked.emplace_back(sub->add_flag(name, var, help), key);
    };

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", cfg.config, "JSON run configuration; flags override its values");
        opt(sub, "--calibration", cfg.calibration, "calibration", "calibration JSON (default ./calibration.json)");
        flag(sub, "--no-calibration", cfg.no_calibration, "no_calibration",
             "ignore calibration; delta 0 and derived Omega unless given explicitly");
        opt(sub, "--delta-mode", cfg.delta_mode, "delta_mode", "zero | equal-alpha | bond-length | explicit");
        opt(sub, "--delta", cfg.delta, "delta", "explicit delta in 1/Angstrom");
        opt(sub, "--omega-form", cfg.omega_form, "omega_form", "derived | tabulated");
        flag(sub, "--physical", cfg.physical, "physical", "delta 0 and derived Omega");
        opt(sub, "--units", cfg.units, "units", "physical | reduced");
        opt(sub, "--w-scale", cfg.w_scale, "w_scale", "eta/hbar per unit B in 1/Angstrom");
        opt(sub, "--table-coupling", cfg.table_coupling, "table_coupling", "xi-w coupling of the table convention");
        opt(sub, "--out,-o", cfg.out, "out", "output path (default stdout)");
    };
    auto molecule_opts = [&](CLI::App* sub) {
        opt(sub, "--molecule", cfg.molecules, "molecule", "molecule name(s): H2, HCl, LiH");
        opt(sub, "--cbar", cfg.cbar, "cbar", "control parameter -1, 0 or 1");
    };
    auto field_opts = [&](CLI::App* sub) {
        opt(sub, "--w", cfg.w, "w", "dimensionless cyclotron parameter w");
        opt(sub, "--xi", cfg.xi, "xi", "AB flux ratio xi");
        opt(sub, "--B", cfg.B, "B", "raw magnetic field value (needs a w scale)");
        opt(sub, "--Phi", cfg.Phi, "Phi", "raw AB flux value");
        opt(sub, "--convention", cfg.convention, "convention", "raw field convention: flux-quantum | table");
    };

    CLI::App* energy = app.add_subcommand("energy", "closed-form levels");
    common(energy);
    molecule_opts(energy);
    field_opts(energy);
    opt(energy, "--n", cfg.n_spec, "n", "vibrational numbers, e.g. 0..3 or 0,2");
    opt(energy, "--m", cfg.m_spec, "m", "magnetic numbers, e.g. -1..1");
    opt(energy, "--format", cfg.format, "format", "text | csv | json");

    CLI::App* table = app.add_subcommand("table", "regenerate a published table as CSV");
    common(table);
    opt(table, "--id", cfg.id, "id", "table id 2..12");
    flag(table, "--diff", cfg.diff, "diff", "add fixture/difference columns and print max deviation");
    opt(table, "--convention", cfg.convention, "convention", "B=2,Phi=2 column convention: flux-quantum | table");

    CLI::App* thermo = app.add_subcommand("thermo", "thermodynamic sweep as CSV");
    common(thermo);
    molecule_opts(thermo);
    field_opts(thermo);
    opt(thermo, "--sweep", cfg.sweep, "sweep", "beta | B | Phi");
    opt(thermo, "--from", cfg.from, "from", "grid start");
    opt(thermo, "--to", cfg.to, "to", "grid end");
    opt(thermo, "--points", cfg.points, "points", "grid size (0 gives a header-only CSV)");
    opt(thermo, "--spacing", cfg.spacing, "spacing", "log | linear (log for beta by default)");
    opt(thermo, "--beta", cfg.beta, "beta", "fixed beta (1/eV) for field sweeps");
    opt(thermo, "--m", cfg.m_spec, "m", "magnetic number");
    opt(thermo, "--method", cfg.method, "method", "direct | em");
    flag(thermo, "--serial", cfg.serial, "serial", "disable the parallel sweep");

    CLI::App* validate = app.add_subcommand("validate", "closed form vs finite differences, EM vs direct sum");
    common(validate);
    opt(validate, "--molecule", cfg.molecules, "molecule", "molecule name(s)");
    opt(validate, "--tolerance", cfg.tolerance, "tolerance", "relative tolerance for the FD comparison");
    opt(validate, "--em-tolerance", cfg.em_tolerance, "em_tolerance", "relative tolerance for EM vs direct");
    flag(validate, "--include-unbound", cfg.include_unbound, "include_unbound",
         "also compare non-normalizable closed-form levels");
    opt(validate, "--report", cfg.report, "report", "write the per-level CSV report here");
    flag(validate, "--serial", cfg.serial, "serial", "disable the parallel verification");

    CLI::App* calib = app.add_subcommand("calibrate", "fit delta, Omega form, w* and write calibration.json");
    calib->add_option("--config", cfg.config, "JSON run configuration");
    opt(calib, "--out,-o", cfg.out, "out", "output path (default calibration.json)");

    try {
        const std::string cfg_path = find_config_arg(argc, argv);
        if (!cfg_path.empty()) load_config(cfg_path, cfg);
        app.parse(argc, argv);
        for (const auto& [o, key] : tracked)
            if (o->count() > 0) cfg.given.insert(key);

        if (energy->parsed()) return cmd_energy(cfg);
        if (table->parsed()) return cmd_table(cfg);
        if (thermo->parsed()) return cmd_thermo(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        if (calib->parsed()) return cmd_calibrate(cfg);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UnknownMoleculeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CalibrationMissingError& e) {
        std::cerr << "error: calibration missing: " << e.what() << "\n";
        return 2;
    } catch (const UnknownConventionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DatabaseParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
