#include "iskp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "iskp/fixtures.hpp"
#include "iskp/format.hpp"

namespace iskp {

std::string energy_text(const std::vector<EnergyRow>& rows) {
    std::ostringstream o;
    o << "molecule cbar  n  m         w        xi       Omega          E(eV)  state\n";
    for (const auto& r : rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-8s %4d %2d %2d %9s %9s %11s %14s  %s\n", r.molecule.c_str(), r.cbar,
                      r.level.n, r.level.m, format_fixed(r.field.w, 4).c_str(), format_fixed(r.field.xi, 4).c_str(),
                      format_fixed(r.level.omega, 6).c_str(), format_fixed(r.level.E, 6).c_str(),
                      r.level.normalizable ? "bound" : "non-normalizable");
        o << buf;
    }
    return o.str();
}

std::string energy_csv(const std::vector<EnergyRow>& rows) {
    std::string out = csv_row({"molecule", "cbar", "n", "m", "w", "xi", "Omega", "E", "lambda", "normalizable"});
    for (const auto& r : rows)
        out += csv_row({r.molecule, std::to_string(r.cbar), std::to_string(r.level.n), std::to_string(r.level.m),
                        format_double(r.field.w), format_double(r.field.xi), format_double(r.level.omega),
                        format_double(r.level.E), format_double(r.level.lambda), r.level.normalizable ? "1" : "0"});
    return out;
}

TableOutput spectrum_table_output(int id, const Calibration& cal, const MoleculeDatabase& db, const UnitSystem& u,
                                  const TableOptions& opt) {
    const SpectrumTable& t = spectrum_table(id);
    const Molecule mol = lookup_molecule(t.molecule, db);
    const SpectrumContext base = make_context(mol, u, t.cbar, cal.convention);
    const auto& cols = spectrum_columns();

    TableOutput out;
    std::vector<FieldConfig> fields;
    for (size_t c = 0; c < cols.size(); ++c) {
        const std::string conv = (cols[c].B != 0.0 && cols[c].Phi != 0.0) ? opt.convention : "flux-quantum";
        fields.push_back(field_from_raw(cols[c].B, cols[c].Phi, base.pot, conv, cal.field));
        out.column_labels.push_back(cols[c].label);
    }
    out.max_abs_diff.assign(cols.size(), 0.0);

    std::vector<std::string> head = {"m", "n"};
    for (const auto& l : out.column_labels) head.push_back(l);
    if (opt.diff)
        for (const auto& l : out.column_labels) {
            head.push_back(std::string("fixture ") + l);
            head.push_back(std::string("diff ") + l);
        }
    out.csv = csv_row(head);
    for (const auto& row : t.rows) {
        std::vector<std::string> f = {std::to_string(row.m), std::to_string(row.n)};
        std::vector<std::string> extra;
        for (size_t c = 0; c < cols.size(); ++c) {
            SpectrumContext ctx = base;
            ctx.field = fields[c];
            const double e = ctx.level(row.n, row.m).E;
            f.push_back(format_double(e));
            const double d = e - row.values[c];
            out.max_abs_diff[c] = std::max(out.max_abs_diff[c], std::fabs(d));
            if (opt.diff) {
                extra.push_back(format_double(row.values[c]));
                extra.push_back(format_double(d));
            }
        }
        f.insert(f.end(), extra.begin(), extra.end());
        out.csv += csv_row(f);
    }
    out.notes.push_back("molecule " + mol.name + ", cbar " + std::to_string(t.cbar) + ", delta " +
                        to_string(cal.convention.delta_mode) + ", Omega " + to_string(cal.convention.omega_form) +
                        ", B=2,Phi=2 convention " + opt.convention);
    return out;
}

TableOutput table11_output(const TableOptions& opt) {
    TableOutput out;
    out.column_labels = {"E(2j+1)-E(0)"};
    out.max_abs_diff.assign(1, 0.0);
    const FieldConfig f;
    const double e0 = kratzer_limit_energy(400.0, 4.0, 1.0, 0, 0, f).E;
    std::vector<std::string> head = {"j", "n", "E(2j+1)-E(0)"};
    if (opt.diff) {
        head.push_back("fixture");
        head.push_back("reference");
        head.push_back("rel diff");
    }
    out.csv = csv_row(head);
    for (int j = 0; j < 6; ++j) {
        const int n = 2 * j + 1;
        const double v = kratzer_limit_energy(400.0, 4.0, 1.0, n, 0, f).E - e0;
        std::vector<std::string> row = {std::to_string(j), std::to_string(n), format_double(v)};
        const double fx = table11_present()[j];
        out.max_abs_diff[0] = std::max(out.max_abs_diff[0], std::fabs(v - fx));
        if (opt.diff) {
            row.push_back(format_double(fx));
            row.push_back(format_double(table11_reference()[j]));
            row.push_back(format_double((v - fx) / fx));
        }
        out.csv += csv_row(row);
    }
    out.notes.push_back("reduced units (hbar = 2mu = 1); positive values are excitation energies E(2j+1) - E(0)");
    return out;
}

TableOutput table12_output(const MoleculeDatabase& db, const UnitSystem& u, const TableOptions& opt) {
    TableOutput out;
    out.column_labels = {"E(n)-E(0)"};
    const Molecule mol = lookup_molecule("H2", db);
    const double k = two_mu_over_hbar2(mol, u);
    const FieldConfig f;
    const double e0 = kratzer_limit_energy(mol.De, mol.re, k, 0, 0, f).E;
    std::vector<std::string> head = {"n", "E(n)-E(0)"};
    if (opt.diff) {
        for (const char* h : {"present", "bao", "walton", "hunt", "roy"}) head.push_back(h);
    }
    out.csv = csv_row(head);
    const auto& t = table12();
    auto opt_str = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (size_t i = 0; i < t.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        const double v = kratzer_limit_energy(mol.De, mol.re, k, n, 0, f).E - e0;
        std::vector<std::string> row = {std::to_string(n), format_double(v)};
        if (opt.diff) {
            row.push_back(format_double(t[i].present));
            row.push_back(opt_str(t[i].bao));
            row.push_back(opt_str(t[i].walton));
            row.push_back(opt_str(t[i].hunt));
            row.push_back(opt_str(t[i].roy));
        }
        out.csv += csv_row(row);
    }
    out.notes.push_back("exploratory: the parameters behind the published column are not stated; no comparison "
                        "is asserted");
    return out;
}

TableOutput table_output(int id, const Calibration& cal, const MoleculeDatabase& db, const UnitSystem& u,
                         const TableOptions& opt) {
    if (id >= 2 && id <= 10) return spectrum_table_output(id, cal, db, u, opt);
    if (id == 11) return table11_output(opt);
    if (id == 12) return table12_output(db, u, opt);
    throw std::out_of_range("table id must be in 2..12");
}

std::string thermo_csv(const std::vector<ThermoBlock>& blocks) {
    const std::string var = blocks.empty() ? "x" : to_string(blocks.front().variable);
    std::string out = csv_row({var, "molecule", "cbar", "Z", "F", "U", "S", "C", "M", "chi", "warning"});
    for (const auto& b : blocks) {
        for (const auto& r : b.rows) {
            std::vector<std::string> f = {format_double(r.x), b.molecule, std::to_string(b.cbar)};
            if (r.point) {
                const auto& p = *r.point;
                for (double v : {p.Z, p.F, p.U, p.S, p.C, p.M, p.chi}) f.push_back(format_double(v));
                f.push_back(p.warning);
            } else {
                for (int i = 0; i < 7; ++i) f.emplace_back();
                f.push_back(r.error);
            }
            out += csv_row(f);
        }
    }
    return out;
}

} // namespace iskp
