#pragma once

#include <string>
#include <vector>

#include "iskp/calibration.hpp"
#include "iskp/thermo.hpp"

namespace iskp {

struct EnergyRow {
    std::string molecule;
    int cbar = 0;
    FieldConfig field;
    EnergyLevel level;
};

// Text: n, m, Omega and E with 6 fractional digits. CSV: shortest round-trip numbers.
std::string energy_text(const std::vector<EnergyRow>& rows);
std::string energy_csv(const std::vector<EnergyRow>& rows);

struct TableOptions {
    std::string convention = "flux-quantum"; // field convention of the B=2,Phi=2 column
    bool diff = false;                       // add fixture and difference columns
};

struct TableOutput {
    std::string csv;
    std::vector<std::string> column_labels;
    std::vector<double> max_abs_diff; // per model column, filled when a fixture exists
    std::vector<std::string> notes;
};

// Tables 2..10: rows (m, n), one column per field setting.
TableOutput spectrum_table_output(int id, const Calibration& cal, const MoleculeDatabase& db, const UnitSystem& u,
                                  const TableOptions& opt);

// Table 11: E_{2j+1} - E_0 of the Kratzer limit, reduced units, De = 400, re = 4.
TableOutput table11_output(const TableOptions& opt);

// Table 12: exploratory; H2 Kratzer-limit excitation energies next to the published columns.
TableOutput table12_output(const MoleculeDatabase& db, const UnitSystem& u, const TableOptions& opt);

TableOutput table_output(int id, const Calibration& cal, const MoleculeDatabase& db, const UnitSystem& u,
                         const TableOptions& opt);

struct ThermoBlock {
    std::string molecule;
    int cbar = 0;
    SweepVariable variable = SweepVariable::beta;
    std::vector<SweepRow> rows;
};

// Columns: <variable>, molecule, cbar, Z, F, U, S, C, M, chi, warning. Failed points leave empty cells.
std::string thermo_csv(const std::vector<ThermoBlock>& blocks);

} // namespace iskp
