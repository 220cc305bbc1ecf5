#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace iskp {

// Published energies (eV) for one molecule and control parameter.
// values[] follows spectrum_columns(): (B, Phi) = (0,0), (2,0), (0,2), (2,2).
struct SpectrumTableRow {
    int m = 0;
    int n = 0;
    std::array<double, 4> values{};
};

struct SpectrumTable {
    int id = 0;
    std::string molecule;
    int cbar = 0;
    std::vector<SpectrumTableRow> rows;
};

struct ColumnSpec {
    double B = 0.0;
    double Phi = 0.0;
    const char* label = "";
};

// Tables 2..10, values verbatim.
const std::vector<SpectrumTable>& spectrum_tables();
const SpectrumTable& spectrum_table(int id);
const std::array<ColumnSpec, 4>& spectrum_columns();

// Kratzer comparison, De = 400, re = 4.
const std::array<double, 6>& table11_present();
const std::array<double, 6>& table11_reference();

struct Table12Row {
    double present = 0.0;
    std::optional<double> bao;
    std::optional<double> walton;
    std::optional<double> hunt;
    std::optional<double> roy;
};

const std::vector<Table12Row>& table12();

} // namespace iskp
