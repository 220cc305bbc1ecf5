#include <doctest.h>

#include <cmath>
#include <sstream>

#include "iskp/calibration.hpp"
#include "iskp/format.hpp"
#include "iskp/report.hpp"

using namespace iskp;

namespace {
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) rows.push_back(csv_split(line));
    return rows;
}
} // namespace

TEST_CASE("number formatting") {
    for (double x : {0.1, -0.013053, 1e-300, 123456.789, 0.0, -2.5e17})
        CHECK(parse_double(format_double(x)) == x);
    CHECK(format_fixed(-0.0000001, 6) == "0.000000");
    CHECK(format_fixed(-0.0130534, 6) == "-0.013053");
    CHECK_THROWS(parse_double("1.2x"));
}

TEST_CASE("CSV quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    const std::vector<std::string> f = {"x", "a,b", "q\"q", ""};
    std::string row = csv_row(f);
    row.pop_back(); // line ending
    if (!row.empty() && row.back() == '\r') row.pop_back();
    CHECK(csv_split(row) == f);
}

TEST_CASE("energy CSV round-trips bit for bit") {
    const Molecule h2 = lookup_molecule("H2", MoleculeDatabase::builtin());
    std::vector<EnergyRow> rows;
    FieldConfig f;
    f.xi = 2;
    const SpectrumContext ctx = make_context(h2, UnitSystem{}, -1, default_calibration().convention, f);
    for (int m : {-1, 0, 1})
        for (int n = 0; n < 4; ++n) rows.push_back({"H2", -1, ctx.field, ctx.level(n, m)});
    const auto csv = parse_csv(energy_csv(rows));
    REQUIRE(csv.size() == rows.size() + 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& c = csv[i + 1];
        FieldConfig g;
        g.w = parse_double(c[4]);
        g.xi = parse_double(c[5]);
        SpectrumContext again = make_context(h2, UnitSystem{}, std::stoi(c[1]), default_calibration().convention, g);
        const EnergyLevel lv = again.level(std::stoi(c[2]), std::stoi(c[3]));
        CHECK(parse_double(c[7]) == lv.E);
        CHECK(parse_double(c[6]) == lv.omega);
    }
    const std::string text = energy_text(rows);
    CHECK(text.find(format_fixed(rows[7].level.E, 6)) != std::string::npos);
    CHECK(std::fabs(rows[8].level.E - 0.248222) <= 1e-4); // m = 1, n = 0 of the Phi = 2 column
    CHECK(std::fabs(rows[11].level.E + 0.092034) <= 1e-4);
}

TEST_CASE("table output") {
    const Calibration& cal = default_calibration();
    TableOptions opt;
    opt.diff = true;
    const TableOutput t2 = table_output(2, cal, MoleculeDatabase::builtin(), UnitSystem{}, opt);
    const auto rows = parse_csv(t2.csv);
    REQUIRE(rows.size() == 13);
    CHECK(rows[0].size() == 2 + 4 + 8);
    CHECK(t2.max_abs_diff[0] <= 1e-4);
    CHECK(t2.max_abs_diff[2] <= 1e-4);
    CHECK(table_output(2, cal, MoleculeDatabase::builtin(), UnitSystem{}, opt).csv == t2.csv);

    const TableOutput t11 = table11_output(opt);
    CHECK(parse_csv(t11.csv).size() == 7);
    const TableOutput t12 = table12_output(MoleculeDatabase::builtin(), UnitSystem{}, opt);
    CHECK(parse_csv(t12.csv).size() > 1);
    CHECK_THROWS(table_output(1, cal, MoleculeDatabase::builtin(), UnitSystem{}, opt));
}

TEST_CASE("thermo CSV layout") {
    CHECK(parse_csv(thermo_csv({})).size() == 1);
    ThermoBlock b;
    b.molecule = "H2";
    b.cbar = -1;
    SweepRow bad;
    bad.x = 0.5;
    bad.error = "calibration missing";
    b.rows.push_back(bad);
    const auto rows = parse_csv(thermo_csv({b}));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "beta");
    CHECK(rows[0].size() == 11);
    CHECK(rows[1][3].empty());
    CHECK(rows[1][10] == "calibration missing");
}
