#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "iskp/calibration.hpp"
#include "iskp/fixtures.hpp"

using namespace iskp;

TEST_CASE("calibration picks a delta and Omega form against the anchor entries") {
    const Calibration& c = default_calibration();
    CHECK(std::fabs(c.delta_candidates.size()) >= 2);
    double best = 1e300;
    for (const auto& cand : c.delta_candidates) best = std::min(best, std::fabs(cand.residual));
    CHECK(best <= 1e-4);
    const Molecule h2 = lookup_molecule("H2", MoleculeDatabase::builtin());
    const SpectrumContext ctx = make_context(h2, UnitSystem{}, -1, c.convention);
    CHECK(std::fabs(ctx.level(0, 0).E + 0.013053) <= 1e-4);
    CHECK(std::fabs(ctx.level(0, -1).E - 0.016833) <= 1e-4);
    CHECK(std::fabs(c.w_residual) <= 1e-9);
    REQUIRE(c.field.w_scale);
    REQUIRE(c.field.table_coupling);
}

TEST_CASE("calibration JSON round trip") {
    const Calibration& c = default_calibration();
    const Calibration back = calibration_from_json(calibration_to_json(c));
    CHECK(back.convention.delta_mode == c.convention.delta_mode);
    CHECK(back.convention.omega_form == c.convention.omega_form);
    CHECK(back.w_star == c.w_star);
    CHECK(*back.field.w_scale == *c.field.w_scale);
    CHECK(*back.field.table_coupling == *c.field.table_coupling);

    const auto path = std::filesystem::temp_directory_path() / "iskp_calibration_test.json";
    save_calibration(c, path.string());
    const Calibration disk = load_calibration(path.string());
    CHECK(disk.w_star == c.w_star);
    std::filesystem::remove(path);
    CHECK_THROWS(calibration_from_json("{\"convention\": 3}"));
}

TEST_CASE("physical convention") {
    const SpectrumConvention p = physical_convention();
    CHECK(p.delta_mode == DeltaMode::zero);
    CHECK(p.omega_form == OmegaForm::derived);
}

TEST_CASE("fixtures are complete") {
    CHECK(spectrum_tables().size() == 9);
    for (const auto& t : spectrum_tables()) CHECK(t.rows.size() == 12);
    CHECK(spectrum_table(2).rows[0].values[0] == -0.013053);
    CHECK(table11_present()[0] == 9.63436);
    CHECK(table11_present()[5] == 89.26955);
    CHECK_THROWS(spectrum_table(13));
}
