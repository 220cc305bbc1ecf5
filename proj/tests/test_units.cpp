#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "iskp/units.hpp"

using namespace iskp;

TEST_CASE("Table 1 constants are returned exactly") {
    const auto& db = MoleculeDatabase::builtin();
    const Molecule h2 = lookup_molecule("H2", db);
    CHECK(h2.De == 4.7446);
    CHECK(h2.re == 0.7416);
    CHECK(h2.alpha == 1.9426);
    CHECK(h2.mu == 0.50391);
    const Molecule hcl = lookup_molecule("HCl", db);
    CHECK(hcl.De == 4.619031);
    CHECK(hcl.re == 1.2746);
    CHECK(hcl.alpha == 1.8677);
    CHECK(hcl.mu == 0.980105);
    const Molecule lih = lookup_molecule("LiH", db);
    CHECK(lih.De == 2.515267);
    CHECK(lih.re == 1.5956);
    CHECK(lih.alpha == 1.128);
    CHECK(lih.mu == 0.880122);
}

TEST_CASE("lookup is case-insensitive and unknown names list the keys") {
    const auto& db = MoleculeDatabase::builtin();
    CHECK(lookup_molecule("hcl", db).name == "HCl");
    try {
        lookup_molecule("N2", db);
        FAIL("expected UnknownMoleculeError");
    } catch (const UnknownMoleculeError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("H2") != std::string::npos);
        CHECK(msg.find("HCl") != std::string::npos);
        CHECK(msg.find("LiH") != std::string::npos);
        CHECK(e.available().size() == 3);
    }
}

TEST_CASE("2 mu / hbar^2") {
    const Molecule h2 = lookup_molecule("H2", MoleculeDatabase::builtin());
    const double k = two_mu_over_hbar2(h2, UnitSystem{});
    CHECK(k == doctest::Approx(2 * 0.50391 * 931.5e6 / (1973.269 * 1973.269)).epsilon(1e-15));
    CHECK(k == doctest::Approx(241.10).epsilon(1e-4));
    Molecule twice = h2;
    twice.mu *= 2;
    CHECK(two_mu_over_hbar2(twice, UnitSystem{}) == 2 * k);
    Molecule zero = h2;
    zero.mu = 0;
    CHECK(two_mu_over_hbar2(zero, UnitSystem{}) == 0.0);
    CHECK(two_mu_over_hbar2(h2, UnitSystem::reduced()) == 1.0);
}

TEST_CASE("database round trip is bitwise") {
    const auto& db = MoleculeDatabase::builtin();
    const MoleculeDatabase back = MoleculeDatabase::parse(db.serialize());
    for (const auto& m : db.molecules()) {
        const Molecule r = lookup_molecule(m.name, back);
        CHECK(r.De == m.De);
        CHECK(r.re == m.re);
        CHECK(r.alpha == m.alpha);
        CHECK(r.mu == m.mu);
    }
}

TEST_CASE("shipped data file matches the built-in table") {
    const MoleculeDatabase file = MoleculeDatabase::load(std::string(ISKP_SOURCE_DIR) + "/data/molecules.dat");
    const auto& db = MoleculeDatabase::builtin();
    REQUIRE(file.molecules().size() == db.molecules().size());
    for (const auto& m : db.molecules()) {
        const Molecule r = lookup_molecule(m.name, file);
        CHECK(r.De == m.De);
        CHECK(r.re == m.re);
        CHECK(r.alpha == m.alpha);
        CHECK(r.mu == m.mu);
    }
}

TEST_CASE("database grammar errors carry the line") {
    try {
        MoleculeDatabase::parse("# header\nH2 4.7 0.74 1.9 0.5\nbroken 1 2\n");
        FAIL("expected DatabaseParseError");
    } catch (const DatabaseParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(MoleculeDatabase::parse("A 1 1 1 1\nA 2 2 2 2\n"), DatabaseParseError);
    CHECK_THROWS(MoleculeDatabase::parse("X -1 1 1 1\n"));
}

TEST_CASE("new molecules can be added") {
    MoleculeDatabase db = MoleculeDatabase::builtin();
    db.add({"CO", 11.2256, 1.1283, 2.2994, 6.8606719});
    CHECK(lookup_molecule("CO", db).re == 1.1283);
    CHECK_THROWS(db.add({"CO", 1, 1, 1, 1}));
}

TEST_CASE("lookup is fast") {
    const auto& db = MoleculeDatabase::builtin();
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 100; ++i) (void)lookup_molecule("LiH", db);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    CHECK(ms / 100 < 1.0);
}
