#include <doctest.h>

#include <cmath>
#include <random>

#include "iskp/calibration.hpp"
#include "iskp/thermo.hpp"
#include "iskp/validation.hpp"

using namespace iskp;

namespace {
SpectrumContext physical(const char* name, int cbar, FieldConfig f = {}) {
    return make_context(lookup_molecule(name, MoleculeDatabase::builtin()), UnitSystem{}, cbar, physical_convention(),
                        f);
}
} // namespace

TEST_CASE("recast reproduces the closed form") {
    for (const char* name : {"H2", "HCl", "LiH"})
        for (int c : {-1, 0, 1}) {
            const SpectrumContext ctx = physical(name, c);
            const SpectrumRecast r = recast(ctx, 0);
            CHECK(r.phi > 0);
            for (int n = 0; n <= r.n_max; ++n)
                CHECK(std::fabs(recast_energy(r, n) - ctx.level(n, 0).E) <= 1e-12 * std::max(1.0, std::fabs(r.Q)));
        }
}

TEST_CASE("recast constants in closed form") {
    const Molecule h2 = lookup_molecule("H2", MoleculeDatabase::builtin());
    const double k = two_mu_over_hbar2(h2, UnitSystem{});
    for (int m : {0, 1, 2}) {
        const SpectrumRecast r = recast(physical("H2", -1), m);
        CHECK(r.Q == doctest::Approx(h2.alpha * h2.alpha / k * (m * m - 0.25)).epsilon(1e-13));
    }
    SpectrumConvention eq;
    eq.delta_mode = DeltaMode::equal_alpha;
    const SpectrumRecast r = recast(make_context(h2, UnitSystem{}, -1, eq), 0);
    const double hc = 1973.269, mc2 = 0.50391 * 931.5e6;
    CHECK(r.phi == doctest::Approx(hc * hc * 4 * h2.alpha * h2.alpha / (8 * mc2)).epsilon(1e-13));
}

TEST_CASE("direct partition function limits") {
    const SpectrumRecast r = recast(physical("H2", -1), 0);
    REQUIRE(r.n_max == 3);
    CHECK(partition_direct(r, 1e-12) == doctest::Approx(r.n_max + 1).epsilon(1e-10));
    SpectrumRecast one = r;
    one.n_max = 0;
    for (double b : {0.1, 1.0, 10.0}) CHECK(partition_direct(one, b) == 1.0);
    double prev = 1e300;
    for (double b : default_beta_grid()) {
        const double z = partition_direct(r, b);
        CHECK(z > 0);
        CHECK(z <= prev);
        prev = z;
    }
}

TEST_CASE("direct sum against the 50-digit re-summation") {
    for (const char* name : {"H2", "HCl", "LiH"})
        for (int c : {-1, 0, 1}) {
            const SpectrumRecast r = recast(physical(name, c), 0);
            for (double b : {0.5, 1.0, 3.0}) {
                const double hp = partition_high_precision(r, b);
                CHECK(partition_direct(r, b) == doctest::Approx(hp).epsilon(1e-14));
            }
        }
    const SpectrumRecast h2 = recast(physical("H2", -1), 0);
    REQUIRE(h2.n_max == 3);
    const std::string digits = partition_high_precision_string(h2, 1.0);
    CHECK(digits.size() > 30);
    CHECK(std::stod(digits) == doctest::Approx(partition_direct(h2, 1.0)).epsilon(1e-15));
}

TEST_CASE("Euler-Maclaurin against the direct sum") {
    int compared = 0;
    for (const char* name : {"H2", "HCl", "LiH"})
        for (int c : {-1, 0, 1}) {
            const SpectrumRecast r = recast(physical(name, c), 0);
            for (double b : log_grid(0.5, 5.0, 30)) {
                const EmResult em = partition_euler_maclaurin(r, b, EmEnds::both_ends);
                const double zd = partition_direct(r, b);
                if (r.n_max == 0) {
                    CHECK(em.fallback);
                    CHECK(!em.warning.empty());
                    CHECK(em.Z == zd);
                    continue;
                }
                ++compared;
                CAPTURE(name);
                CAPTURE(c);
                CAPTURE(b);
                CHECK(std::fabs(em.Z - zd) <= 0.02 * zd);
                CHECK(std::fabs(em.imag) <= 1e-10 * std::fabs(em.Z));
            }
        }
    CHECK(compared > 0);
}

TEST_CASE("Euler-Maclaurin single-level fallback") {
    SpectrumRecast r = recast(physical("H2", -1), 0);
    r.n_max = 0;
    const EmResult em = partition_euler_maclaurin(r, 1.0);
    CHECK(em.fallback);
    CHECK(em.Z == 1.0);
    CHECK(!em.warning.empty());
}

TEST_CASE("single-level system has vanishing observables") {
    // the calibrated convention leaves H2, cbar = -1 with n_max = 0
    const Molecule h2 = lookup_molecule("H2", MoleculeDatabase::builtin());
    const SpectrumContext ctx = make_context(h2, UnitSystem{}, -1, default_calibration().convention);
    REQUIRE(recast(ctx, 0).n_max == 0);
    for (double b : {0.3, 1.0, 4.0}) {
        const ThermoPoint p = observables(ctx, 0, b);
        CHECK(p.Z == 1.0);
        CHECK(p.F == 0.0);
        CHECK(p.U == 0.0);
        CHECK(p.S == 0.0);
        CHECK(p.C == 0.0);
    }
}

TEST_CASE("thermodynamic identities") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ub(0.1, 5.0), uw(-0.3, 0.3), ux(0.0, 2.0);
    for (int i = 0; i < 60; ++i) {
        const char* names[] = {"H2", "HCl", "LiH"};
        FieldConfig f;
        f.w = uw(rng);
        f.xi = ux(rng);
        const SpectrumContext ctx = physical(names[i % 3], (i / 3) % 3 - 1, f);
        const double b = ub(rng);
        const ThermoPoint p = observables(ctx, 0, b);
        CAPTURE(i);
        CHECK(p.derivatives_converged);
        CHECK(std::fabs(p.S - b * (p.U - p.F)) <= 1e-8 * std::max(std::fabs(p.S), 1e-300) + 1e-15);
        CHECK(p.C >= 0.0);
        CHECK(p.C_fluct >= 0.0);
        CHECK(std::fabs(p.C - p.C_fluct) <= 1e-8 * std::max(p.C_fluct, 1e-6));
    }
}

TEST_CASE("observables from the EM path track the direct path") {
    ThermoSettings em;
    em.method = PartitionMethod::euler_maclaurin;
    const SpectrumContext ctx = physical("H2", -1);
    for (double b : {0.5, 1.0, 2.0}) {
        const ThermoPoint d = observables(ctx, 0, b);
        const ThermoPoint e = observables(ctx, 0, b, em);
        CHECK(e.Z == doctest::Approx(d.Z).epsilon(0.02));
    }
}

TEST_CASE("sweeps") {
    const SpectrumContext ctx = physical("H2", -1);
    SweepSpec spec;
    spec.grid = default_beta_grid();
    const auto a = sweep(ctx, spec);
    const auto b = sweep_parallel(ctx, spec);
    REQUIRE(a.size() == spec.grid.size());
    REQUIRE(b.size() == a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].point);
        REQUIRE(b[i].point);
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].point->Z == b[i].point->Z);
        CHECK(a[i].point->C == b[i].point->C);
        CHECK(a[i].point->chi == b[i].point->chi);
    }
    spec.grid.clear();
    CHECK(sweep(ctx, spec).empty());
    CHECK(sweep_parallel(ctx, spec).empty());
    spec.grid = {1.0, 0.5};
    CHECK_THROWS(sweep(ctx, spec));

    SweepSpec phi;
    phi.variable = SweepVariable::Phi;
    phi.grid = linear_grid(0, 2, 5);
    const auto rows = sweep(ctx, phi);
    for (const auto& r : rows) CHECK(r.point);

    SweepSpec bsw;
    bsw.variable = SweepVariable::B;
    bsw.grid = linear_grid(0, 2, 3);
    const auto missing = sweep(ctx, bsw);
    CHECK(missing[0].point);
    CHECK_FALSE(missing[1].point);
    CHECK(!missing[1].error.empty());
}

TEST_CASE("grids") {
    const auto g = default_beta_grid();
    CHECK(g.size() == 30);
    CHECK(g.front() == 0.1);
    CHECK(g.back() == 5.0);
    CHECK(log_grid(1, 2, 0).empty());
    CHECK(linear_grid(0, 1, 3)[1] == 0.5);
    CHECK(parse_sweep_variable("Phi") == SweepVariable::Phi);
    CHECK_THROWS(parse_sweep_variable("T"));
}
