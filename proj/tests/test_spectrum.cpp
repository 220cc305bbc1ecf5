#include <doctest.h>

#include <cmath>
#include <random>

#include "iskp/calibration.hpp"
#include "iskp/potential.hpp"
#include "iskp/spectrum.hpp"

using namespace iskp;

namespace {
const MoleculeDatabase& db() { return MoleculeDatabase::builtin(); }
Molecule mol(const char* n) { return lookup_molecule(n, db()); }
} // namespace

TEST_CASE("field mapping") {
    const PotentialParams p = potential_from_molecule(mol("H2"), -1, 0.0);
    const FieldCalibration cal = default_calibration().field;
    FieldConfig f = field_from_raw(0, 0, p, "flux-quantum", cal);
    CHECK(f.w == 0.0);
    CHECK(f.xi == 0.0);
    f = field_from_raw(0, 2, p, "flux-quantum", cal);
    CHECK(f.w == 0.0);
    CHECK(f.xi == 2.0);
    CHECK(f.ab_coupling == -2.0);
    CHECK_THROWS_AS(field_from_raw(2, 0, p, "flux-quantum", FieldCalibration{}), CalibrationMissingError);
    CHECK_THROWS_AS(field_from_raw(0, 0, p, "gauss", cal), UnknownConventionError);

    const Calibration& c = default_calibration();
    const PotentialParams pc = potential_from_molecule(mol("H2"), -1, resolve_delta(c.convention, mol("H2")));
    CHECK(field_from_raw(2, 0, pc, "flux-quantum", cal).w == doctest::Approx(c.w_star).epsilon(1e-12));
}

TEST_CASE("dimensionless parameters") {
    const Molecule h2 = mol("H2");
    const SpectrumContext ctx = make_context(h2, UnitSystem{}, -1, physical_convention());
    const DimensionlessParams d = ctx.params(0);
    CHECK(d.d1 == 0.0);
    CHECK(d.d2 == 0.0);
    CHECK(d.gamma == -0.25);
    const double k = two_mu_over_hbar2(h2, UnitSystem{});
    const StrengthConstants s = derive_strengths(ctx.pot);
    CHECK(d.d4 == doctest::Approx(k * s.P4).epsilon(1e-14));
    CHECK(d.d3 == doctest::Approx(k * s.P3 / h2.alpha).epsilon(1e-14));
}

TEST_CASE("Omega: bare case and the completed square") {
    DimensionlessParams d;
    CHECK(omega(d, 0, FieldConfig{}) == 0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3), pos(0, 50);
    for (int i = 0; i < 1000; ++i) {
        DimensionlessParams e;
        FieldConfig f;
        f.w = u(rng);
        f.xi = u(rng);
        const int m = static_cast<int>(std::lround(u(rng)));
        e.d2 = pos(rng);
        e.d4 = pos(rng);
        e.z1 = 2 * m * f.w;
        e.z2 = f.w * f.w;
        e.z3 = f.ab_coupling * f.xi * f.w;
        const double a = omega(e, m, f), b = omega_completed_square(e, m, f);
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
    }
}

TEST_CASE("calibrated zero-field values") {
    const SpectrumConvention conv = default_calibration().convention;
    CHECK(std::fabs(make_context(mol("H2"), UnitSystem{}, -1, conv).level(0, 0).E + 0.013053) <= 1e-4);
    CHECK(std::fabs(make_context(mol("H2"), UnitSystem{}, 0, conv).level(0, 0).E + 2.600980) <= 1e-4);
}

TEST_CASE("zero-field pseudo-degeneracy") {
    for (const auto& conv : {physical_convention(), default_calibration().convention}) {
        for (const auto& m : db().molecules()) {
            FieldConfig f2;
            f2.xi = 2.0;
            const SpectrumContext a = make_context(m, UnitSystem{}, -1, conv, f2);
            const SpectrumContext b = make_context(m, UnitSystem{}, -1, conv);
            for (int n = 0; n <= 3; ++n) {
                const double ea = a.level(n, -1).E, eb = b.level(n, 1).E;
                CHECK(std::fabs(ea - eb) <= 1e-12 * std::fabs(eb));
            }
        }
    }
    // derived form depends on (m+xi)^2 only
    FieldConfig f;
    f.xi = 0.5;
    const SpectrumContext a = make_context(mol("LiH"), UnitSystem{}, 1, physical_convention(), f);
    f.xi = -0.5;
    const SpectrumContext b = make_context(mol("LiH"), UnitSystem{}, 1, physical_convention(), f);
    CHECK(a.level(2, 0).E == doctest::Approx(b.level(2, 1).E).epsilon(1e-12));
}

TEST_CASE("n_max arithmetic and scan") {
    QRPhi q;
    q.phi = 1.0;
    q.R = 0.25;
    CHECK(n_max(q, 0.5).n == 0);
    q.R = 9.0;
    CHECK(n_max(q, 0.5).n == 2);
    CHECK(n_max(q, 0.5).bound);

    const SpectrumContext ctx = make_context(mol("H2"), UnitSystem{}, -1, physical_convention());
    const DimensionlessParams d = ctx.params(0);
    const NMax nm = n_max(qr_phi(d), omega(d, 0, ctx.field));
    REQUIRE(nm.bound);
    CHECK(nm.n == 3);
    // E(n) decreases up to n_max and stops decreasing after it
    for (int n = 1; n <= nm.n; ++n) CHECK(ctx.level(n, 0).E > ctx.level(n - 1, 0).E);
    CHECK(ctx.level(nm.n + 1, 0).beyond_nmax);
    CHECK_FALSE(ctx.level(nm.n + 1, 0).normalizable);
}

TEST_CASE("physical-regime golden levels") {
    const SpectrumContext ctx = make_context(mol("H2"), UnitSystem{}, -1, physical_convention());
    const double ref[] = {-0.2911788592, -0.1584043353, -0.0694300879, -0.0193108060};
    for (int n = 0; n < 4; ++n) CHECK(ctx.level(n, 0).E == doctest::Approx(ref[n]).epsilon(1e-9));
}

TEST_CASE("energy through eps matches the direct form") {
    for (const auto& m : db().molecules())
        for (int c : {-1, 0, 1}) {
            const SpectrumContext ctx = make_context(m, UnitSystem{}, c, physical_convention());
            const DimensionlessParams d = ctx.params(1);
            for (int n = 0; n <= 3; ++n) {
                const EnergyLevel lv = ctx.level(n, 1);
                CHECK(energy_via_epsilon(d, lv.omega, n) == doctest::Approx(lv.E).epsilon(1e-12));
            }
        }
}

TEST_CASE("screened Kratzer is the cbar = -1, delta = 0 member") {
    const Molecule h2 = mol("H2");
    const PotentialParams p = potential_from_molecule(h2, -1, 0.0);
    CHECK(reduce_special_case(p) == SpecialCase::ScreenedKratzer);
    const SpectrumContext ctx = make_context(h2, UnitSystem{}, -1, physical_convention());
    for (int n = 0; n < 4; ++n) CHECK(energy(h2, UnitSystem{}, p, FieldConfig{}, n, 0).E == ctx.level(n, 0).E);
}

TEST_CASE("Kratzer limit") {
    const FieldConfig f;
    CHECK(kratzer_limit_energy(400, 4, 1, 0, 0, f).E < 0);
    const double e0 = kratzer_limit_energy(400, 4, 1, 0, 0, f).E;
    CHECK(kratzer_limit_energy(400, 4, 1, 1, 0, f).E - e0 == doctest::Approx(9.63436).epsilon(1e-3));
    CHECK(std::fabs(kratzer_limit_energy(1e-14, 4, 1, 0, 0, f).E) < 1e-10);
    FieldConfig w;
    w.w = 0.1;
    CHECK_THROWS(kratzer_limit_energy(400, 4, 1, 0, 0, w));
}

TEST_CASE("wavefunction nodes and boundary behaviour") {
    const Molecule h2 = mol("H2");
    const SpectrumContext ctx = make_context(h2, UnitSystem{}, -1, physical_convention());
    for (int n = 0; n <= 3; ++n) {
        const RadialWavefunction wf = wavefunction(h2, UnitSystem{}, ctx.pot, ctx.field, n, 0);
        CHECK(wf.hyp_b == doctest::Approx(-n).epsilon(1e-12));
        std::vector<double> r;
        for (int i = 1; i <= 20000; ++i) r.push_back(i * 1e-3);
        const auto v = sample(wf, r);
        int changes = 0;
        for (size_t i = 1; i < v.size(); ++i)
            if ((v[i] > 0) != (v[i - 1] > 0) && v[i] != 0 && v[i - 1] != 0) ++changes;
        CHECK(changes == n);
        const auto ends = sample(wf, {1e-9, 200.0});
        double peak = 0;
        for (double x : v) peak = std::max(peak, std::fabs(x));
        CHECK(std::fabs(ends[0]) < 1e-6 * peak);
        CHECK(std::fabs(ends[1]) < 1e-6 * peak);
    }
    // not normalizable beyond n_max
    CHECK_THROWS(wavefunction(h2, UnitSystem{}, ctx.pot, ctx.field, 5, 0));
}

TEST_CASE("degenerate screening is rejected") {
    const Molecule h2 = mol("H2");
    PotentialParams p = potential_from_molecule(h2, -1, 0.0);
    p.alpha = 0.0;
    CHECK_THROWS_AS(energy(h2, UnitSystem{}, p, FieldConfig{}, 0, 0), DegenerateScreeningError);
}

TEST_CASE("convention labels round trip") {
    for (auto m : {DeltaMode::zero, DeltaMode::equal_alpha, DeltaMode::bond_length, DeltaMode::explicit_value})
        CHECK(parse_delta_mode(to_string(m)) == m);
    for (auto f : {OmegaForm::derived, OmegaForm::tabulated}) CHECK(parse_omega_form(to_string(f)) == f);
    CHECK_THROWS(parse_delta_mode("half"));
}
